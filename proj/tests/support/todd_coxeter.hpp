#pragma once

#include <deque>
#include <stdexcept>
#include <vector>

// Coset enumeration over the trivial subgroup for a Coxeter presentation:
// generators are involutions, relators (s_i s_j)^{m_ij}.  Classic HLT with
// coincidence handling; used as an order oracle independent of any closed
// formula.  Cosets are 1-based, 0 means undefined.

namespace support {

class ToddCoxeter {
 public:
  // labels[i][j] = m_ij (0 = infinite, relator skipped), labels[i][i] ignored
  explicit ToddCoxeter(const std::vector<std::vector<int>>& labels,
                       int max_cosets = 200000)
      : ngens_(static_cast<int>(labels.size())), cap_(max_cosets) {
    for (int i = 0; i < ngens_; ++i)
      for (int j = i + 1; j < ngens_; ++j) {
        int m = labels[i][j];
        if (m == 0) continue;
        std::vector<int> w;
        for (int k = 0; k < m; ++k) {
          w.push_back(i);
          w.push_back(j);
        }
        relators_.push_back(std::move(w));
      }
  }

  long long order() {
    tab_.assign(2, std::vector<int>(ngens_, 0));  // row 0 unused
    rep_.assign(2, 0);
    rep_[1] = 1;
    live_ = 1;
    // Passes repeat until the table is closed and every relator traces back
    // to its base coset; coincidences can orphan work from earlier rows.
    for (int round = 0; round < 64; ++round) {
      for (int c = 1; c < static_cast<int>(tab_.size()); ++c) {
        if (find(c) != c) continue;
        for (int g = 0; g < ngens_; ++g)
          if (image(c, g) == 0) deduce(c, g, fresh());
        process_coincidences();
        if (find(c) != c) continue;
        for (const auto& w : relators_) {
          scan_and_fill(c, w);
          process_coincidences();
          if (find(c) != c) break;
        }
      }
      if (closed_and_consistent()) return live_;
    }
    throw std::runtime_error("coset enumeration did not stabilize");
  }

 private:
  int fresh() {
    if (static_cast<int>(tab_.size()) > cap_)
      throw std::runtime_error("coset enumeration exceeded its budget");
    tab_.emplace_back(ngens_, 0);
    rep_.push_back(static_cast<int>(tab_.size()) - 1);
    ++live_;
    return static_cast<int>(tab_.size()) - 1;
  }

  int find(int c) {
    while (rep_[c] != c) c = rep_[c] = rep_[rep_[c]];
    return c;
  }

  int image(int c, int g) {
    int t = tab_[c][g];
    return t == 0 ? 0 : find(t);
  }

  // generators are involutions: tables stay symmetric
  void deduce(int c, int g, int d) {
    tab_[c][g] = d;
    tab_[d][g] = c;
  }

  void note_coincidence(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) queue_.emplace_back(a, b);
  }

  void process_coincidences() {
    while (!queue_.empty()) {
      auto [a, b] = queue_.front();
      queue_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      rep_[b] = a;  // b dies
      --live_;
      for (int g = 0; g < ngens_; ++g) {
        int ib = tab_[b][g];
        if (ib == 0) continue;
        ib = find(ib);
        int ia = image(a, g);
        if (ia == 0) {
          deduce(a, g, ib);
          if (tab_[ib][g] != 0) note_coincidence(find(tab_[ib][g]), a);
          tab_[ib][g] = a;
        } else if (ia != ib) {
          queue_.emplace_back(ia, ib);
        }
      }
    }
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    int f = c, fi = 0;
    int b = c, bi = static_cast<int>(w.size());
    for (;;) {
      while (fi < bi && image(f, w[fi]) != 0) f = image(f, w[fi++]);
      while (bi > fi && image(b, w[bi - 1]) != 0) b = image(b, w[--bi]);
      if (fi == bi) {
        if (f != b) note_coincidence(f, b);
        return;
      }
      if (fi == bi - 1) {
        deduce(f, w[fi], b);
        return;
      }
      deduce(f, w[fi], fresh());
    }
  }

  bool closed_and_consistent() {
    bool ok = true;
    for (int c = 1; c < static_cast<int>(tab_.size()); ++c) {
      if (find(c) != c) continue;
      for (int g = 0; g < ngens_; ++g)
        if (image(c, g) == 0) return false;
      for (const auto& w : relators_) {
        int x = c;
        for (int g : w) x = image(x, g);
        if (x != c) {
          note_coincidence(x, c);
          ok = false;
        }
      }
    }
    process_coincidences();
    return ok;
  }

  int ngens_, cap_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> tab_;
  std::vector<int> rep_;
  std::deque<std::pair<int, int>> queue_;
  long long live_ = 0;
};

// Convenience: order of the Coxeter group with the given label matrix.
inline long long coxeter_order(const std::vector<std::vector<int>>& labels,
                               int max_cosets = 200000) {
  return ToddCoxeter(labels, max_cosets).order();
}

}  // namespace support
