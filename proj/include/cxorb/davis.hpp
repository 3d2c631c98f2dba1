#pragma once

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cxorb/coxeter.hpp"
#include "cxorb/nerve.hpp"

// Desk-scale Davis complex machinery.  Group elements are handled through
// Tits' solution to the word problem: a word is reduced exactly when no braid
// move exposes a repeated adjacent letter, and two reduced words represent
// the same element exactly when braid moves connect them.  Everything else
// (word-metric balls, the Coxeter-cell poset, vertex links) is bookkeeping on
// top of the resulting normal forms.
//
// Words are sequences of generator indices in the vertex order of the labeled
// complex; label(s,t) == 0 encodes m_st = infinity (no relation).

namespace cxorb {

struct GroupElement {
  std::vector<int> word;  // ShortLex-least reduced word
  bool operator==(const GroupElement&) const = default;
  bool operator<(const GroupElement& o) const {
    return word.size() != o.word.size() ? word.size() < o.word.size()
                                        : word < o.word;
  }
};

// Shared across calls to amortize the braid search; single-threaded use here,
// concurrent use would need the map to behave atomically.
using NormalFormCache = std::map<std::vector<int>, std::vector<int>>;

namespace detail {

// Words one braid move away: an alternating (s,t)-run of length m_st turns
// into the reversed alternation.
inline std::vector<std::vector<int>> braid_neighbors(const LabeledComplex& c,
                                                     const std::vector<int>& u) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(u.size());
  for (int p = 0; p + 1 < n; ++p) {
    const int s = u[p], t = u[p + 1];
    if (s == t) continue;
    const int m = c.label(s, t);
    if (m == 0 || p + m > n) continue;
    bool alternating = true;
    for (int k = 0; k < m && alternating; ++k)
      if (u[p + k] != (k % 2 == 0 ? s : t)) alternating = false;
    if (!alternating) continue;
    auto w = u;
    for (int k = 0; k < m; ++k) w[p + k] = (k % 2 == 0 ? t : s);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

// ShortLex normal form by exhaustive braid search.  Invariant of the outer
// loop: `work` represents the input element.  Each round explores the braid
// class of `work`; the first repeated adjacent letter found anywhere in the
// class cancels (length drops by two) and the search restarts.  When a round
// finishes without a cancellation the class is complete and its minimum is
// the normal form.
inline std::vector<int> normal_form(const LabeledComplex& c,
                                    const std::vector<int>& word,
                                    NormalFormCache* cache = nullptr) {
  for (int x : word)
    if (x < 0 || x >= c.vertex_count())
      throw std::runtime_error("letter out of range: " + std::to_string(x));
  if (cache) {
    auto it = cache->find(word);
    if (it != cache->end()) return it->second;
  }

  std::vector<int> work = word;
  for (;;) {
    std::set<std::vector<int>> seen{work};
    std::vector<std::vector<int>> stack{work};
    bool cancelled = false;
    while (!stack.empty()) {
      auto u = std::move(stack.back());
      stack.pop_back();
      for (size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i] == u[i + 1]) {
          u.erase(u.begin() + i, u.begin() + i + 2);
          work = std::move(u);
          cancelled = true;
          break;
        }
      if (cancelled) break;
      for (auto& v : detail::braid_neighbors(c, u))
        if (seen.insert(v).second) stack.push_back(v);
      if (seen.size() > (1u << 20))
        throw std::runtime_error("braid class search exceeded its budget");
    }
    if (cancelled) continue;
    auto best = *seen.begin();  // same length throughout: lex min suffices
    if (cache) cache->emplace(word, best);
    return best;
  }
}

inline bool word_equal(const LabeledComplex& c, const std::vector<int>& u,
                       const std::vector<int>& v) {
  NormalFormCache cache;
  return normal_form(c, u, &cache) == normal_form(c, v, &cache);
}

struct CoxeterCell {
  int rep = -1;             // element position of the ShortLex-least member
  std::vector<int> subset;  // spherical generator subset, sorted

  auto operator<=>(const CoxeterCell&) const = default;
};

struct CoxeterBall {
  int radius = 0;
  LabeledComplex system;
  std::vector<GroupElement> elements;        // sorted by (length, word)
  std::vector<std::vector<int>> adjacency;   // [element][generator], -1 = out
  std::vector<CoxeterCell> cells;            // cosets wW_T, minimal rep in ball
  std::map<std::vector<int>, int> index;     // normal form -> element position

  int element_id(const std::vector<int>& nf) const {
    auto it = index.find(nf);
    return it == index.end() ? -1 : it->second;
  }
};

// The configured radius cap: CXORB_BALL_CAP when set to a positive integer,
// 4 otherwise.  Balls grow exponentially; the cap keeps accidents desk-sized.
inline int ball_radius_cap() {
  if (const char* env = std::getenv("CXORB_BALL_CAP")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 4;
}

inline constexpr long long kBallElementBudget = 1000000;

// Breadth-first ball of the Cayley graph, then the Coxeter-cell poset on
// top: a coset wW_T is recorded through its ShortLex-least representative,
// which is the unique member with no descent into T.
inline CoxeterBall build_ball(const LabeledComplex& c, int radius,
                              int radius_cap = ball_radius_cap()) {
  if (radius < 0) throw std::runtime_error("negative ball radius");
  if (radius > radius_cap)
    throw std::runtime_error("ball radius " + std::to_string(radius) +
                             " is over the cap " + std::to_string(radius_cap));
  const int ngen = c.vertex_count();
  NormalFormCache cache;

  std::set<std::vector<int>> found{{}};
  std::vector<std::vector<int>> layer{{}};
  for (int len = 0; len < radius && !layer.empty(); ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer)
      for (int s = 0; s < ngen; ++s) {
        auto ws = w;
        ws.push_back(s);
        auto nf = normal_form(c, ws, &cache);
        if (nf.size() != w.size() + 1) continue;  // descent: already known
        if (found.insert(nf).second) {
          next.push_back(std::move(nf));
          if (static_cast<long long>(found.size()) > kBallElementBudget)
            throw std::runtime_error("ball exceeded the element budget");
        }
      }
    layer = std::move(next);
  }

  CoxeterBall b;
  b.radius = radius;
  b.system = c;
  for (const auto& w : found) b.elements.push_back({w});
  std::sort(b.elements.begin(), b.elements.end());
  for (int i = 0; i < static_cast<int>(b.elements.size()); ++i)
    b.index[b.elements[i].word] = i;

  b.adjacency.assign(b.elements.size(), std::vector<int>(ngen, -1));
  for (int i = 0; i < static_cast<int>(b.elements.size()); ++i)
    for (int s = 0; s < ngen; ++s) {
      auto ws = b.elements[i].word;
      ws.push_back(s);
      b.adjacency[i][s] = b.element_id(normal_form(c, ws, &cache));
    }

  // descents are shorter, hence always inside the ball: an element is the
  // distinguished representative of wW_T exactly when no generator of T
  // shortens it
  std::vector<std::vector<int>> subsets;
  for (const auto& entry : spherical_poset(c)) {
    std::vector<int> t;
    for (const auto& v : entry.subset) t.push_back(c.index_of(v));
    std::sort(t.begin(), t.end());
    subsets.push_back(std::move(t));
  }
  for (int i = 0; i < static_cast<int>(b.elements.size()); ++i) {
    const auto len = b.elements[i].word.size();
    for (const auto& t : subsets) {
      bool distinguished = true;
      for (int s : t) {
        const int j = b.adjacency[i][s];
        if (j >= 0 && b.elements[j].word.size() < len) {
          distinguished = false;
          break;
        }
      }
      if (distinguished) b.cells.push_back({i, t});
    }
  }
  std::sort(b.cells.begin(), b.cells.end(), [](const CoxeterCell& a,
                                               const CoxeterCell& x) {
    if (a.rep != x.rep) return a.rep < x.rep;
    if (a.subset.size() != x.subset.size())
      return a.subset.size() < x.subset.size();
    return a.subset < x.subset;
  });
  return b;
}

namespace detail {

// Distinguished representative of wW_T: greedy descent into T.
inline std::vector<int> coset_rep(const LabeledComplex& c, std::vector<int> w,
                                  const std::vector<int>& t,
                                  NormalFormCache* cache) {
  for (bool moved = true; moved;) {
    moved = false;
    for (int s : t) {
      auto ws = w;
      ws.push_back(s);
      auto nf = normal_form(c, ws, cache);
      if (nf.size() < w.size()) {
        w = std::move(nf);
        moved = true;
        break;
      }
    }
  }
  return w;
}

}  // namespace detail

// The link of the vertex w in the Coxeter cellulation, read from the ball's
// cell data: one link vertex per incident coset wW_{s}, one link edge per
// incident coset wW_{s,t}, labels from the system.  For any Coxeter nerve
// this must come out isomorphic to the nerve itself.
inline LabeledComplex vertex_link(const CoxeterBall& b, const GroupElement& w) {
  const int id = b.element_id(w.word);
  if (id < 0)
    throw std::runtime_error("vertex is not an element of the ball");
  if (static_cast<int>(w.word.size()) > b.radius - 2)
    throw std::runtime_error(
        "vertex is too close to the ball boundary for a complete link");

  const LabeledComplex& c = b.system;
  std::set<CoxeterCell> have(b.cells.begin(), b.cells.end());
  NormalFormCache cache;
  auto incident = [&](const std::vector<int>& t) {
    const auto rep = detail::coset_rep(c, w.word, t, &cache);
    const int rid = b.element_id(rep);
    return rid >= 0 && have.count(CoxeterCell{rid, t});
  };

  std::vector<std::string> vertices;
  for (int s = 0; s < c.vertex_count(); ++s)
    if (incident({s})) vertices.push_back(c.vertex_names()[s]);
  std::vector<std::tuple<std::string, std::string, int>> edges;
  for (const auto& [e, m] : c.edges())
    if (incident({e.first, e.second}))
      edges.push_back(
          {c.vertex_names()[e.first], c.vertex_names()[e.second], m});

  std::string name = c.name() + ":link";
  for (int x : w.word) name += ":" + c.vertex_names()[x];
  return LabeledComplex::from_data(name, vertices, edges);
}

}  // namespace cxorb
