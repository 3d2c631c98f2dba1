#pragma once

#include "cxorb/cyclotomic.hpp"
#include "cxorb/nerve.hpp"
#include "cxorb/rational.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Finiteness, orders and Gram signatures for vertex subsets of the nerve.
// A subset stands for the standard parabolic subgroup it generates; absent
// edges are infinite labels, which make the subgroup infinite outright.

namespace cxorb {

struct Signature {
  int plus = 0, minus = 0, zero = 0;
  bool operator==(const Signature&) const = default;
};

namespace detail {

inline std::vector<int> subset_indices(const LabeledComplex& c,
                                       const std::vector<std::string>& subset) {
  std::vector<int> vs;
  std::set<int> seen;
  for (const auto& v : subset) {
    int i = c.index_of(v);
    if (!seen.insert(i).second)
      throw std::runtime_error("duplicate vertex in subset: " + v);
    vs.push_back(i);
  }
  return vs;
}

inline bool spherical_triple_indices(const LabeledComplex& c, int a, int b,
                                     int d) {
  int p = c.label(a, b), q = c.label(a, d), r = c.label(b, d);
  return p != 0 && q != 0 && r != 0 &&
         LabeledComplex::spherical_triangle(p, q, r);
}

}  // namespace detail

// Signature (n_plus, n_minus, n_zero) of the matrix (-cos(pi/m_ij)), ones on
// the diagonal.  Coefficient sums e_k of the characteristic polynomial are
// computed exactly; the matrix is symmetric, so all roots are real and
// Descartes' rule counts them without slack.
inline Signature gram_signature(const LabeledComplex& c,
                                const std::vector<std::string>& subset) {
  auto vs = detail::subset_indices(c, subset);
  const int n = static_cast<int>(vs.size());
  if (n > 4) throw std::runtime_error("unsupported rank: " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!c.adjacent(vs[i], vs[j]))
        throw std::runtime_error(
            "gram signature undefined: infinite label inside subset");

  std::vector<std::vector<CycloNumber>> g(n, std::vector<CycloNumber>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g[i][j] = (i == j) ? CycloNumber::rational(1)
                         : -CycloNumber::cos_pi_over(c.label(vs[i], vs[j]));

  // e_k = sum of k-by-k principal minors
  std::vector<int> esign(n + 1, 0);
  esign[0] = 1;
  for (int k = 1; k <= n; ++k) {
    CycloNumber ek;
    std::vector<int> pick(k);
    auto rec = [&](auto&& self, int from, int depth) -> void {
      if (depth == k) {
        std::vector<std::vector<CycloNumber>> minor(
            k, std::vector<CycloNumber>(k));
        for (int r = 0; r < k; ++r)
          for (int s = 0; s < k; ++s) minor[r][s] = g[pick[r]][pick[s]];
        ek = ek + LabeledComplex::det(minor);
        return;
      }
      for (int v = from; v < n; ++v) {
        pick[depth] = v;
        self(self, v + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
    esign[k] = ek.sign();
  }

  int rank = 0;
  for (int k = n; k >= 1; --k)
    if (esign[k] != 0) {
      rank = k;
      break;
    }
  // char poly coefficient of lambda^{n-k} is (-1)^k e_k; count positive roots
  int variations = 0, prev = 1;  // leading coefficient +1
  for (int k = 1; k <= n; ++k) {
    int ck = (k % 2 ? -esign[k] : esign[k]);
    if (ck == 0) continue;
    if (ck != prev) ++variations;
    prev = ck;
  }
  Signature sig;
  sig.zero = n - rank;
  sig.plus = variations;
  sig.minus = rank - variations;
  return sig;
}

inline bool is_spherical(const LabeledComplex& c,
                         const std::vector<std::string>& subset) {
  auto vs = detail::subset_indices(c, subset);
  const int n = static_cast<int>(vs.size());
  if (n > 4) throw std::runtime_error("unsupported rank: " + std::to_string(n));
  if (n <= 1) return true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!c.adjacent(vs[i], vs[j])) return false;
  if (n == 2) return true;
  if (n == 3) return detail::spherical_triple_indices(c, vs[0], vs[1], vs[2]);
  // rank 4: every triple must be finite, and then positive definiteness is
  // equivalent to a positive determinant (Sylvester on the nested minors)
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<int> t;
    for (int i = 0; i < 4; ++i)
      if (i != skip) t.push_back(vs[i]);
    if (!detail::spherical_triple_indices(c, t[0], t[1], t[2])) return false;
  }
  return c.gram_det_sign(vs) > 0;
}

// |W_T| for spherical T.  Connected rank-3 diagrams close under the triangle
// group formula 4 / (1/p + 1/q + 1/r - 1), which also covers the reducible
// triples; rank-4 subsets must factor through commuting components.
inline Integer group_order(const LabeledComplex& c,
                           const std::vector<std::string>& subset) {
  auto vs = detail::subset_indices(c, subset);
  const int n = static_cast<int>(vs.size());
  if (n > 4) throw std::runtime_error("unsupported rank: " + std::to_string(n));
  if (!is_spherical(c, subset))
    throw std::runtime_error("subgroup is infinite: no order");
  if (n == 0) return 1;
  if (n == 1) return 2;
  if (n == 2) return 2 * c.label(vs[0], vs[1]);
  if (n == 3) {
    Rational s(0);
    int p = c.label(vs[0], vs[1]), q = c.label(vs[0], vs[2]),
        r = c.label(vs[1], vs[2]);
    s = Rational(1, p) + Rational(1, q) + Rational(1, r) - 1;
    Rational order = Rational(4) / s;
    if (denominator(order) != 1)
      throw std::runtime_error("triangle group order is not integral");
    return numerator(order);
  }
  // rank 4: split at commuting pairs (label 2 = no diagram edge)
  std::vector<int> comp(4, -1);
  int ncomp = 0;
  for (int i = 0; i < 4; ++i) {
    if (comp[i] != -1) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int j = 0; j < 4; ++j)
        if (comp[j] == -1 && c.label(vs[x], vs[j]) > 2) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }
  if (ncomp == 1)
    throw std::runtime_error(
        "unsupported rank: connected rank-4 diagram has no closed order form");
  Integer total = 1;
  for (int k = 0; k < ncomp; ++k) {
    std::vector<std::string> part;
    for (int i = 0; i < 4; ++i)
      if (comp[i] == k) part.push_back(c.vertex_names()[vs[i]]);
    total *= group_order(c, part);
  }
  return total;
}

struct PosetEntry {
  std::vector<std::string> subset;  // sorted vertex names
  Integer order;
};

// All spherical subsets with their orders.  For a metric-flag complex these
// are exactly the empty set, the vertices, the edges and the triangles: a
// spherical 4-clique would force a 3-simplex into the nerve.
inline std::vector<PosetEntry> spherical_poset(const LabeledComplex& c) {
  std::vector<PosetEntry> out;
  out.push_back({{}, 1});
  for (const auto& v : c.vertex_names()) out.push_back({{v}, 2});
  for (const auto& [e, m] : c.edges()) {
    std::vector<std::string> s{c.vertex_names()[e.first],
                               c.vertex_names()[e.second]};
    std::sort(s.begin(), s.end());
    out.push_back({s, 2 * m});
  }
  for (const auto& t : c.triangles()) {
    std::vector<std::string> s{c.vertex_names()[t[0]], c.vertex_names()[t[1]],
                               c.vertex_names()[t[2]]};
    std::sort(s.begin(), s.end());
    out.push_back({std::move(s), 0});
    out.back().order = group_order(c, out.back().subset);
  }
  std::sort(out.begin(), out.end(), [](const PosetEntry& a,
                                       const PosetEntry& b) {
    return a.subset.size() != b.subset.size()
               ? a.subset.size() < b.subset.size()
               : a.subset < b.subset;
  });
  return out;
}

}  // namespace cxorb
