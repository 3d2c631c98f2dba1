#pragma once

#include "cxorb/detect.hpp"
#include "cxorb/nerve.hpp"
#include "cxorb/rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Capped pieces and Andreev's realizability conditions.  A piece is a disk
// fragment of the nerve together with cap cells closing it into a 2-sphere;
// the dual polytope has one face per vertex, one vertex per cell, and
// dihedral angle pi/m across the edge labeled m.  check() evaluates the five
// combinatorial conditions characterizing finite-volume convex polytopes in
// H^3 with non-obtuse angles; caps play the role of ideal vertices.

namespace cxorb {

struct CapCell {
  std::vector<std::string> circuit;  // cyclic boundary, 3 or 4 vertices
  std::string provenance;            // which removed feature created the cap
};

struct CappedPiece {
  LabeledComplex base;
  std::vector<CapCell> caps;

  // cells = base triangles + caps
  std::size_t cell_count() const {
    return base.triangles().size() + caps.size();
  }
};

struct ConditionVerdict {
  bool passed = true;
  std::vector<std::string> violations;
};

struct AndreevReport {
  // verdicts for conditions (i) through (v), in order
  std::array<ConditionVerdict, 5> conditions;
  std::size_t ideal_vertex_count = 0;  // number of caps

  bool passed() const {
    for (const auto& c : conditions)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string joined(const std::vector<std::string>& names) {
  std::string out = "(";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out + ")";
}

// circuit edges as normalized index pairs
inline std::set<std::pair<int, int>> circuit_edges(const LabeledComplex& c,
                                                   const CapCell& cap) {
  std::set<std::pair<int, int>> out;
  const size_t n = cap.circuit.size();
  for (size_t i = 0; i < n; ++i) {
    int a = c.index_of(cap.circuit[i]);
    int b = c.index_of(cap.circuit[(i + 1) % n]);
    out.insert({std::min(a, b), std::max(a, b)});
  }
  return out;
}

// The seven-sentence obstruction list for a pair of cap cells.  Runs before
// label validation so that every coincidence pattern is reported as itself,
// not as a label conflict.
inline void check_cap_pair(const LabeledComplex& base, const CapCell& x,
                           const CapCell& y) {
  auto ex = circuit_edges(base, x), ey = circuit_edges(base, y);
  std::vector<std::pair<int, int>> shared;
  std::set_intersection(ex.begin(), ex.end(), ey.begin(), ey.end(),
                        std::back_inserter(shared));
  std::set<std::string> vx(x.circuit.begin(), x.circuit.end());
  std::set<std::string> vy(y.circuit.begin(), y.circuit.end());
  std::vector<std::string> vshared;
  std::set_intersection(vx.begin(), vx.end(), vy.begin(), vy.end(),
                        std::back_inserter(vshared));

  const bool sqx = x.circuit.size() == 4, sqy = y.circuit.size() == 4;
  if (sqx && sqy) {
    if (shared.size() == 4)
      throw std::runtime_error("two square caps share all four edges");
    if (shared.size() == 3)
      throw std::runtime_error("three square cap edges coincide: pouch");
    if (shared.size() == 2) {
      const auto& [a, b] = shared[0];
      const auto& [c, d] = shared[1];
      bool disjoint = a != c && a != d && b != c && b != d;
      if (disjoint)
        throw std::runtime_error(
            "opposite square cap edges coincide: cylinder or Moebius "
            "identification");
      throw std::runtime_error(
          "adjacent-edge coincidence merges Seifert subcomplexes");
    }
  } else if (!sqx && !sqy) {
    if (shared.size() == 3)
      throw std::runtime_error("two triangular caps share all edges");
    if (shared.size() == 2)
      throw std::runtime_error("two triangular cap edges coincide: pouch");
  } else if (shared.size() >= 2) {
    throw std::runtime_error(
        "a triangular cap and a square cap share two edges");
  }

  // remaining patterns must intersect in a single cell: nothing, one vertex,
  // or one edge with both endpoints
  bool cell = vshared.empty() ||
              (vshared.size() == 1 && shared.empty()) ||
              (vshared.size() == 2 && shared.size() == 1);
  if (!cell)
    throw std::runtime_error("cap cells intersect in a set that is not a cell");
}

}  // namespace detail

// Attach cap cells along the given boundary circuits and validate that the
// result is a well-formed cell decomposition of S^2.  Coincidence patterns
// between caps each raise their own error; afterwards the caps must carry
// the right labels (squares all-2 and chordless, triangles with angle sum
// exactly pi) and the assembled complex must close up into a sphere.
inline CappedPiece cap(const LabeledComplex& base,
                       const std::vector<std::vector<std::string>>& circuits,
                       const std::vector<std::string>& provenance = {}) {
  CappedPiece piece{base, {}};
  for (size_t i = 0; i < circuits.size(); ++i) {
    CapCell cell;
    cell.circuit = circuits[i];
    if (i < provenance.size()) cell.provenance = provenance[i];
    piece.caps.push_back(std::move(cell));
  }

  // circuit shape
  for (const auto& cap : piece.caps) {
    const auto& cyc = cap.circuit;
    if (cyc.size() != 3 && cyc.size() != 4)
      throw std::runtime_error("cap boundary must have three or four vertices");
    std::set<std::string> distinct(cyc.begin(), cyc.end());
    if (distinct.size() != cyc.size())
      throw std::runtime_error("cap boundary repeats a vertex");
    for (const auto& v : cyc)
      if (!base.has_vertex(v))
        throw std::runtime_error("cap boundary visits an unknown vertex: " + v);
    for (size_t i = 0; i < cyc.size(); ++i) {
      const auto& a = cyc[i];
      const auto& b = cyc[(i + 1) % cyc.size()];
      if (!base.adjacent(base.index_of(a), base.index_of(b)))
        throw std::runtime_error("cap boundary is not a closed edge path: {" +
                                 a + "," + b + "} is not an edge");
    }
  }

  // pairwise coincidence obstructions
  for (size_t i = 0; i < piece.caps.size(); ++i)
    for (size_t j = i + 1; j < piece.caps.size(); ++j)
      detail::check_cap_pair(base, piece.caps[i], piece.caps[j]);

  // labels and chords
  for (const auto& cap : piece.caps) {
    const auto& cyc = cap.circuit;
    if (cyc.size() == 4) {
      for (size_t i = 0; i < 4; ++i)
        if (base.label(base.index_of(cyc[i]),
                       base.index_of(cyc[(i + 1) % 4])) != 2)
          throw std::runtime_error("square cap boundary must have all labels 2");
      if (base.adjacent(base.index_of(cyc[0]), base.index_of(cyc[2])) ||
          base.adjacent(base.index_of(cyc[1]), base.index_of(cyc[3])))
        throw std::runtime_error("square cap boundary has a chord");
    } else {
      Rational sum = 0;
      for (size_t i = 0; i < 3; ++i)
        sum += Rational(1) / base.label(base.index_of(cyc[i]),
                                        base.index_of(cyc[(i + 1) % 3]));
      if (sum != 1)
        throw std::runtime_error(
            "triangular cap boundary must have angle sum pi");
    }
  }

  // global cell structure: every edge in exactly two cells, vertex links
  // single circuits, Euler characteristic 2
  const auto& tris = base.triangles();
  std::map<std::pair<int, int>, int> edge_cells;
  for (const auto& [e, m] : base.edges()) edge_cells[e] = 0;
  for (const auto& t : tris)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) edge_cells[{t[i], t[j]}]++;
  for (const auto& cap : piece.caps)
    for (const auto& e : detail::circuit_edges(base, cap)) edge_cells[e]++;
  for (const auto& [e, k] : edge_cells)
    if (k != 2)
      throw std::runtime_error(
          "edge {" + base.vertex_names()[e.first] + "," +
          base.vertex_names()[e.second] + "} lies in " + std::to_string(k) +
          " cells, not two");

  for (int v = 0; v < base.vertex_count(); ++v) {
    // each cell through v contributes one link edge joining its two
    // neighbors of v; the union must be a single circuit (as a multigraph)
    std::map<int, std::vector<int>> link;
    int link_edges = 0;
    auto connect = [&](int a, int b) {
      link[a].push_back(b);
      link[b].push_back(a);
      ++link_edges;
    };
    for (const auto& t : tris) {
      if (t[0] != v && t[1] != v && t[2] != v) continue;
      std::vector<int> rest;
      for (int u : t)
        if (u != v) rest.push_back(u);
      connect(rest[0], rest[1]);
    }
    for (const auto& cap : piece.caps) {
      const auto& cyc = cap.circuit;
      for (size_t i = 0; i < cyc.size(); ++i)
        if (base.index_of(cyc[i]) == v)
          connect(base.index_of(cyc[(i + 1) % cyc.size()]),
                  base.index_of(cyc[(i + cyc.size() - 1) % cyc.size()]));
    }
    bool ok = !link.empty() && link_edges == static_cast<int>(link.size());
    for (const auto& [u, nb] : link)
      if (nb.size() != 2) ok = false;
    if (ok) {  // connected?
      std::set<int> seen{link.begin()->first};
      std::vector<int> stack{link.begin()->first};
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : link[u])
          if (seen.insert(w).second) stack.push_back(w);
      }
      ok = seen.size() == link.size();
    }
    if (!ok)
      throw std::runtime_error("link of " + base.vertex_names()[v] +
                               " is not a single circuit in the capped "
                               "complex");
  }

  long long chi = base.vertex_count() -
                  static_cast<long long>(base.edges().size()) +
                  static_cast<long long>(piece.cell_count());
  if (chi != 2)
    throw std::runtime_error("capped complex is not a sphere: Euler "
                             "characteristic " +
                             std::to_string(chi));
  return piece;
}

// Andreev's five conditions, evaluated combinatorially on the capped piece.
// All angle comparisons are exact rational comparisons of sums of 1/m.
inline AndreevReport check(const CappedPiece& z) {
  const auto& c = z.base;
  if (c.vertex_count() < 5)
    throw std::runtime_error(
        "andreev conditions need at least five vertices: simplex pieces are "
        "classified by their gram signature");

  AndreevReport report;
  report.ideal_vertex_count = z.caps.size();
  auto& [c1, c2, c3, c4, c5] = report.conditions;
  auto angle = [&](int a, int b) { return Rational(1) / c.label(a, b); };

  // (i) every cell has the angle sum of its type: base triangles spherical,
  // triangular caps Euclidean, square caps right-angled
  for (const auto& t : c.triangles()) {
    Rational sum = angle(t[0], t[1]) + angle(t[1], t[2]) + angle(t[0], t[2]);
    if (sum <= 1)
      c1.violations.push_back(
          "triangle cell " +
          detail::joined(detail::names_of(c, {t[0], t[1], t[2]})) +
          " has angle sum <= pi");
  }
  for (const auto& cap : z.caps) {
    std::vector<int> idx;
    for (const auto& v : cap.circuit) idx.push_back(c.index_of(v));
    if (idx.size() == 3) {
      Rational sum =
          angle(idx[0], idx[1]) + angle(idx[1], idx[2]) + angle(idx[0], idx[2]);
      if (sum != 1)
        c1.violations.push_back("triangular cap " +
                                detail::joined(cap.circuit) +
                                " has angle sum != pi");
    } else {
      for (size_t i = 0; i < 4; ++i)
        if (c.label(idx[i], idx[(i + 1) % 4]) != 2) {
          c1.violations.push_back("square cap " + detail::joined(cap.circuit) +
                                  " is not right-angled");
          break;
        }
    }
  }

  // (ii) a 3-clique that bounds no cell must have angle sum < pi
  std::set<std::array<int, 3>> cell_triangles;
  for (const auto& t : c.triangles()) cell_triangles.insert(t);
  for (const auto& cap : z.caps)
    if (cap.circuit.size() == 3) {
      std::array<int, 3> t{c.index_of(cap.circuit[0]),
                           c.index_of(cap.circuit[1]),
                           c.index_of(cap.circuit[2])};
      std::sort(t.begin(), t.end());
      cell_triangles.insert(t);
    }
  for (const auto& [e, m] : c.edges()) {
    const auto [i, j] = e;
    for (int k : c.neighbors(i)) {
      if (k <= j || !c.adjacent(j, k)) continue;
      if (cell_triangles.count({i, j, k})) continue;
      Rational sum = angle(i, j) + angle(j, k) + angle(i, k);
      if (sum >= 1)
        c2.violations.push_back(
            "3-circuit " + detail::joined(detail::names_of(c, {i, j, k})) +
            " has angle sum >= pi and bounds no cell");
    }
  }

  // (iii) every chordless all-2 4-cycle bounds a square cap
  std::set<std::vector<std::string>> cap_squares;
  for (const auto& cap : z.caps)
    if (cap.circuit.size() == 4)
      cap_squares.insert(detail::canonical_cycle(cap.circuit));
  for (const auto& cyc : chordless_all2_circuits(c))
    if (!cap_squares.count(cyc))
      c3.violations.push_back("right-angled 4-circuit " + detail::joined(cyc) +
                              " bounds no square cap");

  // (iv) a triangular prism must not carry right angles along both its base
  // and top; the dual of an uncapped 5-vertex piece with a unique
  // non-adjacent pair is exactly the prism
  if (z.caps.empty() && c.vertex_count() == 5) {
    std::vector<std::pair<int, int>> nonadj;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (!c.adjacent(i, j)) nonadj.push_back({i, j});
    if (nonadj.size() == 1) {
      auto [n, s] = nonadj[0];
      bool all_two = true;
      for (int v = 0; v < 5; ++v) {
        if (v == n || v == s) continue;
        if (c.label(n, v) != 2 || c.label(s, v) != 2) all_two = false;
      }
      if (all_two)
        c4.violations.push_back(
            "triangular prism with poles " +
            detail::joined(detail::names_of(c, {n, s})) +
            " carries right angles along base and top");
    }
  }

  // (v) no vertex outside a square cap joins an opposite pair of its
  // corners through two right angles
  for (const auto& cap : z.caps) {
    if (cap.circuit.size() != 4) continue;
    std::vector<int> idx;
    for (const auto& v : cap.circuit) idx.push_back(c.index_of(v));
    for (int d = 0; d < 2; ++d) {
      int a = idx[d], b = idx[d + 2];
      for (int x = 0; x < c.vertex_count(); ++x) {
        if (std::find(idx.begin(), idx.end(), x) != idx.end()) continue;
        if (c.label(x, a) == 2 && c.label(x, b) == 2)
          c5.violations.push_back(
              "vertex " + c.vertex_names()[x] + " meets opposite corners " +
              detail::joined(detail::names_of(c, {a, b})) + " of square cap " +
              detail::joined(cap.circuit) + " at right angles");
      }
    }
  }

  for (auto& cond : report.conditions) cond.passed = cond.violations.empty();
  return report;
}

}  // namespace cxorb
