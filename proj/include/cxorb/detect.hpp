#pragma once

#include "cxorb/nerve.hpp"
#include "cxorb/rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Feature census on a validated spherical nerve: Euclidean vertices, the
// Euclidean circuits they bound, maximal right-angled suspensions and the
// Seifert components these glue into.  Everything downstream (walls, pieces,
// certificates) is read off this census.

namespace cxorb {

enum class CircuitFlag { empty, ra_cone_boundary, non_ra_cone_boundary };

inline std::string to_string(CircuitFlag f) {
  switch (f) {
    case CircuitFlag::empty: return "empty";
    case CircuitFlag::ra_cone_boundary: return "ra_cone_boundary";
    case CircuitFlag::non_ra_cone_boundary: return "non_ra_cone_boundary";
  }
  throw std::logic_error("bad circuit flag");
}

struct EuclideanVertex {
  std::string vertex;
  int valence = 0;                 // 3 or 4
  std::vector<std::string> link;   // canonical cycle
  bool ra_cone = false;            // valence 3 and every cone edge labeled 2
};

struct Euclidean3Circuit {
  std::vector<std::string> circuit;  // canonical cycle
  CircuitFlag flag = CircuitFlag::empty;
  std::vector<std::string> ra_apexes;    // cone tips with all-2 cone edges
  std::vector<std::string> star_apexes;  // every valence-3 tip over this link
};

struct Euclidean4Circuit {
  std::vector<std::string> circuit;  // canonical cycle; chordless, all-2
};

struct Suspension {
  std::vector<std::string> vertices;  // sorted
  std::array<std::string, 2> poles;   // canonical (lex-least) presentation
  std::vector<std::string> base;      // vertices minus canonical poles, sorted
  std::vector<std::array<std::string, 2>> pole_presentations;  // all, sorted
  bool whole_complex = false;
};

struct SeifertClass {
  std::vector<int> members;  // indices into the suspension list
  // pairwise intersections that are Euclidean 4-circuits, deduplicated
  std::vector<std::vector<std::string>> gluing_circuits;
  // frontier circuits of the complement regions, deduplicated
  std::vector<std::vector<std::string>> boundary_circuits;
  std::vector<std::string> vertices;  // union over members, sorted
};

struct FeatureSet {
  std::vector<EuclideanVertex> euclidean_vertices;
  std::vector<Euclidean3Circuit> euclidean_3_circuits;
  std::vector<Euclidean4Circuit> euclidean_4_circuits;
  std::vector<Suspension> suspensions;
  std::vector<SeifertClass> seifert_classes;
};

namespace detail {

// lex-least representative over rotations and the two directions
inline std::vector<std::string> canonical_cycle(std::vector<std::string> c) {
  std::vector<std::string> best;
  const size_t n = c.size();
  for (int dir = 0; dir < 2; ++dir) {
    for (size_t r = 0; r < n; ++r) {
      std::vector<std::string> cand;
      for (size_t i = 0; i < n; ++i) cand.push_back(c[(r + i) % n]);
      if (best.empty() || cand < best) best = cand;
    }
    std::reverse(c.begin(), c.end());
  }
  return best;
}

inline bool is_euclidean_triple(int p, int q, int r) {
  // 1/p + 1/q + 1/r = 1 exactly
  long long pp = p, qq = q, rr = r;
  return qq * rr + pp * rr + pp * qq == pp * qq * rr;
}

// chordless all-2 4-cycle on the given four vertices?  Returns the cycle
// order through `out` when it is one.
inline bool euclidean_4_circuit_on(const LabeledComplex& c,
                                   const std::vector<int>& vs,
                                   std::vector<int>* out = nullptr) {
  if (vs.size() != 4) return false;
  // find the two non-adjacent diagonal pairs
  for (int a = 1; a < 4; ++a) {
    // try diagonals {vs[0], vs[a]} and the remaining pair
    std::vector<int> rest;
    for (int i = 1; i < 4; ++i)
      if (i != a) rest.push_back(vs[i]);
    int p = vs[0], q = vs[a], r = rest[0], s = rest[1];
    if (c.adjacent(p, q) || c.adjacent(r, s)) continue;
    if (c.label(p, r) == 2 && c.label(r, q) == 2 && c.label(q, s) == 2 &&
        c.label(s, p) == 2) {
      if (out) *out = {p, r, q, s};
      return true;
    }
  }
  return false;
}

struct Region {
  std::vector<int> triangles;              // indices into c.triangles()
  std::set<std::pair<int, int>> frontier;  // blocked edges seen from inside
};

// Connected components of the triangles outside `removed`, where two
// triangles only communicate across an edge that is not blocked.
inline std::vector<Region> flood_regions(
    const LabeledComplex& c, const std::set<std::pair<int, int>>& blocked,
    const std::set<int>& removed) {
  const auto& tris = c.triangles();
  std::map<std::pair<int, int>, std::vector<int>> by_edge;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    if (removed.count(t)) continue;
    const auto& tri = tris[t];
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        by_edge[{tri[i], tri[j]}].push_back(t);
  }
  std::vector<Region> out;
  std::set<int> seen;
  for (int t0 = 0; t0 < static_cast<int>(tris.size()); ++t0) {
    if (removed.count(t0) || seen.count(t0)) continue;
    Region reg;
    std::vector<int> stack{t0};
    seen.insert(t0);
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      reg.triangles.push_back(t);
      const auto& tri = tris[t];
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          std::pair<int, int> e{tri[i], tri[j]};
          if (blocked.count(e)) {
            reg.frontier.insert(e);
            continue;
          }
          for (int u : by_edge[e])
            if (!seen.count(u)) {
              seen.insert(u);
              stack.push_back(u);
            }
        }
    }
    std::sort(reg.triangles.begin(), reg.triangles.end());
    out.push_back(std::move(reg));
  }
  return out;
}

// Partition an edge set in which every vertex has degree exactly two into
// simple cycles; throws otherwise.
inline std::vector<std::vector<int>> edge_set_to_cycles(
    const std::set<std::pair<int, int>>& edges) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& [v, nb] : adj)
    if (nb.size() != 2)
      throw std::runtime_error(
          "frontier is not a disjoint union of circuits");
  std::vector<std::vector<int>> cycles;
  std::set<int> seen;
  for (const auto& [start, nb] : adj) {
    if (seen.count(start)) continue;
    std::vector<int> cyc;
    int prev = -1, cur = start;
    do {
      cyc.push_back(cur);
      seen.insert(cur);
      int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    } while (cur != start);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

inline std::vector<std::string> names_of(const LabeledComplex& c,
                                         const std::vector<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(c.vertex_names()[v]);
  return out;
}

}  // namespace detail

// Valence-3 vertices whose link triangle is Euclidean, and valence-4
// vertices whose link square is all-2.
inline std::vector<EuclideanVertex> euclidean_vertices(
    const LabeledComplex& c) {
  std::vector<EuclideanVertex> out;
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto& nb = c.neighbors(v);
    if (nb.size() != 3 && nb.size() != 4) continue;
    auto cycle = c.link_cycle(v);
    const int k = static_cast<int>(cycle.size());
    bool euclidean = false;
    if (k == 3) {
      euclidean = detail::is_euclidean_triple(c.label(cycle[0], cycle[1]),
                                              c.label(cycle[1], cycle[2]),
                                              c.label(cycle[2], cycle[0]));
    } else {
      euclidean = true;
      for (int i = 0; i < 4; ++i)
        if (c.label(cycle[i], cycle[(i + 1) % 4]) != 2) euclidean = false;
    }
    if (!euclidean) continue;
    EuclideanVertex ev;
    ev.vertex = c.vertex_names()[v];
    ev.valence = k;
    ev.link = detail::canonical_cycle(detail::names_of(c, cycle));
    if (k == 3) {
      ev.ra_cone = true;
      for (int u : cycle)
        if (c.label(v, u) != 2) ev.ra_cone = false;
    }
    out.push_back(std::move(ev));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
  return out;
}

// Chordless all-2 4-cycles, canonicalized and sorted.  Uses only adjacency
// and labels, so it is safe on disk fragments as well as closed nerves.
inline std::vector<std::vector<std::string>> chordless_all2_circuits(
    const LabeledComplex& c) {
  std::set<std::vector<std::string>> seen;
  for (int i = 0; i < c.vertex_count(); ++i)
    for (int k = i + 1; k < c.vertex_count(); ++k) {
      if (c.adjacent(i, k)) continue;
      std::vector<int> mid;
      for (int x : c.neighbors(i))
        if (c.label(i, x) == 2 && c.label(k, x) == 2) mid.push_back(x);
      for (size_t a = 0; a < mid.size(); ++a)
        for (size_t b = a + 1; b < mid.size(); ++b) {
          if (c.adjacent(mid[a], mid[b])) continue;
          seen.insert(detail::canonical_cycle(
              detail::names_of(c, {i, mid[a], k, mid[b]})));
        }
    }
  return {seen.begin(), seen.end()};
}

// All Euclidean 3-circuits (cliques summing to pi; they never span a
// triangle) with their cone flags, and all Euclidean 4-circuits.
inline std::pair<std::vector<Euclidean3Circuit>, std::vector<Euclidean4Circuit>>
euclidean_circuits(const LabeledComplex& c) {
  std::vector<Euclidean3Circuit> threes;
  std::map<std::vector<std::string>, size_t> three_at;
  for (const auto& [e, m] : c.edges()) {
    const auto [i, j] = e;
    for (int k : c.neighbors(i)) {
      if (k <= j || !c.adjacent(j, k)) continue;
      if (!detail::is_euclidean_triple(m, c.label(j, k), c.label(i, k)))
        continue;
      Euclidean3Circuit cc;
      cc.circuit = detail::canonical_cycle(detail::names_of(c, {i, j, k}));
      three_at[cc.circuit] = threes.size();
      threes.push_back(std::move(cc));
    }
  }
  // flags come from the valence-3 vertices sitting over a circuit; skip
  // vertices whose three neighbors are not a clique (possible in fragments)
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto& nb = c.neighbors(v);
    if (nb.size() != 3) continue;
    std::vector<int> cycle(nb.begin(), nb.end());
    if (!c.adjacent(cycle[0], cycle[1]) || !c.adjacent(cycle[1], cycle[2]) ||
        !c.adjacent(cycle[0], cycle[2]))
      continue;
    auto key = detail::canonical_cycle(detail::names_of(c, cycle));
    auto it = three_at.find(key);
    if (it == three_at.end()) continue;  // spherical or hyperbolic tip
    auto& circ = threes[it->second];
    circ.star_apexes.push_back(c.vertex_names()[v]);
    bool ra = true;
    for (int u : cycle)
      if (c.label(v, u) != 2) ra = false;
    if (ra) circ.ra_apexes.push_back(c.vertex_names()[v]);
  }
  for (auto& circ : threes) {
    std::sort(circ.star_apexes.begin(), circ.star_apexes.end());
    std::sort(circ.ra_apexes.begin(), circ.ra_apexes.end());
    if (!circ.ra_apexes.empty())
      circ.flag = CircuitFlag::ra_cone_boundary;
    else if (!circ.star_apexes.empty())
      circ.flag = CircuitFlag::non_ra_cone_boundary;
  }
  std::sort(threes.begin(), threes.end(),
            [](const auto& a, const auto& b) { return a.circuit < b.circuit; });

  std::vector<Euclidean4Circuit> fours;
  for (auto& cyc : chordless_all2_circuits(c)) fours.push_back({std::move(cyc)});
  return {std::move(threes), std::move(fours)};
}

// Maximal infinite right-angled suspensions.  For each non-adjacent pair the
// candidate base is every common neighbor joined to both poles by label-2
// edges; a candidate survives when its base group is infinite (not a single
// vertex, not a single edge) and no other candidate properly contains it.
inline std::vector<Suspension> ra_suspensions(const LabeledComplex& c) {
  std::map<std::vector<int>, std::vector<std::array<int, 2>>> candidates;
  for (int u = 0; u < c.vertex_count(); ++u)
    for (int v = u + 1; v < c.vertex_count(); ++v) {
      if (c.adjacent(u, v)) continue;
      std::vector<int> z;
      for (int x = 0; x < c.vertex_count(); ++x)
        if (c.label(u, x) == 2 && c.label(v, x) == 2) z.push_back(x);
      if (z.size() < 2) continue;
      if (z.size() == 2 && c.adjacent(z[0], z[1])) continue;  // finite base
      std::vector<int> t = z;
      t.push_back(u);
      t.push_back(v);
      std::sort(t.begin(), t.end());
      candidates[t].push_back({u, v});
    }
  std::vector<Suspension> out;
  for (const auto& [t, poles] : candidates) {
    bool contained = false;
    for (const auto& [t2, poles2] : candidates) {
      if (t2.size() <= t.size() || t2 == t) continue;
      if (std::includes(t2.begin(), t2.end(), t.begin(), t.end()))
        contained = true;
    }
    if (contained) continue;
    Suspension s;
    s.vertices = detail::names_of(c, t);
    std::sort(s.vertices.begin(), s.vertices.end());
    for (const auto& [u, v] : poles) {
      std::array<std::string, 2> pr{c.vertex_names()[u], c.vertex_names()[v]};
      if (pr[1] < pr[0]) std::swap(pr[0], pr[1]);
      s.pole_presentations.push_back(pr);
    }
    std::sort(s.pole_presentations.begin(), s.pole_presentations.end());
    s.poles = s.pole_presentations.front();
    for (const auto& v : s.vertices)
      if (v != s.poles[0] && v != s.poles[1]) s.base.push_back(v);
    s.whole_complex = (static_cast<int>(t.size()) == c.vertex_count());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.vertices < b.vertices; });
  return out;
}

// Union-find closure of "meets in a Euclidean 4-circuit", plus the gluing
// and frontier circuits of every component.
inline std::vector<SeifertClass> seifert_subcomplexes(
    const LabeledComplex& c, const std::vector<Suspension>& susp) {
  const int n = static_cast<int>(susp.size());
  std::vector<int> rep(n);
  for (int i = 0; i < n; ++i) rep[i] = i;
  auto find = [&](int x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  std::vector<std::tuple<int, int, std::vector<std::string>>> glues;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<std::string> common;
      std::set_intersection(susp[i].vertices.begin(), susp[i].vertices.end(),
                            susp[j].vertices.begin(), susp[j].vertices.end(),
                            std::back_inserter(common));
      if (common.size() != 4) continue;
      std::vector<int> vs;
      for (const auto& v : common) vs.push_back(c.index_of(v));
      std::vector<int> cyc;
      if (!detail::euclidean_4_circuit_on(c, vs, &cyc)) continue;
      glues.emplace_back(i, j,
                         detail::canonical_cycle(detail::names_of(c, cyc)));
      rep[find(i)] = find(j);
    }

  std::map<int, SeifertClass> classes;
  for (int i = 0; i < n; ++i) classes[find(i)].members.push_back(i);
  for (const auto& [i, j, circ] : glues) {
    auto& cls = classes[find(i)];
    if (std::find(cls.gluing_circuits.begin(), cls.gluing_circuits.end(),
                  circ) == cls.gluing_circuits.end())
      cls.gluing_circuits.push_back(circ);
  }

  std::vector<SeifertClass> out;
  for (auto& [root, cls] : classes) {
    std::set<std::string> verts;
    std::set<int> member_tris;
    std::set<std::pair<int, int>> member_edges;
    for (int m : cls.members) {
      std::set<int> vset;
      for (const auto& v : susp[m].vertices) {
        verts.insert(v);
        vset.insert(c.index_of(v));
      }
      for (const auto& [e, lab] : c.edges())
        if (vset.count(e.first) && vset.count(e.second))
          member_edges.insert(e);
      const auto& tris = c.triangles();
      for (int t = 0; t < static_cast<int>(tris.size()); ++t)
        if (vset.count(tris[t][0]) && vset.count(tris[t][1]) &&
            vset.count(tris[t][2]))
          member_tris.insert(t);
    }
    cls.vertices.assign(verts.begin(), verts.end());
    auto regions = detail::flood_regions(c, member_edges, member_tris);
    std::set<std::vector<std::string>> bcirc;
    for (const auto& reg : regions)
      for (const auto& cyc : detail::edge_set_to_cycles(reg.frontier)) {
        auto names = detail::canonical_cycle(detail::names_of(c, cyc));
        bcirc.insert(names);
      }
    cls.boundary_circuits.assign(bcirc.begin(), bcirc.end());
    std::sort(cls.gluing_circuits.begin(), cls.gluing_circuits.end());
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.vertices < b.vertices; });
  return out;
}

inline FeatureSet detect_features(const LabeledComplex& c) {
  FeatureSet f;
  f.euclidean_vertices = euclidean_vertices(c);
  auto [threes, fours] = euclidean_circuits(c);
  f.euclidean_3_circuits = std::move(threes);
  f.euclidean_4_circuits = std::move(fours);
  f.suspensions = ra_suspensions(c);
  f.seifert_classes = seifert_subcomplexes(c, f.suspensions);
  return f;
}

}  // namespace cxorb
