// Canonical decomposition of the orbifold along its Euclidean features, and
// the l2-acyclicity certificate assembled from the pieces.
//
// The cut system is read off the feature census: every Euclidean 3-circuit
// is a wall (with the star of a right-angled cone tip removed when one
// exists), and every Seifert component is removed along its boundary
// 4-circuits, one piece per member suspension.  What remains floods into
// complement regions; each region is capped along its frontier circuits and
// must satisfy the Andreev conditions, so every complement piece carries H3.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cxorb/andreev.hpp"
#include "cxorb/coxeter.hpp"
#include "cxorb/detect.hpp"
#include "cxorb/ell2.hpp"
#include "cxorb/nerve.hpp"
#include "cxorb/rational.hpp"

namespace cxorb {

enum class PieceKind {
  hyperbolic_capped,     // complement region, capped, Andreev-checked
  ra_cone,               // star of a right-angled cone tip over a circuit
  hyperbolic_star_ideal, // four-vertex star over a Euclidean 3-circuit
  ra_suspension,         // member suspension of a Seifert component
  euclidean_wall,        // collar of a wall circuit, nothing removed
  whole_special,         // the whole nerve admits a closed-form answer
};

inline std::string to_string(PieceKind k) {
  switch (k) {
    case PieceKind::hyperbolic_capped: return "hyperbolic_capped";
    case PieceKind::ra_cone: return "ra_cone";
    case PieceKind::hyperbolic_star_ideal: return "hyperbolic_star_ideal";
    case PieceKind::ra_suspension: return "ra_suspension";
    case PieceKind::euclidean_wall: return "euclidean_wall";
    case PieceKind::whole_special: return "whole_special";
  }
  throw std::logic_error("bad piece kind");
}

struct Piece {
  PieceKind kind = PieceKind::hyperbolic_capped;
  std::vector<std::string> support;      // sorted vertex names
  std::optional<CappedPiece> capped;     // capped complement pieces only
  std::optional<AndreevReport> andreev;  // capped pieces with >= 5 vertices
  Geometry geometry = Geometry::H3;
  bool fibered = false;  // Seifert fibered over a 2-orbifold
};

struct Decomposition {
  std::vector<Piece> pieces;
  // canonical wall circuits, sorted; every cap circuit comes from this list
  std::vector<std::vector<std::string>> walls;
  std::vector<int> characteristic;        // Euclidean and Seifert pieces
  std::vector<int> atoroidal_complement;  // the H3 pieces
  std::vector<std::string> notes;
};

// A complement piece that fails its Andreev check, or a frontier that the
// collected walls do not cover, signals a bug in the detectors rather than
// bad input; the report travels with the error when one exists.
struct InternalInconsistency : std::runtime_error {
  std::optional<AndreevReport> report;
  explicit InternalInconsistency(const std::string& what,
                                 std::optional<AndreevReport> r = {})
      : std::runtime_error(what), report(std::move(r)) {}
};

namespace detail {

inline std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::set<std::pair<int, int>> wall_edge_set(
    const LabeledComplex& c, const std::vector<std::string>& cyc) {
  std::set<std::pair<int, int>> out;
  const int k = static_cast<int>(cyc.size());
  for (int i = 0; i < k; ++i) {
    int a = c.index_of(cyc[i]);
    int b = c.index_of(cyc[(i + 1) % k]);
    out.insert({std::min(a, b), std::max(a, b)});
  }
  return out;
}

// Deterministic piece order, then index lists recomputed from geometry:
// the characteristic suborbifold collects every non-hyperbolic piece.
inline void finalize(Decomposition& d) {
  const int n = static_cast<int>(d.pieces.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Piece& x = d.pieces[a];
    const Piece& y = d.pieces[b];
    if (x.kind != y.kind) return x.kind < y.kind;
    return x.support < y.support;
  });
  std::vector<Piece> pieces;
  pieces.reserve(n);
  for (int i : order) pieces.push_back(std::move(d.pieces[i]));
  d.pieces = std::move(pieces);
  d.characteristic.clear();
  d.atoroidal_complement.clear();
  for (int i = 0; i < n; ++i) {
    if (d.pieces[i].geometry == Geometry::H3)
      d.atoroidal_complement.push_back(i);
    else
      d.characteristic.push_back(i);
  }
  std::sort(d.walls.begin(), d.walls.end());
  d.walls.erase(std::unique(d.walls.begin(), d.walls.end()), d.walls.end());
}

// Star of a cone tip over a Euclidean 3-circuit, capped by an ideal
// triangle.  Four faces form a simplex, outside the Andreev hypotheses, so
// the geometry is read from the Gram signature: the affine circuit block
// pins one eigenvalue at zero on its own, and any cone edge label above 2
// pushes the full matrix indefinite.
inline Piece ideal_star_piece(const LabeledComplex& frag,
                              const std::vector<std::string>& circuit,
                              const std::string& provenance) {
  Piece p;
  p.capped = cap(frag, {circuit}, {provenance});
  auto sig = gram_signature(frag, frag.vertex_names());
  if (sig.minus != 1 || sig.zero != 0)
    throw InternalInconsistency(
        "ideal simplex piece " + joined(frag.vertex_names()) +
        " is not hyperbolic: gram signature (" + std::to_string(sig.plus) +
        "," + std::to_string(sig.minus) + "," + std::to_string(sig.zero) +
        ")");
  p.kind = PieceKind::hyperbolic_star_ideal;
  p.geometry = Geometry::H3;
  p.support = sorted_unique(frag.vertex_names());
  return p;
}

// A member suspension contributes a piece typed by its base: two isolated
// points form a bare Euclidean 4-circuit (the wall itself), a path of three
// with right-angled edges is the star of a cone tip over that circuit, and
// every other base generates an infinite group acting on H2.
inline Piece member_piece(const LabeledComplex& c, const Suspension& t) {
  Piece p;
  p.support = t.vertices;
  if (t.base.size() == 2) {
    p.kind = PieceKind::euclidean_wall;
    p.geometry = Geometry::E2xI;
    return p;
  }
  if (t.base.size() == 3) {
    std::vector<std::pair<int, int>> base_edges;
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j) {
        int a = c.index_of(t.base[i]), b = c.index_of(t.base[j]);
        if (c.adjacent(a, b)) base_edges.push_back({a, b});
      }
    if (base_edges.size() == 2 && c.label(base_edges[0].first, base_edges[0].second) == 2 &&
        c.label(base_edges[1].first, base_edges[1].second) == 2) {
      p.kind = PieceKind::ra_cone;
      p.geometry = Geometry::E2xI;
      return p;
    }
  }
  p.kind = PieceKind::ra_suspension;
  p.geometry = Geometry::H2xE;
  p.fibered = true;
  return p;
}

}  // namespace detail

// Nerves with closed-form answers: the boundary of the 3-simplex, the
// suspension of a 3-gon, and the right-angled octahedron.  Everything else
// falls through to the feature-driven pipeline.
inline std::optional<Decomposition> classify_special(const LabeledComplex& c) {
  const int n = c.vertex_count();

  // Simplex boundary: one piece, Euclidean or hyperbolic by the signature
  // of the full Gram matrix.  A positive definite matrix cannot reach this
  // point, since sphere validation rejects finite vertex sets.
  if (n == 4) {
    auto sig = gram_signature(c, c.vertex_names());
    Decomposition d;
    Piece p;
    p.kind = PieceKind::whole_special;
    p.support = detail::sorted_unique(c.vertex_names());
    if (sig.zero > 0) {
      p.geometry = Geometry::E3;
      d.notes.push_back(
          "simplex nerve with affine gram matrix: the orbifold is a "
          "Euclidean simplex and the characteristic suborbifold is "
          "everything");
    } else {
      p.geometry = Geometry::H3;
      d.notes.push_back(
          "simplex nerve with gram signature (3,1,0): the orbifold is a "
          "hyperbolic simplex, possibly with ideal vertices, and the "
          "characteristic suborbifold is empty");
    }
    d.pieces.push_back(std::move(p));
    detail::finalize(d);
    return d;
  }

  // Suspension of a 3-gon: the double cone over a triangle, split four ways
  // on whether the equator is Euclidean and whether all six cone edges are
  // right angles.
  if (n == 5) {
    std::vector<std::pair<int, int>> gaps;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!c.adjacent(i, j)) gaps.push_back({i, j});
    if (gaps.size() != 1) return std::nullopt;
    const int north = gaps[0].first, south = gaps[0].second;
    std::vector<int> eq;
    for (int v = 0; v < n; ++v)
      if (v != north && v != south) eq.push_back(v);
    Rational eq_sum = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) eq_sum += Rational(1, c.label(eq[i], eq[j]));
    const bool equator_euclidean = eq_sum == 1;
    auto ra_pole = [&](int p) {
      for (int e : eq)
        if (c.label(p, e) != 2) return false;
      return true;
    };
    const bool cones_all_ra = ra_pole(north) && ra_pole(south);

    if (cones_all_ra) {
      Decomposition d;
      Piece p;
      p.kind = PieceKind::whole_special;
      p.support = detail::sorted_unique(c.vertex_names());
      p.fibered = true;
      if (equator_euclidean) {
        p.geometry = Geometry::E3;
        d.notes.push_back(
            "Euclidean equator with right-angled cones on both poles: the "
            "orbifold is Euclidean; the characteristic suborbifold is taken "
            "to be the union of the two cone stars, hence everything "
            "(interpretation: the union is the maximal Seifert region)");
      } else {
        // a spherical equator spans a triangle and fails validation, so
        // the remaining case is a hyperbolic base
        p.geometry = Geometry::H2xE;
        d.notes.push_back(
            "right-angled suspension of a hyperbolic triangle: Seifert "
            "fibered over the triangle orbifold");
      }
      d.pieces.push_back(std::move(p));
      detail::finalize(d);
      return d;
    }

    if (equator_euclidean) {
      // cut at the equator; at most one pole can be a right-angled cone
      Decomposition d;
      auto circuit = detail::canonical_cycle(detail::names_of(c, eq));
      d.walls.push_back(circuit);
      const bool north_ra = ra_pole(north), south_ra = ra_pole(south);
      const std::string provenance =
          (north_ra || south_ra) ? "ra-cone-link" : "euclidean-3-circuit";
      auto star = [&](int pole) {
        std::vector<std::string> names = circuit;
        names.push_back(c.vertex_names()[pole]);
        return detail::ideal_star_piece(c.full_subcomplex(names), circuit,
                                        provenance);
      };
      if (north_ra || south_ra) {
        Piece cone;
        cone.kind = PieceKind::ra_cone;
        cone.geometry = Geometry::E2xI;
        std::vector<std::string> sup = circuit;
        sup.push_back(c.vertex_names()[north_ra ? north : south]);
        cone.support = detail::sorted_unique(std::move(sup));
        d.pieces.push_back(std::move(cone));
        d.pieces.push_back(star(north_ra ? south : north));
        d.notes.push_back(
            "Euclidean equator bounding one right-angled cone: the "
            "characteristic suborbifold is that cone star");
      } else {
        Piece collar;
        collar.kind = PieceKind::euclidean_wall;
        collar.geometry = Geometry::E2xI;
        collar.support = detail::sorted_unique(circuit);
        d.pieces.push_back(std::move(collar));
        d.pieces.push_back(star(north));
        d.pieces.push_back(star(south));
        d.notes.push_back(
            "empty Euclidean equator: a collar wall separates two ideal "
            "hyperbolic stars");
      }
      detail::finalize(d);
      return d;
    }

    // neither condition degenerates: one hyperbolic piece, no walls
    Decomposition d;
    Piece p;
    p.capped = cap(c, {});
    AndreevReport rep = check(*p.capped);
    if (!rep.passed())
      throw InternalInconsistency(
          "suspension of a hyperbolic 3-gon fails the andreev conditions",
          rep);
    p.kind = PieceKind::hyperbolic_capped;
    p.geometry = Geometry::H3;
    p.support = detail::sorted_unique(c.vertex_names());
    p.andreev = std::move(rep);
    d.pieces.push_back(std::move(p));
    detail::finalize(d);
    return d;
  }

  // Right-angled octahedron: with validation done, six vertices of valence
  // four with twelve right-angled edges leave no other possibility.
  if (n == 6 && c.edges().size() == 12) {
    bool ra_octahedron = true;
    for (const auto& [e, m] : c.edges())
      if (m != 2) ra_octahedron = false;
    for (int v = 0; v < n; ++v)
      if (c.neighbors(v).size() != 4) ra_octahedron = false;
    if (ra_octahedron) {
      Decomposition d;
      Piece p;
      p.kind = PieceKind::whole_special;
      p.support = detail::sorted_unique(c.vertex_names());
      p.geometry = Geometry::E3;
      p.fibered = true;
      d.notes.push_back(
          "right-angled octahedron: the orbifold is Euclidean and the "
          "characteristic suborbifold is everything");
      d.pieces.push_back(std::move(p));
      detail::finalize(d);
      return d;
    }
  }

  return std::nullopt;
}

inline Decomposition decompose(const LabeledComplex& c) {
  if (auto special = classify_special(c)) return *special;

  const FeatureSet features = detect_features(c);
  Decomposition d;
  std::set<std::vector<std::string>> wall_set;
  std::map<std::vector<std::string>, std::string> wall_source;
  std::set<std::pair<int, int>> blocked;
  std::set<int> removed;
  const auto& tris = c.triangles();

  auto add_wall = [&](const std::vector<std::string>& cyc,
                      const std::string& src) {
    wall_set.insert(cyc);
    wall_source.emplace(cyc, src);
    for (const auto& e : detail::wall_edge_set(c, cyc)) blocked.insert(e);
  };

  // Euclidean 3-circuits: all of them are walls.  A circuit carrying a
  // right-angled cone loses that star; the others keep a collar piece.
  for (const auto& e3 : features.euclidean_3_circuits) {
    const bool ra = e3.flag == CircuitFlag::ra_cone_boundary;
    add_wall(e3.circuit, ra ? "ra-cone-link" : "euclidean-3-circuit");
    if (ra) {
      for (const auto& apex : e3.ra_apexes) {
        Piece p;
        p.kind = PieceKind::ra_cone;
        p.geometry = Geometry::E2xI;
        std::vector<std::string> sup = e3.circuit;
        sup.push_back(apex);
        p.support = detail::sorted_unique(std::move(sup));
        d.pieces.push_back(std::move(p));
        const int a = c.index_of(apex);
        for (int t = 0; t < static_cast<int>(tris.size()); ++t)
          if (tris[t][0] == a || tris[t][1] == a || tris[t][2] == a)
            removed.insert(t);
      }
    } else {
      Piece p;
      p.kind = PieceKind::euclidean_wall;
      p.geometry = Geometry::E2xI;
      p.support = detail::sorted_unique(e3.circuit);
      d.pieces.push_back(std::move(p));
    }
  }

  // Seifert components: the full subcomplex on the component's vertices is
  // removed, one piece per member suspension, gluing circuits as internal
  // walls and the component frontier as boundary walls.
  for (const auto& sc : features.seifert_classes) {
    for (const auto& g : sc.gluing_circuits) add_wall(g, "seifert-gluing");
    for (const auto& b : sc.boundary_circuits) add_wall(b, "seifert-boundary");
    std::set<int> cls;
    for (const auto& v : sc.vertices) cls.insert(c.index_of(v));
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
      if (cls.count(tris[t][0]) && cls.count(tris[t][1]) &&
          cls.count(tris[t][2]))
        removed.insert(t);
    for (int mi : sc.members) {
      const Suspension& t = features.suspensions[mi];
      if (t.whole_complex) {
        // degenerate component equal to the whole nerve
        Piece p;
        p.kind = PieceKind::whole_special;
        p.support = t.vertices;
        p.fibered = true;
        auto cyc = c.link_cycle(c.index_of(t.poles[0]));
        const int k = static_cast<int>(cyc.size());
        Rational base_sum = 0;
        for (int i = 0; i < k; ++i)
          base_sum += Rational(1, c.label(cyc[i], cyc[(i + 1) % k]));
        p.geometry = base_sum == k - 2 ? Geometry::E3 : Geometry::H2xE;
        d.pieces.push_back(std::move(p));
        d.notes.push_back(
            "the nerve is a right-angled suspension: the whole orbifold is "
            "Seifert fibered over its base polygon orbifold");
      } else {
        d.pieces.push_back(detail::member_piece(c, t));
      }
    }
  }

  // Complement regions: flood what remains, cap each frontier with the
  // walls it exactly covers, and check the result.
  for (const auto& reg : detail::flood_regions(c, blocked, removed)) {
    std::set<int> vs;
    std::set<std::pair<int, int>> es;
    for (int t : reg.triangles)
      for (int i = 0; i < 3; ++i) {
        vs.insert(tris[t][i]);
        for (int j = i + 1; j < 3; ++j)
          es.insert({std::min(tris[t][i], tris[t][j]),
                     std::max(tris[t][i], tris[t][j])});
      }
    std::vector<std::string> names;
    for (int v : vs) names.push_back(c.vertex_names()[v]);
    std::sort(names.begin(), names.end());
    std::vector<std::tuple<std::string, std::string, int>> edges;
    for (const auto& [a, b] : es)
      edges.push_back(
          {c.vertex_names()[a], c.vertex_names()[b], c.label(a, b)});
    std::string frag_name = c.name() + ":region";
    for (const auto& v : names) frag_name += ":" + v;
    const auto frag = LabeledComplex::from_data(frag_name, names, edges);

    std::set<std::pair<int, int>> frontier = reg.frontier;
    std::vector<std::vector<std::string>> caps;
    std::vector<std::string> provenance;
    for (const auto& w : wall_set) {
      auto we = detail::wall_edge_set(c, w);
      bool inside = true;
      for (const auto& e : we)
        if (!reg.frontier.count(e)) inside = false;
      if (!inside) continue;
      caps.push_back(w);
      provenance.push_back(wall_source[w]);
      for (const auto& e : we) frontier.erase(e);
    }
    if (!frontier.empty()) {
      const auto& [a, b] = *frontier.begin();
      throw InternalInconsistency(
          "complement region frontier near edge {" + c.vertex_names()[a] +
          "," + c.vertex_names()[b] + "} is not covered by wall circuits");
    }

    if (frag.vertex_count() == 4) {
      if (caps.size() != 1 || caps[0].size() != 3)
        throw InternalInconsistency("four-vertex complement region " +
                                    detail::joined(names) +
                                    " is not a star over a 3-circuit");
      d.pieces.push_back(
          detail::ideal_star_piece(frag, caps[0], provenance[0]));
      continue;
    }
    Piece p;
    try {
      p.capped = cap(frag, caps, provenance);
    } catch (const std::runtime_error& e) {
      throw InternalInconsistency(
          std::string("capping a complement region failed: ") + e.what());
    }
    AndreevReport rep = check(*p.capped);
    if (!rep.passed())
      throw InternalInconsistency("complement piece " + detail::joined(names) +
                                      " fails the andreev conditions",
                                  rep);
    p.kind = PieceKind::hyperbolic_capped;
    p.geometry = Geometry::H3;
    p.support = std::move(names);
    p.andreev = std::move(rep);
    d.pieces.push_back(std::move(p));
  }

  d.walls.assign(wall_set.begin(), wall_set.end());
  detail::finalize(d);
  return d;
}

// ---------------------------------------------------------------------------
// Acyclicity certificate

inline constexpr const char* kAcyclicityConclusion = "h_i(L) = 0 for all i";

enum class CertificateNodeKind { piece_leaf, wall_leaf, join };

struct CertificateNode {
  CertificateNodeKind kind = CertificateNodeKind::piece_leaf;
  int piece = -1;  // piece_leaf; wall_leaf when a collar piece is the wall
  std::optional<BettiReason> reason;          // leaves
  std::vector<std::string> axioms;            // cited identifiers
  std::vector<std::string> wall;              // wall_leaf and join
  int left = -1, right = -1, wall_node = -1;  // join children
  std::string conclusion;
};

struct Certificate {
  std::vector<CertificateNode> nodes;  // children precede parents
  int root = -1;
  std::string conclusion;
};

inline std::vector<std::string> axioms_for(BettiReason r) {
  switch (r) {
    case BettiReason::euclidean_factor:
      return {"cheeger-gromov"};
    case BettiReason::kunneth_suspension:
      return {"kunneth", "cheeger-gromov"};
    case BettiReason::hyperbolic_dodziuk:
      return {"dodziuk", "andreev-realization"};
  }
  throw std::logic_error("bad reason tag");
}

// Binary Mayer-Vietoris tree: solid pieces are leaves, each selected wall
// joins the two pieces whose supports contain it, and collar pieces ride
// along as the wall leaf of their circuit's join.
inline Certificate acyclicity_certificate(const LabeledComplex& c,
                                          const Decomposition& d) {
  (void)c;
  Certificate cert;
  auto add = [&](CertificateNode n) {
    cert.nodes.push_back(std::move(n));
    return static_cast<int>(cert.nodes.size()) - 1;
  };
  auto piece_leaf = [&](int i) {
    const Piece& p = d.pieces[i];
    CertificateNode n;
    n.kind = CertificateNodeKind::piece_leaf;
    n.piece = i;
    n.reason = piece_betti(p.geometry).reason;
    n.axioms = axioms_for(*n.reason);
    n.conclusion = "the piece on " + detail::joined(p.support) + " is l2-acyclic";
    return add(std::move(n));
  };

  std::vector<int> solid;
  std::map<std::vector<std::string>, int> collars;  // support -> piece index
  for (int i = 0; i < static_cast<int>(d.pieces.size()); ++i) {
    if (d.pieces[i].kind == PieceKind::euclidean_wall)
      collars[d.pieces[i].support] = i;
    else
      solid.push_back(i);
  }
  if (solid.empty())
    throw std::runtime_error("certificate assembly: no solid pieces");

  std::map<int, int> up, comp_node;
  for (int i : solid) up[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (int i : solid) comp_node[i] = piece_leaf(i);

  std::set<std::vector<std::string>> used_collars;
  for (const auto& w : d.walls) {
    std::vector<int> inc;
    const auto wv = detail::sorted_unique(w);
    for (int i : solid) {
      const auto& sup = d.pieces[i].support;
      if (std::includes(sup.begin(), sup.end(), wv.begin(), wv.end()))
        inc.push_back(i);
    }
    if (inc.size() != 2) continue;
    int ra = find(inc[0]), rb = find(inc[1]);
    if (ra == rb) continue;
    CertificateNode wn;
    wn.kind = CertificateNodeKind::wall_leaf;
    wn.wall = w;
    wn.reason = BettiReason::euclidean_factor;
    wn.axioms = {"cheeger-gromov"};
    wn.conclusion = "the Euclidean wall " + detail::joined(w) + " is l2-acyclic";
    auto it = collars.find(wv);
    if (it != collars.end() && !used_collars.count(wv)) {
      wn.piece = it->second;
      used_collars.insert(wv);
    }
    const int wid = add(std::move(wn));
    CertificateNode jn;
    jn.kind = CertificateNodeKind::join;
    jn.left = comp_node[ra];
    jn.right = comp_node[rb];
    jn.wall_node = wid;
    jn.wall = w;
    jn.axioms = {"mayer-vietoris"};
    jn.conclusion =
        "the union across " + detail::joined(w) + " is l2-acyclic by Mayer-Vietoris";
    const int jid = add(std::move(jn));
    up[ra] = rb;
    comp_node[find(rb)] = jid;
  }

  const int r0 = find(solid[0]);
  for (int i : solid)
    if (find(i) != r0)
      throw std::runtime_error(
          "certificate assembly: the cut graph is disconnected");
  if (used_collars.size() != collars.size())
    throw std::runtime_error(
        "certificate assembly: a Euclidean wall piece is unattached");
  cert.root = comp_node[r0];
  cert.conclusion = kAcyclicityConclusion;
  return cert;
}

// Structural validation: a single tree rooted at `root`, every piece
// appearing exactly once, every cited wall a Euclidean feature of the
// complex, and every leaf reason matching its piece's geometry.
inline std::vector<std::string> check_certificate(const LabeledComplex& c,
                                                  const Decomposition& d,
                                                  const Certificate& cert) {
  std::vector<std::string> bad;
  const int n = static_cast<int>(cert.nodes.size());
  if (n == 0 || cert.root < 0 || cert.root >= n) {
    bad.push_back("certificate has no valid root");
    return bad;
  }

  auto euclidean_wall_in = [&](const std::vector<std::string>& w) {
    if (std::find(d.walls.begin(), d.walls.end(), w) == d.walls.end())
      return false;
    const int k = static_cast<int>(w.size());
    std::vector<int> idx;
    for (const auto& v : w) {
      if (!c.has_vertex(v)) return false;
      idx.push_back(c.index_of(v));
    }
    if (k == 3) {
      Rational sum = 0;
      for (int i = 0; i < 3; ++i) {
        const int m = c.label(idx[i], idx[(i + 1) % 3]);
        if (m == 0) return false;
        sum += Rational(1, m);
      }
      return sum == 1;
    }
    if (k == 4) {
      for (int i = 0; i < 4; ++i)
        if (c.label(idx[i], idx[(i + 1) % 4]) != 2) return false;
      return !c.adjacent(idx[0], idx[2]) && !c.adjacent(idx[1], idx[3]);
    }
    return false;
  };

  std::vector<int> uses(n, 0);
  std::map<int, int> piece_seen;
  for (int i = 0; i < n; ++i) {
    const auto& nd = cert.nodes[i];
    switch (nd.kind) {
      case CertificateNodeKind::piece_leaf: {
        if (nd.piece < 0 || nd.piece >= static_cast<int>(d.pieces.size())) {
          bad.push_back("piece leaf with out-of-range index");
          break;
        }
        ++piece_seen[nd.piece];
        const auto expect = piece_betti(d.pieces[nd.piece].geometry).reason;
        if (!nd.reason || *nd.reason != expect)
          bad.push_back("leaf reason does not match the geometry of piece " +
                        std::to_string(nd.piece));
        else if (nd.axioms != axioms_for(expect))
          bad.push_back("leaf axioms do not match the reason for piece " +
                        std::to_string(nd.piece));
        break;
      }
      case CertificateNodeKind::wall_leaf: {
        if (!euclidean_wall_in(nd.wall))
          bad.push_back("wall leaf is not a Euclidean wall: " +
                        detail::joined(nd.wall));
        if (!nd.reason || *nd.reason != BettiReason::euclidean_factor)
          bad.push_back("wall leaf must cite the Euclidean factor");
        if (nd.piece >= 0) {
          if (nd.piece >= static_cast<int>(d.pieces.size()) ||
              d.pieces[nd.piece].kind != PieceKind::euclidean_wall)
            bad.push_back("wall leaf carries a piece that is not a wall");
          else
            ++piece_seen[nd.piece];
        }
        break;
      }
      case CertificateNodeKind::join: {
        for (int child : {nd.left, nd.right, nd.wall_node}) {
          if (child < 0 || child >= i) {
            bad.push_back("join node with invalid child index");
            continue;
          }
          ++uses[child];
        }
        if (nd.left >= 0 && nd.left < i &&
            cert.nodes[nd.left].kind == CertificateNodeKind::wall_leaf)
          bad.push_back("join child must be a piece or another join");
        if (nd.right >= 0 && nd.right < i &&
            cert.nodes[nd.right].kind == CertificateNodeKind::wall_leaf)
          bad.push_back("join child must be a piece or another join");
        if (nd.wall_node >= 0 && nd.wall_node < i &&
            cert.nodes[nd.wall_node].kind != CertificateNodeKind::wall_leaf)
          bad.push_back("join intersection must be a wall leaf");
        if (!euclidean_wall_in(nd.wall))
          bad.push_back("join wall is not a Euclidean wall: " +
                        detail::joined(nd.wall));
        break;
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    if (i == cert.root && uses[i] != 0)
      bad.push_back("root appears as a child");
    if (i != cert.root && uses[i] != 1)
      bad.push_back("node " + std::to_string(i) + " is used " +
                    std::to_string(uses[i]) + " times, not once");
  }

  for (int i = 0; i < static_cast<int>(d.pieces.size()); ++i)
    if (piece_seen[i] != 1)
      bad.push_back("piece " + std::to_string(i) + " appears " +
                    std::to_string(piece_seen[i]) + " times, not once");

  if (cert.conclusion != kAcyclicityConclusion)
    bad.push_back("certificate does not conclude acyclicity");
  return bad;
}

}  // namespace cxorb
