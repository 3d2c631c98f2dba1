#pragma once

#include "cxorb/nerve.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

// Random all-2 flag triangulations of the sphere.  Grown from the octahedron
// by two moves that preserve the metric-flag sphere property:
//
//   subdivide xy: replace the edge by a new valence-4 vertex joined to x, y
//     and the two triangle apexes over xy (legal when the apexes are not
//     adjacent, which would close an empty triangle);
//   flip xy -> ab: swap the diagonal of the quadrilateral formed by the two
//     triangles over xy (legal when a,b are not adjacent, x,y keep valence
//     at least 4, and x,y are the only common neighbors of a,b).
//
// Every accepted move is re-checked with the full validator and rolled back
// on failure, so the result is a valid sphere nerve by construction.

namespace support {

class SphereEditor {
 public:
  // Seeds: the octahedron (barrel == 0) always carries chordless squares
  // (any valence-4 vertex has one as its link).  A barrel is two poles over
  // antiprismatically joined n-rings: n = 5 is the icosahedron and larger n
  // are the duals of the right-angled Lobell polyhedra, all flag and
  // square-free, so both Andreev outcomes stay represented.
  explicit SphereEditor(int barrel = 0) {
    if (barrel == 0) {
      for (int i = 0; i < 6; ++i) names_.push_back("v" + std::to_string(i));
      // octahedron: poles 0,1 over the square 2,3,4,5
      for (int i = 2; i <= 5; ++i) {
        edges_.insert(key(0, i));
        edges_.insert(key(1, i));
      }
      edges_.insert(key(2, 3));
      edges_.insert(key(3, 4));
      edges_.insert(key(4, 5));
      edges_.insert(key(5, 2));
      return;
    }
    if (barrel < 5) throw std::runtime_error("barrel rings need 5+ vertices");
    const int n = barrel;
    for (int i = 0; i < 2 * n + 2; ++i)
      names_.push_back("v" + std::to_string(i));
    // poles 0,1; upper ring 2..n+1; lower ring n+2..2n+1
    auto up = [&](int i) { return 2 + ((i % n) + n) % n; };
    auto lo = [&](int i) { return 2 + n + ((i % n) + n) % n; };
    for (int i = 0; i < n; ++i) {
      edges_.insert(key(0, up(i)));
      edges_.insert(key(1, lo(i)));
      edges_.insert(key(up(i), up(i + 1)));
      edges_.insert(key(lo(i), lo(i + 1)));
      edges_.insert(key(up(i), lo(i)));
      edges_.insert(key(up(i), lo(i + 1)));
    }
  }

  int vertex_count() const { return static_cast<int>(names_.size()); }

  cxorb::LabeledComplex complex() const {
    std::vector<std::tuple<std::string, std::string, int>> es;
    for (const auto& [a, b] : edges_) es.emplace_back(names_[a], names_[b], 2);
    return cxorb::LabeledComplex::from_data("random-sphere", names_, es);
  }

  bool adjacent(int a, int b) const { return edges_.count(key(a, b)) > 0; }

  std::vector<int> common_neighbors(int a, int b) const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v)
      if (v != a && v != b && adjacent(v, a) && adjacent(v, b))
        out.push_back(v);
    return out;
  }

  int valence(int v) const {
    int d = 0;
    for (int u = 0; u < vertex_count(); ++u)
      if (u != v && adjacent(u, v)) ++d;
    return d;
  }

  std::vector<std::pair<int, int>> edge_list() const {
    return {edges_.begin(), edges_.end()};
  }

  // split edge xy with a new valence-4 vertex; false when illegal
  bool subdivide(int x, int y) {
    if (!adjacent(x, y)) return false;
    const auto apexes = common_neighbors(x, y);
    if (apexes.size() != 2) return false;
    const int a = apexes[0], b = apexes[1];
    if (adjacent(a, b)) return false;
    const int w = vertex_count();
    names_.push_back("v" + std::to_string(w));
    edges_.erase(key(x, y));
    edges_.insert(key(w, x));
    edges_.insert(key(w, y));
    edges_.insert(key(w, a));
    edges_.insert(key(w, b));
    if (complex().validate_sphere().pass()) return true;
    edges_.erase(key(w, x));
    edges_.erase(key(w, y));
    edges_.erase(key(w, a));
    edges_.erase(key(w, b));
    edges_.insert(key(x, y));
    names_.pop_back();
    return false;
  }

  // replace diagonal xy by ab in the surrounding quadrilateral
  bool flip(int x, int y) {
    if (!adjacent(x, y)) return false;
    const auto apexes = common_neighbors(x, y);
    if (apexes.size() != 2) return false;
    const int a = apexes[0], b = apexes[1];
    if (adjacent(a, b)) return false;
    if (valence(x) < 5 || valence(y) < 5) return false;
    if (common_neighbors(a, b).size() != 2) return false;  // exactly {x, y}
    edges_.erase(key(x, y));
    edges_.insert(key(a, b));
    if (complex().validate_sphere().pass()) return true;
    edges_.erase(key(a, b));
    edges_.insert(key(x, y));
    return false;
  }

 private:
  static std::pair<int, int> key(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
  }

  std::vector<std::string> names_;
  std::set<std::pair<int, int>> edges_;
};

inline cxorb::LabeledComplex random_all2_sphere(std::mt19937& rng,
                                                int max_vertices) {
  int barrel = 0;
  if (max_vertices >= 12 && (rng() & 1) != 0) {
    std::uniform_int_distribution<int> rings(5, std::max(5, (max_vertices - 2) / 2));
    barrel = rings(rng);
  }
  SphereEditor ed(barrel);
  const int seed_size = ed.vertex_count();
  std::uniform_int_distribution<int> size_dist(seed_size, max_vertices);
  const int target = size_dist(rng);

  auto random_edge = [&]() {
    auto es = ed.edge_list();
    std::uniform_int_distribution<size_t> pick(0, es.size() - 1);
    return es[pick(rng)];
  };

  int stall = 0;
  while (ed.vertex_count() < target && stall < 200) {
    auto [x, y] = random_edge();
    if (!ed.subdivide(x, y)) {
      ++stall;
      continue;
    }
    stall = 0;
    // a few flips between growth steps keep the shapes varied
    for (int k = 0; k < 3; ++k) {
      auto [p, q] = random_edge();
      ed.flip(p, q);
    }
  }
  // mixing flips would put a square into a pristine barrel (they drop two
  // valences to 4), and pristine barrels are the only square-free samples,
  // so only grown complexes get mixed
  if (barrel == 0 || ed.vertex_count() > seed_size)
    for (int k = 0; k < 2 * target; ++k) {
      auto [p, q] = random_edge();
      ed.flip(p, q);
    }
  return ed.complex();
}

}  // namespace support
