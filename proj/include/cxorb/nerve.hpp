#pragma once

#include "cxorb/cyclotomic.hpp"
#include "cxorb/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// The central input object: a finite labeled graph standing for the
// 1-skeleton of a metric-flag triangulation of S^2.  The 2-skeleton is never
// input; a 3-clique spans a triangle exactly when its labels (p,q,r) satisfy
// 1/p + 1/q + 1/r > 1, so the complex is determined by the labeled graph.
// Absent edge = label infinity.

namespace cxorb {

struct SurfaceReport {
  bool connected = false;
  bool edges_two_faces = false;
  bool links_single_cycle = false;
  bool euler_ok = false;
  bool nerve_dimension_ok = false;  // no spherical 4-clique (see below)
  long long euler = 0;
  std::vector<std::string> diagnostics;
  // vertex -> cyclically ordered neighbors; filled when links pass
  std::map<std::string, std::vector<std::string>> links;

  bool pass() const {
    return connected && edges_two_faces && links_single_cycle && euler_ok &&
           nerve_dimension_ok;
  }
};

class LabeledComplex {
 public:
  LabeledComplex() = default;

  // Programmatic construction; edges as (vertex, vertex, label) triples.
  static LabeledComplex from_data(
      std::string name, std::vector<std::string> vertices,
      const std::vector<std::tuple<std::string, std::string, int>>& edges) {
    LabeledComplex c;
    c.name_ = std::move(name);
    for (const auto& v : vertices) c.add_vertex(v);
    for (const auto& [a, b, m] : edges) c.add_edge(a, b, m);
    c.finish();
    return c;
  }

  static LabeledComplex parse(const std::string& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") ||
        !doc.contains("edges") || !doc["vertices"].is_array() ||
        !doc["edges"].is_array())
      throw std::runtime_error(
          "malformed document: expected object with vertices and edges");
    LabeledComplex c;
    if (doc.contains("name")) {
      if (!doc["name"].is_string())
        throw std::runtime_error("malformed document: name must be a string");
      c.name_ = doc["name"].get<std::string>();
    }
    for (const auto& v : doc["vertices"]) {
      if (!v.is_string())
        throw std::runtime_error(
            "malformed document: vertex ids must be strings");
      c.add_vertex(v.get<std::string>());
    }
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() ||
          !e[1].is_string() || !e[2].is_number_integer())
        throw std::runtime_error(
            "malformed document: edges must be [vertex, vertex, label]");
      c.add_edge(e[0].get<std::string>(), e[1].get<std::string>(),
                 e[2].get<long long>());
    }
    c.finish();
    return c;
  }

  // Canonical document: vertices sorted, edges sorted lexicographically.
  // parse(serialize(c)) round-trips bit-exactly.
  std::string serialize() const {
    nlohmann::json doc;
    doc["name"] = name_;
    std::vector<std::string> vs = vertex_names_;
    std::sort(vs.begin(), vs.end());
    doc["vertices"] = vs;
    std::vector<std::array<std::string, 2>> keys;
    nlohmann::json es = nlohmann::json::array();
    std::vector<std::tuple<std::string, std::string, int>> rows;
    for (const auto& [e, m] : edges_) {
      std::string a = vertex_names_[e.first], b = vertex_names_[e.second];
      if (b < a) std::swap(a, b);
      rows.emplace_back(a, b, m);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [a, b, m] : rows) es.push_back({a, b, m});
    doc["edges"] = es;
    return doc.dump(2) + "\n";
  }

  const std::string& name() const { return name_; }
  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  bool has_vertex(const std::string& v) const { return index_of_.count(v); }

  int index_of(const std::string& v) const {
    auto it = index_of_.find(v);
    if (it == index_of_.end())
      throw std::runtime_error("unknown vertex id: " + v);
    return it->second;
  }

  const std::map<std::pair<int, int>, int>& edges() const { return edges_; }

  // 0 when the pair is not an edge (label infinity).
  int label(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = edges_.find({a, b});
    return it == edges_.end() ? 0 : it->second;
  }
  bool adjacent(int a, int b) const { return label(a, b) != 0; }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  const std::vector<std::array<int, 3>>& triangles() const {
    return triangles_;
  }

  // The labels (p,q,r) span a triangle iff 1/p + 1/q + 1/r > 1, exactly.
  static bool spherical_triangle(int p, int q, int r) {
    // q r + p r + p q > p q r in integers
    long long pp = p, qq = q, rr = r;
    return qq * rr + pp * rr + pp * qq > pp * qq * rr;
  }

  SurfaceReport validate_sphere() const {
    SurfaceReport rep;
    const int n = vertex_count();
    rep.euler = static_cast<long long>(n) -
                static_cast<long long>(edges_.size()) +
                static_cast<long long>(triangles_.size());
    rep.euler_ok = (rep.euler == 2);
    if (!rep.euler_ok)
      rep.diagnostics.push_back("Euler characteristic " +
                                std::to_string(rep.euler) + " != 2");

    // connectivity over the edge graph
    if (n > 0) {
      std::vector<int> seen(n, 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int count = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj_[v])
          if (!seen[u]) {
            seen[u] = 1;
            ++count;
            stack.push_back(u);
          }
      }
      rep.connected = (count == n);
    }
    if (!rep.connected) rep.diagnostics.push_back("complex is not connected");

    // every edge in exactly two triangles
    std::map<std::pair<int, int>, int> face_count;
    for (const auto& [e, m] : edges_) face_count[e] = 0;
    for (const auto& t : triangles_)
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) ++face_count[{t[i], t[j]}];
    rep.edges_two_faces = true;
    for (const auto& [e, cnt] : face_count)
      if (cnt != 2) {
        rep.edges_two_faces = false;
        rep.diagnostics.push_back(
            "edge {" + vertex_names_[e.first] + "," + vertex_names_[e.second] +
            "} lies in " + std::to_string(cnt) + " triangles");
      }

    // each vertex link is one cycle of length >= 3 through all neighbors
    rep.links_single_cycle = true;
    for (int v = 0; v < n; ++v) {
      std::vector<std::string> cycle;
      if (!link_cycle_of(v, cycle)) {
        rep.links_single_cycle = false;
        rep.diagnostics.push_back("link of " + vertex_names_[v] +
                                  " is not a single cycle");
      } else {
        rep.links[vertex_names_[v]] = cycle;
      }
    }

    // A spherical 4-clique would make the true nerve 3-dimensional.  Such a
    // clique forces its four triangles into the complex, which saturates the
    // two-triangles-per-edge budget at every clique edge; with connectivity
    // this pins the whole complex to the boundary of a 3-simplex.  So it
    // suffices to test 4-vertex inputs: they are valid only when the full
    // generator set is NOT spherical (Gram determinant <= 0).
    rep.nerve_dimension_ok = true;
    if (n == 4 && rep.connected && rep.edges_two_faces &&
        rep.links_single_cycle && rep.euler_ok) {
      std::vector<int> all{0, 1, 2, 3};
      if (gram_det_sign(all) > 0) {
        rep.nerve_dimension_ok = false;
        rep.diagnostics.push_back(
            "vertex set generates a finite group: the nerve is a 3-simplex, "
            "not a 2-sphere");
      }
    }
    return rep;
  }

  // Induced complex on the given vertices (labels kept, triangles re-derived).
  LabeledComplex full_subcomplex(const std::vector<std::string>& vs) const {
    LabeledComplex c;
    c.name_ = name_ + "|sub";
    for (const auto& v : vs) {
      index_of(v);  // unknown vertex throws
      c.add_vertex(v);
    }
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j) {
        int m = label(index_of(vs[i]), index_of(vs[j]));
        if (m != 0) c.add_edge(vs[i], vs[j], m);
      }
    c.finish();
    return c;
  }

  // (link, star) at s.  The link is the neighbor cycle with induced labels --
  // only edges that span a triangle with s, so chords are excluded.  The star
  // adds s and its cone edges.
  std::pair<LabeledComplex, LabeledComplex> link_and_star(
      const std::string& s) const {
    const int v = index_of(s);
    std::set<std::pair<int, int>> link_edges;
    for (const auto& t : triangles_)
      if (t[0] == v || t[1] == v || t[2] == v) {
        std::vector<int> rest;
        for (int x : t)
          if (x != v) rest.push_back(x);
        link_edges.insert({std::min(rest[0], rest[1]),
                           std::max(rest[0], rest[1])});
      }
    LabeledComplex link, star;
    link.name_ = name_ + "|link(" + s + ")";
    star.name_ = name_ + "|star(" + s + ")";
    for (int u : adj_[v]) {
      link.add_vertex(vertex_names_[u]);
      star.add_vertex(vertex_names_[u]);
    }
    star.add_vertex(s);
    for (const auto& [a, b] : link_edges) {
      link.add_edge(vertex_names_[a], vertex_names_[b], label(a, b));
      star.add_edge(vertex_names_[a], vertex_names_[b], label(a, b));
    }
    for (int u : adj_[v]) star.add_edge(s, vertex_names_[u], label(v, u));
    link.finish();
    star.finish();
    return {link, star};
  }

  // Cyclically ordered neighbors of v; throws when the link is not one cycle.
  std::vector<int> link_cycle(int v) const {
    std::vector<std::string> names;
    if (!link_cycle_of(v, names))
      throw std::runtime_error("link of " + vertex_names_[v] +
                               " is not a single cycle");
    std::vector<int> cycle;
    for (const auto& x : names) cycle.push_back(index_of(x));
    return cycle;
  }

  // Canonical adjacency encoding: row i lists label(pi_i, pi_j) for j < i
  // (0 = no edge) under a canonical vertex order pi.  The order comes from
  // color refinement with individualization: refine vertex colors by the
  // multiset of (edge label, neighbor color) until stable, branch on each
  // member of the first ambiguous class, and keep the least encoding over
  // the discrete leaves.  Class ids are signature ranks, so the leaf set
  // depends only on the isomorphism class: equal encodings iff isomorphic.
  // Branching is per color class, which keeps highly symmetric all-2
  // complexes tractable where permutation backtracking blows up.
  std::vector<int> canonical_encoding() const {
    const int n = vertex_count();
    if (n == 0) return {};
    std::vector<std::vector<int>> lab(n, std::vector<int>(n, 0));
    for (const auto& [e, m] : edges_) {
      lab[e.first][e.second] = m;
      lab[e.second][e.first] = m;
    }

    auto refine = [&](std::vector<int> col) {
      for (;;) {
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
          std::vector<std::pair<int, int>> nb;
          for (int u = 0; u < n; ++u)
            if (lab[v][u]) nb.push_back({lab[v][u], col[u]});
          std::sort(nb.begin(), nb.end());
          sig[v].push_back(col[v]);
          for (const auto& [m, cu] : nb) {
            sig[v].push_back(m);
            sig[v].push_back(cu);
          }
        }
        std::vector<std::vector<int>> keys = sig;
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v)
          next[v] = static_cast<int>(
              std::lower_bound(keys.begin(), keys.end(), sig[v]) -
              keys.begin());
        if (next == col) return col;
        col = std::move(next);
      }
    };

    std::vector<int> best;
    bool have_best = false;
    long long budget = 1 << 20;

    auto rec = [&](auto&& self, std::vector<int> col) -> void {
      if (--budget < 0)
        throw std::runtime_error(
            "canonical form search exceeded its budget");
      col = refine(std::move(col));
      std::vector<int> count(n, 0);
      for (int v = 0; v < n; ++v) ++count[col[v]];
      int cell = -1;
      for (int c = 0; c < n && cell < 0; ++c)
        if (count[c] > 1) cell = c;
      if (cell < 0) {
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[col[v]] = v;
        std::vector<int> enc;
        enc.reserve(n * (n - 1) / 2);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < i; ++j) enc.push_back(lab[order[i]][order[j]]);
        if (!have_best || enc < best) {
          best = std::move(enc);
          have_best = true;
        }
        return;
      }
      // split the class into the individualized vertex and the rest
      for (int v = 0; v < n; ++v) {
        if (col[v] != cell) continue;
        std::vector<int> child(col);
        for (int u = 0; u < n; ++u)
          if (child[u] >= cell && u != v) ++child[u];
        child[v] = cell;
        self(self, std::move(child));
      }
    };
    rec(rec, std::vector<int>(n, 0));
    return best;
  }

  uint64_t digest() const {
    uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    auto mix = [&h](uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
      }
    };
    mix(static_cast<uint64_t>(vertex_count()));
    for (int x : canonical_encoding()) mix(static_cast<uint64_t>(x));
    return h;
  }

  bool is_isomorphic_to(const LabeledComplex& o) const {
    return vertex_count() == o.vertex_count() &&
           canonical_encoding() == o.canonical_encoding();
  }

  // Certified sign of det(-cos(pi/m_ij)) over the given vertices; diagonal 1.
  // Pairs with no edge are rejected (infinite label has no Gram entry).
  int gram_det_sign(const std::vector<int>& vs) const {
    const int k = static_cast<int>(vs.size());
    std::vector<std::vector<CycloNumber>> g(k, std::vector<CycloNumber>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) {
          g[i][j] = CycloNumber::rational(1);
        } else {
          int m = label(vs[i], vs[j]);
          if (m == 0)
            throw std::runtime_error(
                "gram matrix undefined: infinite label inside subset");
          g[i][j] = -CycloNumber::cos_pi_over(m);
        }
      }
    return det(g).sign();
  }

  static CycloNumber det(const std::vector<std::vector<CycloNumber>>& a) {
    const int k = static_cast<int>(a.size());
    if (k == 0) return CycloNumber::rational(1);
    if (k == 1) return a[0][0];
    CycloNumber sum;
    for (int i = 0; i < k; ++i) {
      std::vector<std::vector<CycloNumber>> minor;
      for (int r = 0; r < k; ++r) {
        if (r == i) continue;
        std::vector<CycloNumber> row;
        for (int c = 1; c < k; ++c) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      CycloNumber term = a[i][0] * det(minor);
      sum = (i % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
  }

 private:
  void add_vertex(const std::string& v) {
    if (index_of_.count(v))
      throw std::runtime_error("duplicate vertex id: " + v);
    index_of_[v] = static_cast<int>(vertex_names_.size());
    vertex_names_.push_back(v);
  }

  void add_edge(const std::string& a, const std::string& b, long long m) {
    if (a == b) throw std::runtime_error("self-loop at vertex: " + a);
    if (m < 2 || m > 1000000)
      throw std::runtime_error("label out of range: " + std::to_string(m));
    int i = index_of(a), j = index_of(b);
    if (i > j) std::swap(i, j);
    if (edges_.count({i, j}))
      throw std::runtime_error("duplicate edge: {" + a + "," + b + "}");
    edges_[{i, j}] = static_cast<int>(m);
  }

  void finish() {
    const int n = vertex_count();
    adj_.assign(n, {});
    for (const auto& [e, m] : edges_) {
      adj_[e.first].push_back(e.second);
      adj_[e.second].push_back(e.first);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    triangles_.clear();
    for (const auto& [e, m] : edges_) {
      const auto [i, j] = e;
      for (int k : adj_[i]) {
        if (k <= j) continue;  // each triple once, i < j < k
        int mj = label(j, k);
        if (mj == 0) continue;
        if (spherical_triangle(m, mj, label(i, k)))
          triangles_.push_back({i, j, k});
      }
    }
    std::sort(triangles_.begin(), triangles_.end());
  }

  bool link_cycle_of(int v, std::vector<std::string>& out) const {
    std::map<int, std::vector<int>> link;  // neighbor -> link-adjacent nbrs
    for (int u : adj_[v]) link[u];
    for (const auto& t : triangles_) {
      if (t[0] != v && t[1] != v && t[2] != v) continue;
      std::vector<int> rest;
      for (int x : t)
        if (x != v) rest.push_back(x);
      link[rest[0]].push_back(rest[1]);
      link[rest[1]].push_back(rest[0]);
    }
    if (link.size() < 3) return false;
    for (const auto& [u, nb] : link)
      if (nb.size() != 2) return false;
    // walk the cycle; must close after visiting every neighbor
    const int start = link.begin()->first;
    int prev = -1, cur = start;
    std::vector<int> cycle;
    do {
      cycle.push_back(cur);
      int nxt = (link[cur][0] == prev) ? link[cur][1] : link[cur][0];
      prev = cur;
      cur = nxt;
    } while (cur != start && cycle.size() <= link.size());
    if (cur != start || cycle.size() != link.size()) return false;
    out.clear();
    for (int x : cycle) out.push_back(vertex_names_[x]);
    return true;
  }

  std::string name_;
  std::vector<std::string> vertex_names_;   // document order
  std::map<std::string, int> index_of_;
  std::map<std::pair<int, int>, int> edges_;  // (i<j) -> label
  std::vector<std::vector<int>> adj_;
  std::vector<std::array<int, 3>> triangles_;  // sorted triples, sorted list
};

}  // namespace cxorb
