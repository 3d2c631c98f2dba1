// Regenerates the corpus: one canonical nerve document per complex plus
// manifest.json.  The manifest expectations (validity, chi_orb, piece
// summaries, wall counts) are literal constants derived by hand from the
// classification, not computed by the pipeline, so the acceptance suite can
// compare pipeline output against an independent record.
//
// Usage: gen_corpus [output-dir]   (default: corpus)

#include "cxorb/nerve.hpp"
#include "support/complexes.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using cxorb::LabeledComplex;
using support::Triples;

LabeledComplex with_name(const LabeledComplex& c, const std::string& name) {
  Triples e;
  for (const auto& [pr, m] : c.edges())
    e.emplace_back(c.vertex_names()[pr.first], c.vertex_names()[pr.second], m);
  return LabeledComplex::from_data(name, c.vertex_names(), e);
}

// Triangulated 4x4 grid torus: every vertex link is a hexagon, every edge
// borders two triangles, and chi = 16 - 48 + 32 = 0.  All labels 2; with a
// 4x4 (or larger) grid no diagonal closes up into a non-facial clique, so
// only the Euler count fails validation.
LabeledComplex torus_flag() {
  std::vector<std::string> vs;
  auto v = [](int i, int j) {
    return "t" + std::to_string(((i % 4) + 4) % 4) +
           std::to_string(((j % 4) + 4) % 4);
  };
  Triples e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      vs.push_back(v(i, j));
      e.emplace_back(v(i, j), v(i + 1, j), 2);
      e.emplace_back(v(i, j), v(i, j + 1), 2);
      e.emplace_back(v(i, j), v(i + 1, j + 1), 2);
    }
  return LabeledComplex::from_data("torus-flag", vs, e);
}

LabeledComplex dihedral(int m) {
  return LabeledComplex::from_data("dihedral-" + std::to_string(m),
                                   {"a", "b"}, {{"a", "b", m}});
}

struct ExpectedPiece {
  std::string kind;
  std::string geometry;
  int support = 0;
  int caps = 0;
};

struct Entry {
  std::string file;  // basename without extension; also the complex name
  LabeledComplex complex;
  bool valid_sphere = true;
  std::string diagnostic;  // expected substring when invalid
  std::string role;        // set for utility inputs that are no nerves
  std::vector<ExpectedPiece> pieces;
  int walls = 0;
};

nlohmann::json manifest_row(const Entry& e) {
  nlohmann::json row;
  row["file"] = e.file + ".json";
  row["name"] = e.file;
  row["valid_sphere"] = e.valid_sphere;
  if (!e.valid_sphere) {
    if (!e.diagnostic.empty()) row["diagnostic"] = e.diagnostic;
    if (!e.role.empty()) row["role"] = e.role;
    return row;
  }
  row["chi_orb"] = "0";
  auto pieces = e.pieces;
  std::sort(pieces.begin(), pieces.end(),
            [](const ExpectedPiece& a, const ExpectedPiece& b) {
              return std::tie(a.kind, a.geometry, a.support, a.caps) <
                     std::tie(b.kind, b.geometry, b.support, b.caps);
            });
  row["pieces"] = nlohmann::json::array();
  for (const auto& p : pieces) {
    nlohmann::json pr;
    pr["kind"] = p.kind;
    pr["geometry"] = p.geometry;
    pr["support"] = p.support;
    pr["caps"] = p.caps;
    row["pieces"].push_back(std::move(pr));
  }
  row["walls"] = e.walls;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_dir = argc > 1 ? argv[1] : "corpus";
  std::vector<Entry> entries;

  const ExpectedPiece whole_e3_5{"whole_special", "E3", 5, 0};
  const ExpectedPiece whole_h2e_5{"whole_special", "H2xE", 5, 0};

  entries.push_back({"octahedron", support::octahedron(), true, "", "",
                     {{"whole_special", "E3", 6, 0}}, 0});
  entries.push_back({"icosahedron", support::icosahedron(), true, "", "",
                     {{"hyperbolic_capped", "H3", 12, 0}}, 0});

  // simplex boundaries: Euclidean (affine gram matrix) and hyperbolic
  entries.push_back({"simplex-a3t",
                     with_name(support::boundary_simplex({3, 2, 3, 3, 2, 3}),
                               "simplex-a3t"),
                     true, "", "", {{"whole_special", "E3", 4, 0}}, 0});
  entries.push_back({"simplex-c3t",
                     with_name(support::boundary_simplex({4, 2, 2, 3, 2, 4}),
                               "simplex-c3t"),
                     true, "", "", {{"whole_special", "E3", 4, 0}}, 0});
  entries.push_back({"simplex-534",
                     with_name(support::boundary_simplex({5, 2, 2, 3, 2, 4}),
                               "simplex-534"),
                     true, "", "", {{"whole_special", "H3", 4, 0}}, 0});

  // all suspension-of-3-gon nerves with equator labels up to 6 and
  // right-angled cone edges: Euclidean equators give E3, hyperbolic H2xE
  // (spherical equators span a triangle and are no spheres, hence skipped)
  for (int p = 2; p <= 6; ++p)
    for (int q = p; q <= 6; ++q)
      for (int r = q; r <= 6; ++r) {
        if (q * r + p * r + p * q > p * q * r) continue;  // spherical equator
        const bool euclidean = q * r + p * r + p * q == p * q * r;
        const std::string file = "susp-" + std::to_string(p) +
                                 std::to_string(q) + std::to_string(r) + "-ra";
        entries.push_back(
            {file,
             with_name(support::suspension_of_polygon({p, q, r}), file), true,
             "", "", {euclidean ? whole_e3_5 : whole_h2e_5}, 0});
      }

  // right-angled suspensions over larger polygon bases
  entries.push_back({"susp-2323-ra",
                     with_name(support::suspension_of_polygon({2, 3, 2, 3}),
                               "susp-2323-ra"),
                     true, "", "", {{"whole_special", "H2xE", 6, 0}}, 0});
  entries.push_back({"susp-22222-ra",
                     with_name(support::suspension_of_polygon({2, 2, 2, 2, 2}),
                               "susp-22222-ra"),
                     true, "", "", {{"whole_special", "H2xE", 7, 0}}, 0});

  // Euclidean equator with exactly one right-angled cone: cone + ideal star
  entries.push_back(
      {"susp-333-cone",
       with_name(support::suspension_of_polygon({3, 3, 3}, {}, {2, 2, 3}),
                 "susp-333-cone"),
       true, "", "",
       {{"ra_cone", "E2xI", 4, 0}, {"hyperbolic_star_ideal", "H3", 4, 1}},
       1});

  // empty Euclidean equator: collar wall between two ideal stars
  entries.push_back(
      {"susp-244-two-cones",
       with_name(
           support::suspension_of_polygon({2, 4, 4}, {2, 2, 3}, {2, 3, 2}),
           "susp-244-two-cones"),
       true, "", "",
       {{"hyperbolic_star_ideal", "H3", 4, 1},
        {"hyperbolic_star_ideal", "H3", 4, 1},
        {"euclidean_wall", "E2xI", 3, 0}},
       1});

  // hyperbolic equator, one non-right-angled cone: a single compact piece
  entries.push_back(
      {"susp-334-cone223",
       with_name(support::suspension_of_polygon({3, 3, 4}, {2, 2, 3}),
                 "susp-334-cone223"),
       true, "", "", {{"hyperbolic_capped", "H3", 5, 0}}, 0});

  entries.push_back({"collar-octahedron", support::collar_octahedron(), true,
                     "", "",
                     {{"hyperbolic_capped", "H3", 5, 1},
                      {"hyperbolic_capped", "H3", 5, 1},
                      {"euclidean_wall", "E2xI", 4, 0}},
                     1});
  entries.push_back({"crossed-octahedron", support::crossed_octahedron(), true,
                     "", "",
                     {{"ra_suspension", "H2xE", 5, 0},
                      {"ra_suspension", "H2xE", 5, 0}},
                     1});
  entries.push_back({"cone4-pyramid", support::cone4_pyramid(), true, "", "",
                     {{"hyperbolic_capped", "H3", 5, 1},
                      {"ra_cone", "E2xI", 5, 0}},
                     1});
  entries.push_back({"two-hemispheres", support::two_hemispheres(), true, "",
                     "",
                     {{"hyperbolic_capped", "H3", 6, 1},
                      {"hyperbolic_capped", "H3", 6, 1},
                      {"euclidean_wall", "E2xI", 3, 0}},
                     1});
  entries.push_back({"pinwheel-disk", support::pinwheel_disk_completion(),
                     true, "", "",
                     {{"hyperbolic_capped", "H3", 5, 1},
                      {"ra_suspension", "H2xE", 5, 0},
                      {"ra_suspension", "H2xE", 5, 0},
                      {"ra_suspension", "H2xE", 5, 0},
                      {"ra_suspension", "H2xE", 5, 0},
                      {"ra_suspension", "H2xE", 5, 0}},
                     5});

  // deliberate negatives and utility inputs
  entries.push_back({"torus-flag", torus_flag(), false,
                     "Euler characteristic 0 != 2", "", {}, 0});
  entries.push_back({"dihedral-3", dihedral(3), false, "",
                     "coxeter system input, not a sphere nerve", {}, 0});

  // sanity: the validity column must match the validator before we write
  for (auto& e : entries) {
    e.complex = with_name(e.complex, e.file);
    const auto rep = e.complex.validate_sphere();
    if (rep.pass() != e.valid_sphere) {
      std::cerr << e.file << ": validity expectation is wrong\n";
      return 1;
    }
    if (!e.diagnostic.empty()) {
      bool found = false;
      for (const auto& d : rep.diagnostics)
        if (d.find(e.diagnostic) != std::string::npos) found = true;
      if (!found) {
        std::cerr << e.file << ": expected diagnostic not produced\n";
        return 1;
      }
    }
  }

  std::filesystem::create_directories(out_dir);
  nlohmann::json manifest;
  manifest["complexes"] = nlohmann::json::array();
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.file < b.file; });
  for (const auto& e : entries) {
    const std::string path = out_dir + "/" + e.file + ".json";
    std::ofstream out(path, std::ios::binary);
    out << e.complex.serialize();
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    manifest["complexes"].push_back(manifest_row(e));
  }
  std::ofstream mout(out_dir + "/manifest.json", std::ios::binary);
  mout << manifest.dump(2) << "\n";
  if (!mout) {
    std::cerr << "cannot write manifest\n";
    return 1;
  }
  std::cout << entries.size() << " documents written to " << out_dir << "\n";
  return 0;
}
