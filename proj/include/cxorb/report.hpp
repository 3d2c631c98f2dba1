#pragma once

#include "cxorb/andreev.hpp"
#include "cxorb/davis.hpp"
#include "cxorb/decompose.hpp"
#include "cxorb/detect.hpp"
#include "cxorb/ell2.hpp"
#include "cxorb/nerve.hpp"
#include "cxorb/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

// Deterministic report assembly.  Everything that reaches a serialized report
// is sorted by vertex name or canonical cycle, never by internal index, so two
// documents describing the same complex in different vertex order produce
// byte-identical reports.  Timing is the one exception: it is kept out of the
// serialized form entirely and only ever surfaces on stderr.

namespace cxorb {

inline std::string digest_string(const LabeledComplex& c) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << c.digest();
  return os.str();
}

struct Report {
  std::string name;
  std::string digest;
  SurfaceReport validation;
  Rational chi = 0;
  // the pipeline stages below only run when validation passes
  std::optional<FeatureSet> features;
  std::optional<Decomposition> decomposition;
  std::optional<Certificate> certificate;
  double elapsed_ms = 0.0;  // wall clock; never serialized
};

// Full pipeline on one complex.  Throws InternalInconsistency (or plain
// runtime errors) if a validated input defeats the decomposition; callers
// translate that into a nonzero exit.
inline Report analyze(const LabeledComplex& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.name = c.name();
  r.digest = digest_string(c);
  r.validation = c.validate_sphere();
  r.chi = chi_orb(c);
  if (r.validation.pass()) {
    r.features = detect_features(c);
    r.decomposition = decompose(c);
    r.certificate = acyclicity_certificate(c, *r.decomposition);
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return r;
}

inline nlohmann::json validation_json(const SurfaceReport& rep) {
  nlohmann::json out;
  out["connected"] = rep.connected;
  out["edges_two_faces"] = rep.edges_two_faces;
  out["links_single_cycle"] = rep.links_single_cycle;
  out["euler"] = rep.euler;
  out["euler_ok"] = rep.euler_ok;
  out["nerve_dimension_ok"] = rep.nerve_dimension_ok;
  out["diagnostics"] = rep.diagnostics;
  out["pass"] = rep.pass();
  return out;
}

inline nlohmann::json features_json(const FeatureSet& f) {
  nlohmann::json out;

  auto ev = f.euclidean_vertices;
  std::sort(ev.begin(), ev.end(),
            [](const EuclideanVertex& a, const EuclideanVertex& b) {
              return a.vertex < b.vertex;
            });
  out["euclidean_vertices"] = nlohmann::json::array();
  for (const auto& v : ev) {
    nlohmann::json row;
    row["vertex"] = v.vertex;
    row["valence"] = v.valence;
    row["link"] = v.link;
    row["ra_cone"] = v.ra_cone;
    out["euclidean_vertices"].push_back(std::move(row));
  }

  auto e3 = f.euclidean_3_circuits;
  std::sort(e3.begin(), e3.end(),
            [](const Euclidean3Circuit& a, const Euclidean3Circuit& b) {
              return a.circuit < b.circuit;
            });
  out["euclidean_3_circuits"] = nlohmann::json::array();
  for (const auto& t : e3) {
    nlohmann::json row;
    row["circuit"] = t.circuit;
    row["flag"] = to_string(t.flag);
    auto ra = t.ra_apexes;
    std::sort(ra.begin(), ra.end());
    row["ra_apexes"] = ra;
    auto st = t.star_apexes;
    std::sort(st.begin(), st.end());
    row["star_apexes"] = st;
    out["euclidean_3_circuits"].push_back(std::move(row));
  }

  std::vector<std::vector<std::string>> e4;
  for (const auto& q : f.euclidean_4_circuits) e4.push_back(q.circuit);
  std::sort(e4.begin(), e4.end());
  out["euclidean_4_circuits"] = e4;

  auto susp = f.suspensions;
  std::sort(susp.begin(), susp.end(),
            [](const Suspension& a, const Suspension& b) {
              return a.vertices < b.vertices;
            });
  out["suspensions"] = nlohmann::json::array();
  for (const auto& s : susp) {
    nlohmann::json row;
    row["vertices"] = s.vertices;
    row["poles"] = s.poles;
    row["base"] = s.base;
    row["pole_presentations"] = s.pole_presentations;
    row["whole_complex"] = s.whole_complex;
    out["suspensions"].push_back(std::move(row));
  }

  // classes are reported with member vertex sets instead of indices, so the
  // report does not depend on the suspension discovery order
  struct ClassRow {
    std::vector<std::vector<std::string>> members;
    std::vector<std::vector<std::string>> gluing, boundary;
    std::vector<std::string> vertices;
  };
  std::vector<ClassRow> classes;
  for (const auto& sc : f.seifert_classes) {
    ClassRow row;
    for (int i : sc.members) row.members.push_back(f.suspensions[i].vertices);
    std::sort(row.members.begin(), row.members.end());
    row.gluing = sc.gluing_circuits;
    std::sort(row.gluing.begin(), row.gluing.end());
    row.boundary = sc.boundary_circuits;
    std::sort(row.boundary.begin(), row.boundary.end());
    row.vertices = sc.vertices;
    classes.push_back(std::move(row));
  }
  std::sort(classes.begin(), classes.end(),
            [](const ClassRow& a, const ClassRow& b) {
              return a.vertices < b.vertices;
            });
  out["seifert_classes"] = nlohmann::json::array();
  for (const auto& sc : classes) {
    nlohmann::json row;
    row["members"] = sc.members;
    row["gluing_circuits"] = sc.gluing;
    row["boundary_circuits"] = sc.boundary;
    row["vertices"] = sc.vertices;
    out["seifert_classes"].push_back(std::move(row));
  }
  return out;
}

inline nlohmann::json andreev_json(const AndreevReport& rep) {
  nlohmann::json out;
  out["passed"] = rep.passed();
  out["ideal_vertices"] = rep.ideal_vertex_count;
  out["conditions"] = nlohmann::json::array();
  for (const auto& cond : rep.conditions) {
    nlohmann::json row;
    row["passed"] = cond.passed;
    row["violations"] = cond.violations;
    out["conditions"].push_back(std::move(row));
  }
  return out;
}

inline nlohmann::json piece_json(const Piece& p) {
  nlohmann::json row;
  row["kind"] = to_string(p.kind);
  row["geometry"] = to_string(p.geometry);
  row["fibered"] = p.fibered;
  row["support"] = p.support;
  row["caps"] = nlohmann::json::array();
  if (p.capped) {
    for (const auto& cap : p.capped->caps) {
      nlohmann::json c;
      c["circuit"] = cap.circuit;
      c["provenance"] = cap.provenance;
      row["caps"].push_back(std::move(c));
    }
    row["cells"] = p.capped->cell_count();
  } else {
    row["cells"] = nullptr;
  }
  row["andreev"] = p.andreev ? andreev_json(*p.andreev)
                             : nlohmann::json(nullptr);
  return row;
}

inline nlohmann::json decomposition_json(const Decomposition& d) {
  nlohmann::json out;
  out["pieces"] = nlohmann::json::array();
  for (const auto& p : d.pieces) out["pieces"].push_back(piece_json(p));
  out["walls"] = d.walls;
  out["characteristic"] = d.characteristic;
  out["atoroidal_complement"] = d.atoroidal_complement;
  auto notes = d.notes;  // assembly order is not canonical; the content is
  std::sort(notes.begin(), notes.end());
  out["notes"] = notes;
  return out;
}

inline std::string to_string(CertificateNodeKind k) {
  switch (k) {
    case CertificateNodeKind::piece_leaf: return "piece_leaf";
    case CertificateNodeKind::wall_leaf: return "wall_leaf";
    case CertificateNodeKind::join: return "join";
  }
  throw std::logic_error("bad certificate node kind");
}

inline nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json out;
  out["nodes"] = nlohmann::json::array();
  for (const auto& n : cert.nodes) {
    nlohmann::json row;
    row["kind"] = to_string(n.kind);
    row["piece"] = n.piece;
    row["reason"] = n.reason ? nlohmann::json(to_string(*n.reason))
                             : nlohmann::json(nullptr);
    row["axioms"] = n.axioms;
    row["wall"] = n.wall;
    row["left"] = n.left;
    row["right"] = n.right;
    row["wall_node"] = n.wall_node;
    row["conclusion"] = n.conclusion;
    out["nodes"].push_back(std::move(row));
  }
  out["root"] = cert.root;
  out["conclusion"] = cert.conclusion;
  return out;
}

inline nlohmann::json report_json(const Report& r) {
  nlohmann::json out;
  out["name"] = r.name;
  out["digest"] = r.digest;
  out["validation"] = validation_json(r.validation);
  out["chi_orb"] = fraction_string(r.chi);
  out["features"] =
      r.features ? features_json(*r.features) : nlohmann::json(nullptr);
  out["decomposition"] = r.decomposition
                             ? decomposition_json(*r.decomposition)
                             : nlohmann::json(nullptr);
  out["certificate"] = r.certificate ? certificate_json(*r.certificate)
                                     : nlohmann::json(nullptr);
  return out;
}

// nlohmann objects keep keys in std::map order, so dump() is already the
// canonical sorted-key form
inline std::string report_bytes(const Report& r) {
  return report_json(r).dump(2) + "\n";
}

inline std::string report_text(const Report& r) {
  std::ostringstream os;
  os << r.name << "  digest " << r.digest << "\n";
  if (!r.validation.pass()) {
    os << "validation: fail\n";
    for (const auto& d : r.validation.diagnostics) os << "  " << d << "\n";
    return os.str();
  }
  os << "validation: pass\n";
  os << "chi_orb: " << fraction_string(r.chi) << "\n";
  const auto& d = *r.decomposition;
  os << "pieces: " << d.pieces.size() << "  walls: " << d.walls.size() << "\n";
  for (const auto& p : d.pieces) {
    os << to_string(p.geometry) << " support=" << p.support.size()
       << " caps=" << (p.capped ? p.capped->caps.size() : 0) << "\n";
  }
  if (r.certificate) {
    os << "certificate: " << r.certificate->nodes.size()
       << " nodes  conclusion: " << r.certificate->conclusion << "\n";
  }
  return os.str();
}

// Cayley-ball export: elements as words in generator names, the adjacency
// table (-1 = step leaves the ball), and the distinguished-representative
// cell poset.
inline nlohmann::json ball_json(const CoxeterBall& b) {
  nlohmann::json out;
  out["radius"] = b.radius;
  out["generators"] = b.system.vertex_names();
  out["elements"] = nlohmann::json::array();
  for (const auto& e : b.elements) {
    std::vector<std::string> word;
    for (int s : e.word) word.push_back(b.system.vertex_names()[s]);
    out["elements"].push_back(word);
  }
  out["adjacency"] = b.adjacency;
  out["cells"] = nlohmann::json::array();
  for (const auto& cell : b.cells) {
    nlohmann::json row;
    row["rep"] = cell.rep;
    std::vector<std::string> subset;
    for (int s : cell.subset) subset.push_back(b.system.vertex_names()[s]);
    row["subset"] = subset;
    out["cells"].push_back(std::move(row));
  }
  return out;
}

}  // namespace cxorb
