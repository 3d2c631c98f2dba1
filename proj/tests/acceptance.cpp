// Acceptance sweep: one line per criterion, nonzero exit on any failure.
// Runs against the shipped corpus (override the directory with argv[1]).
// Time budgets and counts are pinned here as constants; everything else is
// exact arithmetic with zero tolerance.

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "cxorb/report.hpp"
#include "support/complexes.hpp"
#include "support/random_sphere.hpp"
#include "support/scanner.hpp"
#include "support/todd_coxeter.hpp"

using namespace cxorb;

namespace {

constexpr double kChiSecondsPerComplex = 1.0;  // criterion 1
constexpr double kTableSecondsTotal = 1.0;     // criterion 2
constexpr double kLinkSecondsEach = 30.0;      // criterion 7
constexpr int kMinimumCorpus = 20;             // criterion 1
constexpr int kRandomSpheres = 50;             // criterion 3
constexpr int kRandomMaxVertices = 20;         // criterion 3
constexpr unsigned kRandomSeed = 20260816;     // criterion 3
constexpr int kRelabelTrials = 10;             // criterion 5
constexpr unsigned kRelabelSeed = 7;           // criterion 5
constexpr int kBallRadiusCap = 20;             // criterion 6

struct CorpusEntry {
  std::string file;
  bool valid = false;
  nlohmann::json row;
  LabeledComplex complex;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
  std::vector<CorpusEntry> out;
  for (const auto& row : manifest.at("complexes")) {
    const std::string file = row.at("file").get<std::string>();
    out.push_back({file, row.at("valid_sphere").get<bool>(), row,
                   LabeledComplex::parse(read_file(dir + "/" + file))});
  }
  return out;
}

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string ms(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << s * 1000.0 << " ms";
  return os.str();
}

// Problem collector: the criterion line carries the first failure and a
// count of the rest, so a broken sweep stays one readable line.
struct Problems {
  std::vector<std::string> items;
  void add(std::string s) { items.push_back(std::move(s)); }
  bool ok() const { return items.empty(); }
  std::string brief() const {
    if (items.empty()) return "";
    std::string out = items.front();
    if (items.size() > 1)
      out += " (+" + std::to_string(items.size() - 1) + " more)";
    return out;
  }
};

struct Result {
  bool passed = false;
  std::string detail;
};

// Normalized views for isomorphism comparison under a vertex rename.
using PieceKey = std::tuple<PieceKind, std::vector<std::string>, Geometry, bool>;

std::multiset<PieceKey> piece_keys(const Decomposition& d,
                                   const std::map<std::string, std::string>& f) {
  std::multiset<PieceKey> out;
  for (const auto& p : d.pieces) {
    std::vector<std::string> sup;
    for (const auto& v : p.support) {
      auto it = f.find(v);
      sup.push_back(it == f.end() ? v : it->second);
    }
    std::sort(sup.begin(), sup.end());
    out.insert({p.kind, sup, p.geometry, p.fibered});
  }
  return out;
}

std::set<std::vector<std::string>> wall_keys(
    const Decomposition& d, const std::map<std::string, std::string>& f) {
  std::set<std::vector<std::string>> out;
  for (const auto& w : d.walls) {
    std::vector<std::string> cyc;
    for (const auto& v : w) {
      auto it = f.find(v);
      cyc.push_back(it == f.end() ? v : it->second);
    }
    out.insert(detail::canonical_cycle(cyc));
  }
  return out;
}

// criterion 1: every corpus sphere nerve validates and has chi_orb exactly 0
Result chi_identity(const std::vector<CorpusEntry>& corpus) {
  Problems bad;
  int count = 0;
  double slowest = 0;
  std::set<std::string> names;
  for (const auto& e : corpus) {
    if (!e.valid) continue;
    bool pass = false;
    Rational chi;
    double t = seconds([&] {
      pass = e.complex.validate_sphere().pass();
      chi = chi_orb(e.complex);
    });
    slowest = std::max(slowest, t);
    if (!pass) bad.add(e.file + ": does not validate as a sphere nerve");
    if (chi != 0) bad.add(e.file + ": chi_orb = " + fraction_string(chi));
    if (t >= kChiSecondsPerComplex) bad.add(e.file + ": took " + ms(t));
    ++count;
    names.insert(e.complex.name());
  }
  if (count < kMinimumCorpus)
    bad.add("only " + std::to_string(count) + " sphere nerves in the corpus");
  for (const char* want :
       {"octahedron", "icosahedron", "simplex-a3t", "simplex-c3t",
        "simplex-534", "pinwheel-disk", "two-hemispheres"})
    if (!names.count(want)) bad.add(std::string("corpus is missing ") + want);
  int suspensions = 0;
  for (const auto& n : names)
    if (n.rfind("susp-", 0) == 0) ++suspensions;
  if (suspensions < 20)
    bad.add("only " + std::to_string(suspensions) + " suspension nerves");
  if (!bad.ok()) return {false, bad.brief()};
  return {true, std::to_string(count) + " sphere nerves, chi_orb exactly 0, " +
                    std::to_string(suspensions) + " suspensions, slowest " +
                    ms(slowest)};
}

// criterion 2: simplex signatures and the suspension trichotomy, exact
Result special_case_table(const std::vector<CorpusEntry>&) {
  Problems bad;
  int grid = 0;
  double total = seconds([&] {
    struct SimplexCase {
      std::array<int, 6> labels;
      Signature sig;
      Geometry geom;
    };
    for (const auto& sc : std::vector<SimplexCase>{
             {{3, 2, 3, 3, 2, 3}, {3, 0, 1}, Geometry::E3},
             {{4, 2, 2, 3, 2, 4}, {3, 0, 1}, Geometry::E3},
             {{5, 2, 2, 3, 2, 4}, {3, 1, 0}, Geometry::H3}}) {
      auto c = support::boundary_simplex(sc.labels);
      std::ostringstream tag;
      for (int m : sc.labels) tag << m;
      if (!c.validate_sphere().pass()) {
        bad.add("simplex " + tag.str() + " does not validate");
        continue;
      }
      if (gram_signature(c, c.vertex_names()) != sc.sig) {
        bad.add("simplex " + tag.str() + " has the wrong gram signature");
        continue;
      }
      auto d = decompose(c);
      if (d.pieces.size() != 1 ||
          d.pieces[0].kind != PieceKind::whole_special ||
          d.pieces[0].geometry != sc.geom)
        bad.add("simplex " + tag.str() + " decomposed to the wrong piece");
    }

    for (int p = 2; p <= 6; ++p)
      for (int q = p; q <= 6; ++q)
        for (int r = q; r <= 6; ++r) {
          ++grid;
          auto c = support::suspension_of_polygon({p, q, r});
          std::string tag = std::to_string(p) + "," + std::to_string(q) +
                            "," + std::to_string(r);
          Rational sum = Rational(1, p) + Rational(1, q) + Rational(1, r);
          if (sum > 1) {
            // spherical equator: the triangle fills in, so the complex is
            // rejected as a sphere and the circuit is not Euclidean
            if (c.validate_sphere().pass())
              bad.add("suspension " + tag + " validated despite a spherical equator");
            if (!euclidean_circuits(c).first.empty())
              bad.add("suspension " + tag + " reported a Euclidean 3-circuit");
            continue;
          }
          if (!c.validate_sphere().pass()) {
            bad.add("suspension " + tag + " does not validate");
            continue;
          }
          auto d = decompose(c);
          Geometry want = sum == 1 ? Geometry::E3 : Geometry::H2xE;
          if (d.pieces.size() != 1 ||
              d.pieces[0].kind != PieceKind::whole_special ||
              d.pieces[0].geometry != want || !d.pieces[0].fibered)
            bad.add("suspension " + tag + " missed the trichotomy");
        }
  });
  if (total >= kTableSecondsTotal)
    bad.add("table took " + ms(total) + ", budget " + ms(kTableSecondsTotal));
  if (!bad.ok()) return {false, bad.brief()};
  return {true, "3 simplex signatures and " + std::to_string(grid) +
                    " suspension cells, exact, " + ms(total)};
}

// criterion 3: Andreev on random all-2 flag spheres against the brute-force
// chordless-square scanner
Result andreev_agreement(const std::vector<CorpusEntry>&) {
  Problems bad;
  std::mt19937 rng(kRandomSeed);
  int with_squares = 0, square_free = 0;
  for (int i = 0; i < kRandomSpheres; ++i) {
    auto c = support::random_all2_sphere(rng, kRandomMaxVertices);
    std::string tag = "sample " + std::to_string(i) + " (" +
                      std::to_string(c.vertex_count()) + " vertices)";
    if (!c.validate_sphere().pass()) {
      bad.add(tag + " is not a sphere");
      continue;
    }
    const bool squares = !support::chordless_all2_squares(c).empty();
    const bool passed = check(CappedPiece{c, {}}).passed();
    if (passed == squares)
      bad.add(tag + (squares ? " has a chordless square but passed"
                             : " is square-free but failed"));
    (squares ? with_squares : square_free) += 1;
  }
  if (with_squares == 0) bad.add("no sample had a chordless square");
  if (square_free == 0) bad.add("no sample was square-free");
  if (!bad.ok()) return {false, bad.brief()};
  return {true, std::to_string(kRandomSpheres) +
                    " random spheres in full agreement (" +
                    std::to_string(with_squares) + " with squares, " +
                    std::to_string(square_free) + " square-free)"};
}

// criterion 4: the pinwheel disk carries five suspensions in one Seifert class
Result pinwheel_seifert(const std::vector<CorpusEntry>& corpus) {
  Problems bad;
  const std::vector<std::string> disk{"a", "b", "c", "d", "m",
                                      "s", "t", "u", "v"};
  const LabeledComplex* pin = nullptr;
  for (const auto& e : corpus)
    if (e.complex.name() == "pinwheel-disk") pin = &e.complex;
  if (!pin) return {false, "corpus has no pinwheel-disk"};
  auto f = detect_features(*pin);
  if (f.suspensions.size() != 5)
    bad.add("found " + std::to_string(f.suspensions.size()) +
            " suspensions, expected 5");
  const std::set<std::string> disk_set(disk.begin(), disk.end());
  for (const auto& s : f.suspensions)
    for (const auto& v : s.vertices)
      if (!disk_set.count(v)) bad.add("suspension leaves the disk at " + v);
  if (f.seifert_classes.size() != 1)
    bad.add("found " + std::to_string(f.seifert_classes.size()) +
            " Seifert classes, expected 1");
  else {
    const auto& cls = f.seifert_classes[0];
    if (cls.members.size() != 5) bad.add("Seifert class is not 5 members");
    if (cls.gluing_circuits.size() != 4)
      bad.add("expected 4 gluing circuits, found " +
              std::to_string(cls.gluing_circuits.size()));
    if (cls.vertices != disk) bad.add("Seifert class does not cover the disk");
  }
  if (!bad.ok()) return {false, bad.brief()};
  return {true, "5 suspensions inside the 9-vertex disk, 1 Seifert class, "
                "4 gluing circuits"};
}

// criterion 5: decomposition soundness across the corpus, plus invariance
// under vertex renaming.  Hyperbolic pieces are certified by Andreev where
// the conditions apply (5 or more cells) and by the exact Lorentzian gram
// signature in the simplex-shaped cases, which sit outside the hypotheses.
Result decomposition_soundness(const std::vector<CorpusEntry>& corpus) {
  Problems bad;
  int h3_andreev = 0, h3_gram = 0, relabelings = 0;
  std::mt19937 rng(kRelabelSeed);
  for (const auto& e : corpus) {
    if (!e.valid) continue;
    Decomposition d;
    try {
      d = decompose(e.complex);
    } catch (const std::exception& ex) {
      bad.add(e.file + ": " + ex.what());
      continue;
    }

    // shape of the result against the hand-derived manifest rows
    using Row = std::tuple<std::string, std::string, size_t, size_t>;
    std::multiset<Row> expected, actual;
    for (const auto& row : e.row.at("pieces"))
      expected.insert({row.at("kind").get<std::string>(),
                       row.at("geometry").get<std::string>(),
                       row.at("support").get<size_t>(),
                       row.at("caps").get<size_t>()});
    for (const auto& p : d.pieces)
      actual.insert({to_string(p.kind), to_string(p.geometry),
                     p.support.size(),
                     p.capped ? p.capped->caps.size() : size_t{0}});
    if (expected != actual) bad.add(e.file + ": pieces differ from manifest");
    if (d.walls.size() != e.row.at("walls").get<size_t>())
      bad.add(e.file + ": wall count differs from manifest");

    for (const auto& p : d.pieces) {
      if (p.geometry != Geometry::H3) continue;
      if (p.andreev) {
        if (!p.andreev->passed())
          bad.add(e.file + ": an H3 piece fails Andreev");
        ++h3_andreev;
      } else if (p.capped && p.capped->cell_count() >= 5) {
        if (!check(*p.capped).passed())
          bad.add(e.file + ": an uncabled H3 piece fails Andreev");
        ++h3_andreev;
      } else {
        if (gram_signature(e.complex, p.support) != Signature{3, 1, 0})
          bad.add(e.file + ": simplex piece is not Lorentzian");
        ++h3_gram;
      }
      // atoroidality: the capped fragment has no Euclidean features of its
      // own beyond the caps it was closed with
      if (!p.capped) continue;
      const auto& frag = p.capped->base;
      std::set<std::vector<std::string>> cap_circuits;
      std::set<std::string> cap_vertices;
      for (const auto& cc : p.capped->caps) {
        cap_circuits.insert(detail::canonical_cycle(cc.circuit));
        cap_vertices.insert(cc.circuit.begin(), cc.circuit.end());
      }
      auto [threes, fours] = euclidean_circuits(frag);
      for (const auto& e3 : threes)
        if (!cap_circuits.count(e3.circuit))
          bad.add(e.file + ": Euclidean 3-circuit inside an H3 piece");
      for (const auto& e4 : fours)
        if (!cap_circuits.count(e4.circuit))
          bad.add(e.file + ": Euclidean 4-circuit inside an H3 piece");
      for (const auto& t : ra_suspensions(frag))
        for (const auto& v : t.vertices)
          if (!cap_vertices.count(v)) {
            bad.add(e.file + ": RA-suspension inside an H3 piece");
            break;
          }
    }

    for (int trial = 0; trial < kRelabelTrials; ++trial) {
      std::vector<std::string> fresh;
      for (int i = 0; i < e.complex.vertex_count(); ++i)
        fresh.push_back("z" + std::to_string(i));
      std::shuffle(fresh.begin(), fresh.end(), rng);
      std::map<std::string, std::string> f;
      for (int i = 0; i < e.complex.vertex_count(); ++i)
        f[e.complex.vertex_names()[i]] = fresh[i];
      auto dd = decompose(support::renamed(e.complex, f));
      if (piece_keys(d, f) != piece_keys(dd, {}) ||
          wall_keys(d, f) != wall_keys(dd, {})) {
        bad.add(e.file + ": decomposition changed under renaming");
        break;
      }
      ++relabelings;
    }
  }
  if (!bad.ok()) return {false, bad.brief()};
  return {true, "manifest shapes match, " + std::to_string(h3_andreev) +
                    " H3 pieces pass Andreev, " + std::to_string(h3_gram) +
                    " Lorentzian simplex pieces, " +
                    std::to_string(relabelings) + " renamings invariant"};
}

// criterion 6: closed-form orders against coset enumeration, and ball growth
// saturating at the group order
Result oracle_equivalence(const std::vector<CorpusEntry>& corpus) {
  Problems bad;
  int subsets = 0;
  for (const auto& e : corpus) {
    for (const auto& entry : spherical_poset(e.complex)) {
      const int n = static_cast<int>(entry.subset.size());
      std::vector<std::vector<int>> lab(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            lab[i][j] = e.complex.label(e.complex.index_of(entry.subset[i]),
                                        e.complex.index_of(entry.subset[j]));
      if (Integer(support::coxeter_order(lab)) != entry.order) {
        std::string sub;
        for (const auto& v : entry.subset) sub += (sub.empty() ? "" : ",") + v;
        bad.add(e.file + ": order mismatch on {" + sub + "}");
      }
      ++subsets;
    }
  }

  // ball saturation on every rank-2 and rank-3 spherical system with labels
  // up to 5; the saturation radius is the length of the longest element
  struct FiniteSystem {
    const char* tag;
    std::vector<std::tuple<std::string, std::string, int>> edges;
    std::vector<std::string> vertices;
    int diameter;
  };
  std::vector<FiniteSystem> systems;
  for (int m = 2; m <= 5; ++m)
    systems.push_back({"i2", {{"a", "b", m}}, {"a", "b"}, m});
  for (const auto& [p, q, r, diam] : std::vector<std::array<int, 4>>{
           {2, 2, 2, 3}, {2, 2, 3, 4}, {2, 2, 4, 5}, {2, 2, 5, 6},
           {2, 3, 3, 6}, {2, 3, 4, 9}, {2, 3, 5, 15}})
    systems.push_back({"triangle",
                       {{"a", "b", p}, {"a", "c", q}, {"b", "c", r}},
                       {"a", "b", "c"},
                       diam});
  for (const auto& sys : systems) {
    std::string tag = sys.tag;
    for (const auto& e : sys.edges) tag += "-" + std::to_string(std::get<2>(e));
    auto c = LabeledComplex::from_data(tag, sys.vertices, sys.edges);
    const int n = c.vertex_count();
    std::vector<std::vector<int>> lab(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) lab[i][j] = c.label(i, j);
    const long long order = support::coxeter_order(lab);
    const auto before = build_ball(c, sys.diameter - 1, kBallRadiusCap);
    const auto at = build_ball(c, sys.diameter, kBallRadiusCap);
    const auto after = build_ball(c, sys.diameter + 1, kBallRadiusCap);
    if (static_cast<long long>(before.elements.size()) >= order)
      bad.add(tag + ": ball saturated before the longest element");
    if (static_cast<long long>(at.elements.size()) != order ||
        static_cast<long long>(after.elements.size()) != order)
      bad.add(tag + ": ball does not saturate at " + std::to_string(order));
  }
  if (!bad.ok()) return {false, bad.brief()};
  return {true, std::to_string(subsets) +
                    " spherical subsets match coset enumeration, " +
                    std::to_string(systems.size()) +
                    " finite systems saturate at |W|"};
}

// criterion 7: the link of the identity vertex reproduces the nerve
Result link_reproduction(const std::vector<CorpusEntry>& corpus) {
  Problems bad;
  std::string times;
  for (const char* name : {"octahedron", "icosahedron"}) {
    const LabeledComplex* c = nullptr;
    for (const auto& e : corpus)
      if (e.complex.name() == name) c = &e.complex;
    if (!c) {
      bad.add(std::string("corpus has no ") + name);
      continue;
    }
    bool same = false;
    double t = seconds([&] {
      auto ball = build_ball(*c, 2);
      auto link = vertex_link(ball, GroupElement{});
      same = link.canonical_encoding() == c->canonical_encoding() &&
             link.digest() == c->digest();
    });
    if (!same) bad.add(std::string(name) + ": link differs from the nerve");
    if (t >= kLinkSecondsEach) bad.add(std::string(name) + " took " + ms(t));
    times += (times.empty() ? "" : ", ") + std::string(name) + " " + ms(t);
  }
  if (!bad.ok()) return {false, bad.brief()};
  return {true, "identity links match the nerves (" + times + ")"};
}

// criterion 8: certificates assemble and validate for the whole corpus
Result certificate_checker(const std::vector<CorpusEntry>& corpus) {
  Problems bad;
  int complexes = 0, nodes = 0;
  for (const auto& e : corpus) {
    if (!e.valid) continue;
    try {
      auto d = decompose(e.complex);
      auto cert = acyclicity_certificate(e.complex, d);
      auto problems = check_certificate(e.complex, d, cert);
      for (const auto& p : problems) bad.add(e.file + ": " + p);
      if (cert.conclusion != kAcyclicityConclusion)
        bad.add(e.file + ": wrong conclusion");
      nodes += static_cast<int>(cert.nodes.size());
      ++complexes;
    } catch (const std::exception& ex) {
      bad.add(e.file + ": " + ex.what());
    }
  }
  if (!bad.ok()) return {false, bad.brief()};
  return {true, std::to_string(complexes) + " certificates, " +
                    std::to_string(nodes) + " nodes, all conclude " +
                    std::string(kAcyclicityConclusion)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir =
      argc > 1 ? argv[1] : std::string(CXORB_SOURCE_DIR) + "/corpus";
  std::vector<CorpusEntry> corpus;
  try {
    corpus = load_corpus(dir);
  } catch (const std::exception& ex) {
    std::cerr << "acceptance: cannot load the corpus from " << dir << ": "
              << ex.what() << "\n";
    return 1;
  }

  using Criterion = Result (*)(const std::vector<CorpusEntry>&);
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"chi_orb identity", chi_identity},
      {"special-case table", special_case_table},
      {"Andreev right-angled criterion", andreev_agreement},
      {"pinwheel Seifert detection", pinwheel_seifert},
      {"decomposition soundness", decomposition_soundness},
      {"oracle equivalence", oracle_equivalence},
      {"link reproduction", link_reproduction},
      {"certificate checker", certificate_checker},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second(corpus);
    } catch (const std::exception& ex) {
      r = {false, std::string("unhandled: ") + ex.what()};
    }
    if (!r.passed) ++failures;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first
              << "): " << (r.passed ? "PASS" : "FAIL") << " - " << r.detail
              << "\n";
  }
  if (failures) {
    std::cout << "acceptance: " << failures << " of " << criteria.size()
              << " criteria failed\n";
    return 1;
  }
  std::cout << "acceptance: all " << criteria.size() << " criteria passed\n";
  return 0;
}
