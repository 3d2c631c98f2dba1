// Command-line front end: validate nerve documents, run the decomposition
// pipeline, print exact orbifold Euler characteristics, and export Cayley
// balls of the associated Coxeter group.
//
// Exit codes: 0 success, 1 domain failure (bad document content, failed
// validation, cap exceeded, internal inconsistency), 2 environment failure
// (unreadable or unwritable files).

#include "cxorb/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kEnvironment = 2;

bool read_file(const std::string& path, std::string& out, std::string& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err = "cannot open " + path;
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    err = "cannot read " + path;
    return false;
  }
  out = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& bytes,
                std::string& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err = "cannot open " + path + " for writing";
    return false;
  }
  out << bytes;
  out.flush();
  if (!out) {
    err = "cannot write " + path;
    return false;
  }
  return true;
}

// parse + handler plumbing shared by every subcommand
template <typename Handler>
int with_complex(const std::string& path, Handler&& handler) {
  std::string text, err;
  if (!read_file(path, text, err)) {
    std::cerr << "error: " << err << "\n";
    return kEnvironment;
  }
  cxorb::LabeledComplex c;
  try {
    c = cxorb::LabeledComplex::parse(text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kDomain;
  }
  try {
    return handler(c);
  } catch (const cxorb::InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << path << ": " << e.what()
              << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kDomain;
  }
}

// sorted *.json paths in a directory, manifest excluded
std::vector<std::string> corpus_files(const std::string& dir,
                                      std::string& err) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    if (p.extension() != ".json") continue;
    if (p.filename() == "manifest.json") continue;
    files.push_back(p.string());
  }
  if (ec) err = "cannot list " + dir + ": " + ec.message();
  std::sort(files.begin(), files.end());
  return files;
}

int run_validate(const std::string& path) {
  return with_complex(path, [&](const cxorb::LabeledComplex& c) {
    const auto rep = c.validate_sphere();
    nlohmann::json fragment;
    fragment["name"] = c.name();
    fragment["digest"] = cxorb::digest_string(c);
    fragment["validation"] = cxorb::validation_json(rep);
    std::cout << fragment.dump(2) << "\n";
    if (!rep.pass()) {
      for (const auto& d : rep.diagnostics) std::cerr << path << ": " << d << "\n";
      return kDomain;
    }
    return kOk;
  });
}

int run_validate_all(const std::string& dir) {
  std::string err;
  const auto files = corpus_files(dir, err);
  if (!err.empty()) {
    std::cerr << "error: " << err << "\n";
    return kEnvironment;
  }
  int worst = kOk;
  for (const auto& path : files) {
    const int code = with_complex(path, [&](const cxorb::LabeledComplex& c) {
      const auto rep = c.validate_sphere();
      if (rep.pass()) {
        std::cout << path << ": ok\n";
        return kOk;
      }
      std::cout << path << ": FAIL ("
                << (rep.diagnostics.empty() ? std::string("invalid")
                                            : rep.diagnostics.front())
                << ")\n";
      return kDomain;
    });
    worst = std::max(worst, code);
  }
  return worst;
}

int run_decompose(const std::string& path, const std::string& format) {
  return with_complex(path, [&](const cxorb::LabeledComplex& c) {
    const cxorb::Report r = cxorb::analyze(c);
    if (!r.validation.pass()) {
      for (const auto& d : r.validation.diagnostics)
        std::cerr << path << ": " << d << "\n";
      return kDomain;
    }
    if (format == "structured")
      std::cout << cxorb::report_bytes(r);
    else
      std::cout << cxorb::report_text(r);
    std::cerr << "elapsed_ms " << r.elapsed_ms << "\n";
    return kOk;
  });
}

int run_decompose_all(const std::string& dir, const std::string& format) {
  std::string err;
  const auto files = corpus_files(dir, err);
  if (!err.empty()) {
    std::cerr << "error: " << err << "\n";
    return kEnvironment;
  }
  int worst = kOk;
  for (const auto& path : files) {
    const int code = with_complex(path, [&](const cxorb::LabeledComplex& c) {
      const cxorb::Report r = cxorb::analyze(c);
      if (!r.validation.pass()) {
        // deliberate negatives live in the corpus; skipping is not an error
        std::cout << path << ": skipped (not a sphere nerve)\n";
        return kOk;
      }
      if (format == "structured") {
        std::cout << cxorb::report_bytes(r);
      } else {
        const auto& d = *r.decomposition;
        std::cout << path << ": pieces=" << d.pieces.size()
                  << " walls=" << d.walls.size()
                  << " chi=" << cxorb::fraction_string(r.chi) << "\n";
      }
      return kOk;
    });
    worst = std::max(worst, code);
  }
  return worst;
}

int run_euler(const std::string& path, bool allow_non_sphere) {
  return with_complex(path, [&](const cxorb::LabeledComplex& c) {
    const auto rep = c.validate_sphere();
    if (!rep.pass() && !allow_non_sphere) {
      for (const auto& d : rep.diagnostics)
        std::cerr << path << ": " << d << "\n";
      return kDomain;
    }
    const cxorb::Rational chi = cxorb::chi_orb(c);
    std::cout << cxorb::fraction_string(chi) << "\n";
    if (rep.pass() && chi != 0) {
      std::cerr << path << ": nonzero chi_orb on a sphere nerve\n";
      return kDomain;
    }
    return kOk;
  });
}

int run_ball(const std::string& path, int radius, const std::string& out) {
  return with_complex(path, [&](const cxorb::LabeledComplex& c) {
    cxorb::CoxeterBall ball;
    try {
      ball = cxorb::build_ball(c, radius);
    } catch (const std::runtime_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kDomain;
    }
    if (!out.empty()) {
      const std::string bytes = cxorb::ball_json(ball).dump(2) + "\n";
      std::string err;
      if (out == "-") {
        std::cout << bytes;
      } else if (!write_file(out, bytes, err)) {
        std::cerr << "error: " << err << "\n";
        return kEnvironment;
      }
    }
    const auto n = ball.elements.size();
    std::cout << n << (n == 1 ? " element" : " elements") << "\n";
    return kOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter orbifold decomposition toolkit"};
  app.require_subcommand(1);

  std::string path, all_dir, format = "text", ball_out;
  int radius = 0;
  bool allow_non_sphere = false;

  auto* validate =
      app.add_subcommand("validate", "check that a document is a sphere nerve");
  auto* v_path = validate->add_option("path", path, "nerve document");
  auto* v_all =
      validate->add_option("--all", all_dir, "validate every document in a directory");
  v_path->excludes(v_all);

  auto* decompose = app.add_subcommand(
      "decompose", "compute the canonical geometric decomposition");
  auto* d_path = decompose->add_option("path", path, "nerve document");
  auto* d_all = decompose->add_option("--all", all_dir,
                                      "decompose every document in a directory");
  d_path->excludes(d_all);
  decompose->add_option("--format", format, "output form")
      ->check(CLI::IsMember({"text", "structured"}));

  auto* euler = app.add_subcommand(
      "euler", "print the exact orbifold Euler characteristic");
  euler->add_option("path", path, "nerve document")->required();
  euler->add_flag("--allow-non-sphere", allow_non_sphere,
                  "skip sphere validation");

  auto* ball =
      app.add_subcommand("ball", "enumerate a Cayley ball of the Coxeter group");
  ball->add_option("path", path, "coxeter system document")->required();
  ball->add_option("--radius,-r", radius, "word-length radius")
      ->required()
      ->check(CLI::NonNegativeNumber);
  ball->add_option("--out,-o", ball_out,
                   "write the Cayley/cell export here ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    if (!all_dir.empty()) return run_validate_all(all_dir);
    if (path.empty()) {
      std::cerr << "error: validate needs a path or --all\n";
      return kDomain;
    }
    return run_validate(path);
  }
  if (decompose->parsed()) {
    if (!all_dir.empty()) return run_decompose_all(all_dir, format);
    if (path.empty()) {
      std::cerr << "error: decompose needs a path or --all\n";
      return kDomain;
    }
    return run_decompose(path, format);
  }
  if (euler->parsed()) return run_euler(path, allow_non_sphere);
  if (ball->parsed()) return run_ball(path, radius, ball_out);
  return kDomain;
}
