#pragma once

#include "cxorb/coxeter.hpp"
#include "cxorb/nerve.hpp"
#include "cxorb/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cxorb {

enum class Geometry { H3, E3, E2xI, H2xE };

inline std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::H3: return "H3";
    case Geometry::E3: return "E3";
    case Geometry::E2xI: return "E2xI";
    case Geometry::H2xE: return "H2xE";
  }
  throw std::logic_error("bad geometry tag");
}

// Orbifold Euler characteristic: sum over the finite-parabolic poset of
// (-1)^rank / |W_T|.  Zero for every closed odd-dimensional quotient, so a
// valid spherical nerve must return exactly 0.
inline Rational chi_orb(const LabeledComplex& c) {
  Rational chi = 0;
  for (const auto& entry : spherical_poset(c)) {
    Rational term = Rational(1) / Rational(entry.order);
    chi += (entry.subset.size() % 2 ? -term : term);
  }
  return chi;
}

// Kuenneth: the Betti vector of a product is the convolution of the factors.
inline std::vector<Rational> kunneth_join(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

enum class BettiReason {
  euclidean_factor,      // amenable factor kills all reduced cohomology
  kunneth_suspension,    // product with a Euclidean line, convolution is zero
  hyperbolic_dodziuk,    // odd-dimensional hyperbolic quotient
};

inline std::string to_string(BettiReason r) {
  switch (r) {
    case BettiReason::euclidean_factor: return "euclidean_factor";
    case BettiReason::kunneth_suspension: return "kunneth_suspension";
    case BettiReason::hyperbolic_dodziuk: return "hyperbolic_dodziuk";
  }
  throw std::logic_error("bad reason tag");
}

struct PieceBetti {
  std::vector<Rational> betti;  // degrees 0..3
  BettiReason reason;
};

// Every geometric piece of the decomposition is l2-acyclic; the reason code
// records which vanishing theorem applies to its geometry.
inline PieceBetti piece_betti(Geometry g) {
  PieceBetti out;
  out.betti.assign(4, Rational(0));
  switch (g) {
    case Geometry::E3:
    case Geometry::E2xI:
      out.reason = BettiReason::euclidean_factor;
      break;
    case Geometry::H2xE:
      out.reason = BettiReason::kunneth_suspension;
      break;
    case Geometry::H3:
      out.reason = BettiReason::hyperbolic_dodziuk;
      break;
    default:
      throw std::logic_error("geometry tag without a vanishing reason");
  }
  return out;
}

}  // namespace cxorb
