#pragma once

#include "cxorb/rational.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

// Exact arithmetic in the real subfield of cyclotomic fields, sized for Gram
// matrices of Coxeter systems: entries are Q-linear combinations of cos(pi/m).
// Zero tests are algebraic (division by the cyclotomic polynomial), so values
// on the Euclidean boundary (zero determinants) are classified exactly; signs
// of provably nonzero values are certified by adaptive rational interval
// evaluation, never by floating point.

namespace cxorb {

// Closed interval with exact rational endpoints.
struct RationalInterval {
  Rational lo, hi;

  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

  RationalInterval operator+(const RationalInterval& o) const {
    return {lo + o.lo, hi + o.hi};
  }
  RationalInterval scaled(const Rational& c) const {
    if (c.sign() >= 0) return {lo * c, hi * c};
    return {hi * c, lo * c};
  }
};

namespace detail {

// Enclosure of pi to within 2^-prec_bits, by Machin's formula.  Both arctan
// series alternate with strictly decreasing terms, so each truncation error
// is bounded by the first omitted term.
inline RationalInterval pi_interval(int prec_bits) {
  static std::map<int, RationalInterval> cache;
  if (auto it = cache.find(prec_bits); it != cache.end()) return it->second;

  auto atan_inv = [](long long x, const Rational& eps) {
    Rational sum = 0;
    Rational power = Rational(1, x);  // x^-(2i+1)
    const Rational xsq = Rational(1) / (Integer(x) * Integer(x));
    Rational term;
    for (long long i = 0;; ++i) {
      term = power / (2 * i + 1);
      if (term < eps) break;
      sum += (i % 2 == 0) ? term : -term;
      power *= xsq;
    }
    return RationalInterval{sum - term, sum + term};
  };

  const Rational eps = Rational(1) / (Integer(1) << (prec_bits + 8));
  RationalInterval pi =
      atan_inv(5, eps).scaled(16) + atan_inv(239, eps).scaled(-4);
  cache.emplace(prec_bits, pi);
  return pi;
}

// Enclosure of cos over a rational interval: Taylor at the midpoint with the
// Lagrange bound |R_M| <= |t|^(2M+2)/(2M+2)!, widened by the interval's
// half-width (cos is 1-Lipschitz).
inline RationalInterval cos_interval(const RationalInterval& theta,
                                     const Rational& eps) {
  const Rational t0 = (theta.lo + theta.hi) / 2;
  Rational delta = (theta.hi - theta.lo) / 2;
  if (delta.sign() < 0) delta = -delta;
  const Rational t0sq = t0 * t0;
  Rational sum = 0;
  Rational term = 1;  // |t0|^(2i)/(2i)!
  for (long long i = 0; term >= eps; ++i) {
    if (i > 4096) throw std::logic_error("cos_interval: series diverged");
    sum += (i % 2 == 0) ? term : -term;
    term = term * t0sq / Rational((2 * i + 1) * (2 * i + 2));
  }
  const Rational rad = term + delta;
  return {sum - rad, sum + rad};
}

// Certified enclosure of cos(2 pi j / n), cached per precision level.
inline RationalInterval cos_two_pi_frac(long long j, long long n,
                                        int prec_bits) {
  static std::map<std::tuple<long long, long long, int>, RationalInterval>
      cache;
  const auto key = std::make_tuple(j, n, prec_bits);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  RationalInterval theta =
      pi_interval(prec_bits + 4).scaled(Rational(2 * j, n));
  const Rational eps = Rational(1) / (Integer(1) << prec_bits);
  RationalInterval r = cos_interval(theta, eps);
  cache.emplace(key, r);
  return r;
}

// Dense integer polynomial, index = exponent.
using IntPoly = std::vector<Integer>;

// Quotient of monic-divisor division; exact in every use below.
inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  IntPoly q(num.size() - den.size() + 1);
  for (auto i = static_cast<long long>(q.size()) - 1; i >= 0; --i) {
    Integer c = num[i + den.size() - 1];
    q[i] = c;
    if (c != 0)
      for (size_t jj = 0; jj < den.size(); ++jj) num[i + jj] -= c * den[jj];
  }
  return q;
}

inline const IntPoly& cyclotomic_polynomial(long long n) {
  static std::map<long long, IntPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (long long d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divide_exact(std::move(p), cyclotomic_polynomial(d));
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace detail

// Element of Q[x]/(x^N - 1) standing for its value at the primitive N-th root
// of unity e^(2 pi i / N).  Every number built from rationals and
// cos_pi_over(m) is real (conjugation-symmetric coefficients), which sign()
// checks before evaluating.  Mixed moduli are reconciled by lifting to the lcm.
class CycloNumber {
 public:
  CycloNumber() : modulus_(1) {}
  explicit CycloNumber(const Rational& c) : modulus_(1) {
    if (!c.is_zero()) coeffs_[0] = c;
  }

  static CycloNumber rational(long long num, long long den = 1) {
    return CycloNumber(Rational(num, den));
  }

  // cos(pi/m) for m >= 1; m = 2m' gives (x + x^(N-1))/2 with N = 2m.
  static CycloNumber cos_pi_over(long long m) {
    if (m < 1) throw std::invalid_argument("cos_pi_over: m must be >= 1");
    if (m == 1) return rational(-1);
    if (m == 2) return CycloNumber();
    CycloNumber c;
    c.modulus_ = 2 * m;
    c.coeffs_[1] = Rational(1, 2);
    c.coeffs_[2 * m - 1] = Rational(1, 2);
    return c;
  }

  long long modulus() const { return modulus_; }

  Rational coeff(long long e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
    long long L = std::lcm(a.modulus_, b.modulus_);
    CycloNumber x = a.lifted(L);
    for (const auto& [e, c] : b.lifted(L).coeffs_) x.accumulate(e, c);
    return x;
  }

  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
    return a + (-b);
  }

  CycloNumber operator-() const {
    CycloNumber r = *this;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
  }

  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    long long L = std::lcm(a.modulus_, b.modulus_);
    CycloNumber x = a.lifted(L), y = b.lifted(L), r;
    r.modulus_ = L;
    for (const auto& [e1, c1] : x.coeffs_)
      for (const auto& [e2, c2] : y.coeffs_)
        r.accumulate((e1 + e2) % L, c1 * c2);
    return r;
  }

  CycloNumber& operator+=(const CycloNumber& b) { return *this = *this + b; }
  CycloNumber& operator-=(const CycloNumber& b) { return *this = *this - b; }
  CycloNumber& operator*=(const CycloNumber& b) { return *this = *this * b; }

  // Exact: the value vanishes iff the N-th cyclotomic polynomial divides the
  // representing polynomial.
  bool is_zero() const {
    if (coeffs_.empty()) return true;
    if (modulus_ == 1) return false;
    std::vector<Rational> p(modulus_);
    for (const auto& [e, c] : coeffs_) p[e] = c;
    const detail::IntPoly& phi = detail::cyclotomic_polynomial(modulus_);
    const long long dphi = static_cast<long long>(phi.size()) - 1;
    for (long long i = modulus_ - 1; i >= dphi; --i) {
      if (p[i].is_zero()) continue;
      const Rational c = p[i];
      for (long long j = 0; j <= dphi; ++j)
        p[i - dphi + j] -= c * Rational(phi[j]);
    }
    for (long long i = 0; i < dphi; ++i)
      if (!p[i].is_zero()) return false;
    return true;
  }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
    return (a - b).is_zero();
  }
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) {
    return !(a == b);
  }

  // Certified sign in {-1, 0, +1}.  Zero is decided algebraically first, so
  // the interval refinement below always terminates on nonzero input.
  int sign() const {
    if (coeffs_.empty()) return 0;
    if (modulus_ == 1) return coeffs_.begin()->second.sign();
    if (modulus_ % 2 != 0)
      throw std::logic_error("CycloNumber::sign: odd modulus");
    if (is_zero()) return 0;

    // Fold conjugate pairs: value = c_0 - c_{N/2} + sum_j 2 c_j cos(2pi j/N).
    Rational exact = coeff(0) - coeff(modulus_ / 2);
    std::vector<std::pair<long long, Rational>> folded;
    for (const auto& [e, c] : coeffs_) {
      if (e == 0 || e == modulus_ / 2) continue;
      if (e > modulus_ / 2) {
        if (coeff(modulus_ - e) != c)
          throw std::logic_error("CycloNumber::sign: value is not real");
        continue;
      }
      folded.emplace_back(e, 2 * c);
    }

    for (int prec = 64;; prec *= 2) {
      if (prec > (1 << 22))
        throw std::logic_error("CycloNumber::sign: refinement runaway");
      RationalInterval v{exact, exact};
      for (const auto& [j, c] : folded)
        v = v + detail::cos_two_pi_frac(j, modulus_, prec).scaled(c);
      if (!v.contains_zero()) return v.lo.sign() > 0 ? 1 : -1;
    }
  }

  // Diagnostic form, e.g. "[N=10] 1/2 x^1 + 1/2 x^9".
  std::string to_string() const {
    std::string s = "[N=" + std::to_string(modulus_) + "]";
    if (coeffs_.empty()) return s + " 0";
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
      s += first ? " " : " + ";
      s += fraction_string(c);
      if (e != 0) s += " x^" + std::to_string(e);
      first = false;
    }
    return s;
  }

 private:
  CycloNumber lifted(long long L) const {
    if (L == modulus_) return *this;
    CycloNumber r;
    r.modulus_ = L;
    const long long f = L / modulus_;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e * f] = c;
    return r;
  }

  void accumulate(long long e, const Rational& c) {
    auto [it, fresh] = coeffs_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  long long modulus_;                    // N: exponents live in [0, N)
  std::map<long long, Rational> coeffs_;  // exponent -> nonzero coefficient
};

}  // namespace cxorb
