#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace cxorb {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" with the denominator omitted when it is 1; the form used in reports.
inline std::string fraction_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace cxorb
