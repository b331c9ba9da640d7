#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace fzeta {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(const Int& i) { return i.template convert_to<double>(); }

/// "p/q" (or just "p" when q == 1), for JSON/CSV emission.
inline std::string rational_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace fzeta
