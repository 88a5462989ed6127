#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace orbicurve {

using Int = boost::multiprecision::cpp_int;

// Always in lowest terms with positive denominator (enforced by the backend).
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

// The two-argument Rational constructor rejects negative denominators.
inline Rational make_rat(Int n, Int d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

inline std::string rat_str(const Rational& q) {
  if (rat_den(q) == 1) return rat_num(q).str();
  return rat_num(q).str() + "/" + rat_den(q).str();
}

inline double rat_double(const Rational& q) { return q.convert_to<double>(); }

// Floor division; denominator of a Rational is always positive.
inline Int rat_floor(const Rational& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int t = n / d;
  if (n % d != 0 && n < 0) --t;
  return t;
}

inline Int rat_ceil(const Rational& q) { return -rat_floor(-q); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace orbicurve
