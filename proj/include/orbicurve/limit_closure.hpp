#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "morphism.hpp"
#include "poly_parser.hpp"
#include "polynomial.hpp"
#include "rational_map.hpp"

namespace orbicurve {

// A rational family f_t(z): numerator and denominator are polynomials in z
// whose coefficients are polynomials in the parameter t.
using FamilyPoly = Poly<Polynomial>;

struct FamilyMap {
  FamilyPoly num;
  FamilyPoly den;
};

namespace family_detail {

struct FamilyAlgebra {
  using P = FamilyPoly;
  static P constant(const Rational& r) { return P(Polynomial(r)); }
  static P var(size_t v) {
    if (v == 0) return P::var();            // z
    return P(Polynomial::var());            // t, as a constant z-coefficient
  }
  static int size(const P& p) {
    int s = p.degree();
    for (const auto& c : p.coeffs()) s = std::max(s, c.degree());
    return s;
  }
};

// Order of vanishing in t (minimum over z-coefficients); pre: p nonzero.
inline int t_order(const FamilyPoly& p) {
  int best = -1;
  for (const auto& c : p.coeffs()) {
    if (c.is_zero()) continue;
    int ord = 0;
    while (c[ord] == 0) ++ord;
    if (best < 0 || ord < best) best = ord;
  }
  return best;
}

inline FamilyPoly divide_by_t_power(const FamilyPoly& p, int k) {
  if (k == 0) return p;
  std::vector<Polynomial> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (c.is_zero()) {
      out.push_back(c);
      continue;
    }
    std::vector<Rational> v(c.coeffs().begin() + k, c.coeffs().end());
    out.push_back(Polynomial::from_coeffs(std::move(v)));
  }
  return FamilyPoly::from_coeffs(std::move(out));
}

inline Polynomial at_parameter(const FamilyPoly& p, const Rational& t) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto& coeff : p.coeffs()) c.push_back(coeff.eval(t));
  return Polynomial::from_coeffs(std::move(c));
}

}  // namespace family_detail

// Parses a family in the variables z (curve) and t (parameter); a top-level
// '/' splits numerator and denominator, as for plain rational maps.
inline FamilyMap parse_family(std::string_view text) {
  parser_detail::BasicParser<family_detail::FamilyAlgebra> p(text, "zt");
  FamilyPoly num = p.parse_expr();
  if (!p.at_slash()) {
    p.expect_end();
    if (num.is_zero()) throw InputError("family: numerator is identically zero");
    return {num, family_detail::FamilyAlgebra::constant(Rational(1))};
  }
  p.eat_slash();
  FamilyPoly den = p.parse_expr();
  p.expect_end();
  if (den.is_zero()) throw InputError("family: denominator polynomial is zero");
  if (num.is_zero()) throw InputError("family: numerator is identically zero");
  return {num, den};
}

// The member of the family at a fixed parameter value.
inline RationalMap family_at(const FamilyMap& fam, const Rational& t) {
  Polynomial num = family_detail::at_parameter(fam.num, t);
  Polynomial den = family_detail::at_parameter(fam.den, t);
  if (den.is_zero())
    throw PremiseError("family: denominator vanishes identically at t = " + rat_str(t));
  return RationalMap(std::move(num), std::move(den));
}

// The limit member at t = 0, after clearing the common power of t.
inline RationalMap family_limit(const FamilyMap& fam) {
  int k = std::min(family_detail::t_order(fam.num), family_detail::t_order(fam.den));
  FamilyPoly num = family_detail::divide_by_t_power(fam.num, k);
  FamilyPoly den = family_detail::divide_by_t_power(fam.den, k);
  Polynomial num0 = family_detail::at_parameter(num, Rational(0));
  Polynomial den0 = family_detail::at_parameter(den, Rational(0));
  if (den0.is_zero())
    throw PremiseError(
        "family degenerates: denominator vanishes at t = 0 after normalization");
  return RationalMap(std::move(num0), std::move(den0));
}

enum class LimitBranch { Morphism, ImageInSupport };

struct LimitClosureReport {
  std::vector<Rational> samples;                 // parameter values checked
  std::vector<MorphismVerdict> sample_verdicts;  // all ok (premise)
  RationalMap limit;                             // f_0 after clearing t-powers
  bool limit_constant;
  LimitBranch branch;
  MorphismVerdict limit_verdict;  // trivial (ok, no witnesses) for constants
};

// Orbifold morphisms are closed under rational degeneration: if every member
// f_t (t != 0 small) is an orbifold morphism, the limit f_0 either has image
// inside the target support or is itself an orbifold morphism. The premise is
// checked exactly at the sampled parameters.
inline LimitClosureReport limit_closure_check(
    const FamilyMap& fam, const OrbifoldDivisor& delta, const OrbifoldDivisor& delta_prime,
    MorphismMode mode,
    std::vector<Rational> samples = {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
  if (samples.empty()) throw InputError("limit closure: no sample parameters");
  std::vector<MorphismVerdict> sample_verdicts;
  for (const Rational& t : samples) {
    RationalMap ft = family_at(fam, t);
    if (ft.is_constant())
      throw PremiseError("limit closure: family member is constant at t = " + rat_str(t));
    MorphismVerdict v = check_morphism(ft, delta, delta_prime, mode);
    if (!v.ok)
      throw PremiseError("limit closure: family member is not an orbifold morphism at t = " +
                         rat_str(t));
    sample_verdicts.push_back(std::move(v));
  }

  RationalMap f0 = family_limit(fam);
  if (f0.is_constant()) {
    // Reduced constant map: both polynomials have degree <= 0.
    Rational value = f0.num()[0] / f0.den()[0];
    bool in_support = delta_prime.at(Place::of_rational(value)).has_value();
    MorphismVerdict trivial;
    trivial.ok = true;
    return {std::move(samples), std::move(sample_verdicts), f0, true,
            in_support ? LimitBranch::ImageInSupport : LimitBranch::Morphism, trivial};
  }
  MorphismVerdict v = check_morphism(f0, delta, delta_prime, mode);
  return {std::move(samples), std::move(sample_verdicts), f0, false, LimitBranch::Morphism,
          std::move(v)};
}

}  // namespace orbicurve
