#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "function_field.hpp"
#include "orbifold.hpp"
#include "place.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace orbicurve {

// The four explicit euclidean signatures realized as elliptic covers of the
// projective line: (2,2,2,2;lambda), (2,4,4), (2,3,6), (3,3,3).
enum class UnfoldingPreset { Sig2222, Sig244, Sig236, Sig333 };

inline std::string preset_name(UnfoldingPreset p) {
  switch (p) {
    case UnfoldingPreset::Sig2222: return "2222";
    case UnfoldingPreset::Sig244: return "244";
    case UnfoldingPreset::Sig236: return "236";
    default: return "333";
  }
}

inline UnfoldingPreset preset_from_name(const std::string& s) {
  if (s == "2222") return UnfoldingPreset::Sig2222;
  if (s == "244") return UnfoldingPreset::Sig244;
  if (s == "236") return UnfoldingPreset::Sig236;
  if (s == "333") return UnfoldingPreset::Sig333;
  throw InputError("unfolding preset: expected one of 2222, 244, 236, 333");
}

// One marked fiber of the covering: the target value (nullopt = infinity) and
// the points above it with their local multiplicities.
struct FiberProfile {
  std::optional<Rational> value;
  std::vector<std::pair<EllipticPoint, long long>> points;
};

// An elliptic curve covering the projective line, with the orbifold structure
// on the target and the computed ramification profile over its support.
struct CoveringData {
  EllipticCurve curve;
  EllipticFunction map;
  OrbifoldCurve target;
  std::vector<FiberProfile> profile;
  long long degree;
};

namespace unfolding_detail {

using Marks = std::vector<std::pair<std::optional<Rational>, long long>>;

inline CoveringData assemble(EllipticCurve curve, EllipticFunction map, const Marks& marks) {
  CoveringData data{curve, std::move(map), OrbifoldCurve{}, {}, 0};
  for (const auto& [value, m] : marks) {
    Place q = value ? Place::of_rational(*value) : Place::infinity();
    data.target.delta.set(q, Multiplicity::finite(m));
    data.profile.push_back({value, fiber_divisor(data.curve, data.map, value)});
  }
  data.degree = function_degree(data.curve, data.map);
  return data;
}

inline EllipticFunction x_power(unsigned k) {
  return EllipticFunction::of_x(
      RationalMap(poly_pow(Polynomial::var(), k), Polynomial(Rational(1))));
}

}  // namespace unfolding_detail

inline CoveringData build_unfolding(UnfoldingPreset preset,
                                    std::optional<Rational> lambda = std::nullopt) {
  using unfolding_detail::assemble;
  using unfolding_detail::x_power;
  if (preset == UnfoldingPreset::Sig2222) {
    if (!lambda)
      throw InputError("unfolding: the (2,2,2,2) preset needs a lambda parameter");
    if (*lambda == 0 || *lambda == 1)
      throw InputError("unfolding: lambda must differ from 0 and 1");
  } else if (lambda) {
    throw InputError("unfolding: lambda applies only to the (2,2,2,2) preset");
  }

  switch (preset) {
    case UnfoldingPreset::Sig2222: {
      // y^2 = x(x - 1)(x - lambda), double cover via x.
      Rational l = *lambda;
      EllipticCurve curve(
          Polynomial::from_coeffs({Rational(0), l, -(Rational(1) + l), Rational(1)}));
      return assemble(curve, x_power(1),
                      {{Rational(0), 2}, {Rational(1), 2}, {l, 2}, {std::nullopt, 2}});
    }
    case UnfoldingPreset::Sig244:
      return assemble(EllipticCurve::parse("x^3 - x"), x_power(2),
                      {{Rational(0), 4}, {Rational(1), 2}, {std::nullopt, 4}});
    case UnfoldingPreset::Sig236:
      // The covering function equals y^2 on the curve; the x-only form keeps
      // all computations inside Q(x).
      return assemble(EllipticCurve::parse("x^3 + 1"),
                      EllipticFunction::of_x(RationalMap::parse("x^3 + 1", 'x')),
                      {{Rational(0), 2}, {Rational(1), 3}, {std::nullopt, 6}});
    default:
      return assemble(EllipticCurve::parse("x^3 + 1"), EllipticFunction::y_coordinate(),
                      {{Rational(-1), 3}, {Rational(1), 3}, {std::nullopt, 3}});
  }
}

// Checks that the covering is an unfolding: the ramification divisor computed
// from the profile equals the pullback of the target weights (empty source
// divisor), every marked fiber sums to the degree, and Riemann-Hurwitz for a
// genus-1 cover of a genus-0 base (deg R = 2 deg) accounts for all
// ramification, so none hides outside the profile.
inline bool verify_etale_cover(const CoveringData& data) {
  if (data.degree < 1) return false;
  long long ram_degree = 0;
  for (const auto& fiber : data.profile) {
    Place q = fiber.value ? Place::of_rational(*fiber.value) : Place::infinity();
    std::optional<Multiplicity> m = data.target.delta.at(q);
    if (!m || m->is_infinite()) return false;
    long long fiber_total = 0;
    for (const auto& [point, d] : fiber.points) {
      // R = pi* Delta' pointwise reduces to d = m at every point above q.
      if (d != m->value()) return false;
      ram_degree += d - 1;
      fiber_total += d;
    }
    if (fiber_total != data.degree) return false;
  }
  if (data.profile.size() != data.target.delta.terms().size()) return false;
  return ram_degree == 2 * data.degree;
}

}  // namespace orbicurve
