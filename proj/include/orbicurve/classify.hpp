#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "orbifold.hpp"
#include "rational.hpp"

namespace orbicurve {

// Why a compact orbifold curve is or is not hyperbolic. Hyperbolic cases
// carry DegPositive, NonCompactifiable, or InfiniteSupport; the remaining
// codes name the non-hyperbolic shapes on the compactified model.
enum class ClassificationReason {
  DegPositive,
  EllipticEmpty,
  P1AtMostTwoPoints,
  P1SphericalTriple,
  P1_2222,
  DegNonpositiveOther,
  NonCompactifiable,
  InfiniteSupport,
};

inline const char* reason_code(ClassificationReason r) {
  switch (r) {
    case ClassificationReason::DegPositive: return "DEG_POSITIVE";
    case ClassificationReason::EllipticEmpty: return "ELLIPTIC_EMPTY";
    case ClassificationReason::P1AtMostTwoPoints: return "P1_AT_MOST_TWO_POINTS";
    case ClassificationReason::P1SphericalTriple: return "P1_SPHERICAL_TRIPLE";
    case ClassificationReason::P1_2222: return "P1_2222";
    case ClassificationReason::DegNonpositiveOther: return "DEG_NONPOSITIVE_OTHER";
    case ClassificationReason::NonCompactifiable: return "NONCOMPACTIFIABLE";
    default: return "INFINITE_SUPPORT";
  }
}

struct ClassificationVerdict {
  bool hyperbolic = false;
  // In dimension one the non-classical and classical notions coincide, so
  // this always equals `hyperbolic`; both fields are kept because consumers
  // of the verdict ask the two questions separately.
  bool classical_hyperbolic = false;
  ClassificationReason reason = ClassificationReason::DegPositive;
  std::optional<Rational> degree;  // canonical degree, when defined
  std::string notes;
};

// True unless the orbifold is a projective line with a single marked point,
// or with exactly two marked points of different multiplicities: those two
// shapes admit no finite etale cover by an honest curve.
inline bool unfolding_exists(const OrbifoldCurve& o) {
  if (!o.base.has_genus())
    throw PremiseError("unfolding existence: the base curve is not compact");
  if (!o.compact() || o.infinite_support)
    throw PremiseError("unfolding existence: the orbifold must be compact");
  if (o.base.genus() != 0) return true;
  const auto& terms = o.delta.terms();
  if (terms.size() == 1) return false;
  if (terms.size() == 2) {
    auto it = terms.begin();
    Multiplicity m = it->second;
    Multiplicity n = std::next(it)->second;
    return m == n;
  }
  return true;
}

namespace classify_detail {

// Point multiplicities of the compactified model: finite values for finite
// marks, nullopt for punctures and infinite marks (weight 1).
inline std::vector<std::optional<long long>> point_multiplicities(const OrbifoldCurve& o) {
  std::vector<std::optional<long long>> mults;
  for (const auto& [p, m] : o.delta.terms()) {
    if (m.is_infinite())
      mults.push_back(std::nullopt);
    else
      mults.push_back(m.value());
  }
  for (int i = 0; i < o.punctures; ++i) mults.push_back(std::nullopt);
  std::sort(mults.begin(), mults.end(),
            [](const std::optional<long long>& a, const std::optional<long long>& b) {
              if (a && b) return *a < *b;
              return a.has_value() && !b.has_value();  // finite before infinite
            });
  return mults;
}

inline std::string triple_str(const std::vector<std::optional<long long>>& m) {
  std::string s = "(";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += m[i] ? std::to_string(*m[i]) : "inf";
  }
  return s + ")";
}

inline bool in_flat_or_platonic_list(const std::vector<std::optional<long long>>& m) {
  if (m.size() != 3 || !m[0] || !m[1] || !m[2]) return false;
  long long p = *m[0], q = *m[1], r = *m[2];
  return (p == 2 && q == 3 && (r == 4 || r == 5 || r == 6)) ||
         (p == 2 && q == 4 && r == 4) || (p == 3 && q == 3 && r == 3);
}

}  // namespace classify_detail

// Decides hyperbolicity by the degree criterion: a compactifiable orbifold
// with finite support is hyperbolic iff deg(K + Delta) plus the puncture
// count is positive; everything else is hyperbolic outright. The reason code
// labels which exceptional shape a non-hyperbolic orbifold has.
inline ClassificationVerdict classify(const OrbifoldCurve& o) {
  using classify_detail::point_multiplicities;
  ClassificationVerdict v;
  if (!o.base.has_genus()) {
    v.hyperbolic = v.classical_hyperbolic = true;
    v.reason = ClassificationReason::NonCompactifiable;
    return v;
  }
  if (o.infinite_support) {
    v.hyperbolic = v.classical_hyperbolic = true;
    v.reason = ClassificationReason::InfiniteSupport;
    return v;
  }

  Rational d = canonical_degree(o);
  v.degree = d;
  if (d > 0) {
    v.hyperbolic = v.classical_hyperbolic = true;
    v.reason = ClassificationReason::DegPositive;
    return v;
  }

  v.hyperbolic = v.classical_hyperbolic = false;
  int g = o.base.genus();
  std::vector<std::optional<long long>> mults = point_multiplicities(o);
  if (g == 1 && mults.empty()) {
    v.reason = ClassificationReason::EllipticEmpty;
  } else if (g == 0 && mults.size() <= 2) {
    v.reason = ClassificationReason::P1AtMostTwoPoints;
  } else if (g == 0 && mults.size() == 3) {
    v.reason = ClassificationReason::P1SphericalTriple;
    if (!classify_detail::in_flat_or_platonic_list(mults))
      v.notes = "triple " + classify_detail::triple_str(mults) +
                " is non-hyperbolic by the degree criterion although outside the"
                " list (2,3,4), (2,3,5), (2,3,6), (2,4,4), (3,3,3)";
  } else if (g == 0 && mults.size() == 4 &&
             std::all_of(mults.begin(), mults.end(),
                         [](const std::optional<long long>& m) { return m && *m == 2; })) {
    v.reason = ClassificationReason::P1_2222;
  } else {
    v.reason = ClassificationReason::DegNonpositiveOther;
  }

  // The non-hyperbolic argument for three or more marked points passes
  // through an etale cover by an honest curve, so such a cover must exist
  // whenever those reason codes are produced.
  if ((v.reason == ClassificationReason::P1SphericalTriple ||
       v.reason == ClassificationReason::P1_2222) &&
      o.compact() && !unfolding_exists(o))
    throw std::logic_error("classification: a marked triple without an unfolding");
  return v;
}

}  // namespace orbicurve
