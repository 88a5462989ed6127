#pragma once

#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divisor.hpp"
#include "errors.hpp"
#include "factorize.hpp"
#include "orbifold.hpp"
#include "place.hpp"
#include "rational_map.hpp"
#include "roots.hpp"

namespace orbicurve {

// Two flavours of the local multiplicity condition: NonClassical compares by
// >=, Classical by divisibility.
enum class MorphismMode { NonClassical, Classical };

inline std::string mode_name(MorphismMode mode) {
  return mode == MorphismMode::NonClassical ? "nonclassical" : "classical";
}

// Local condition at a source point of multiplicity n mapping with local
// multiplicity d onto a target point of multiplicity m. A source point of
// infinite multiplicity is a puncture: it lies outside the actual domain, so
// every condition there is vacuously satisfied. A target of infinite
// multiplicity admits no finite cover of its neighbourhood, so it forces the
// fiber out of the domain (n must be infinite).
inline bool local_condition(Multiplicity n, long long d, Multiplicity m, MorphismMode mode) {
  if (d < 1) throw InputError("local condition: multiplicity d must be >= 1");
  if (n.is_infinite()) return true;
  if (m.is_infinite()) return false;
  long long nd = n.value() * d;
  if (mode == MorphismMode::NonClassical) return nd >= m.value();
  return nd % m.value() == 0;
}

struct MorphismWitness {
  Place source_place;
  Place target_place;
  long long multiplicity;    // local pullback multiplicity d
  Multiplicity source_mult;  // n (1 off the source divisor)
  Multiplicity target_mult;  // m'
  std::string condition;     // the instantiated requirement, e.g. "4 >= 2"
  bool satisfied;
};

struct MorphismVerdict {
  bool ok = false;
  bool image_in_support = false;
  std::vector<MorphismWitness> witnesses;
};

namespace morphism_detail {

inline long long as_int(const Rational& r) {
  return rat_num(r).convert_to<long long>();  // pre: integral
}

inline std::string condition_str(Multiplicity n, long long d, Multiplicity m,
                                 MorphismMode mode) {
  std::string nd = n.is_infinite() ? "inf" : std::to_string(n.value() * d);
  if (mode == MorphismMode::NonClassical) return nd + " >= " + m.str();
  return m.str() + " | " + nd;
}

}  // namespace morphism_detail

// Checks the orbifold morphism conditions for f between divisors on the
// projective line: over every target component, every fiber place must
// satisfy the local condition. A non-constant rational map is surjective, so
// its image is never contained in the target support.
inline MorphismVerdict check_morphism(const RationalMap& f, const OrbifoldDivisor& delta,
                                      const OrbifoldDivisor& delta_prime,
                                      MorphismMode mode) {
  if (f.is_constant()) throw PremiseError("morphism check: map must be non-constant");
  MorphismVerdict v;
  v.ok = true;
  for (const auto& [q, m] : delta_prime.terms()) {
    Divisor fiber = pullback_place(f, q);
    for (const auto& [p, e] : fiber.terms()) {
      long long d = morphism_detail::as_int(e);
      Multiplicity n = delta.at(p).value_or(Multiplicity::finite(1));
      bool sat = local_condition(n, d, m, mode);
      v.witnesses.push_back(
          {p, q, d, n, m, morphism_detail::condition_str(n, d, m, mode), sat});
      v.ok = v.ok && sat;
    }
  }
  return v;
}

inline MorphismVerdict check_morphism(const RationalMap& f, const OrbifoldCurve& source,
                                      const OrbifoldCurve& target, MorphismMode mode) {
  if (source.base.kind() != BaseCurve::Kind::P1 ||
      target.base.kind() != BaseCurve::Kind::P1)
    throw PremiseError("morphism check: rational maps act between projective lines");
  if (source.infinite_support || target.infinite_support)
    throw PremiseError("morphism check: infinite orbifold support is not checkable");
  if (source.punctures != 0 || target.punctures != 0)
    throw PremiseError(
        "morphism check: punctures must be located as infinite-multiplicity components");
  return check_morphism(f, source.delta, target.delta, mode);
}

// R_f = sum (e_p - 1)[p] over all places, including the place at infinity.
// Away from infinity e_p - 1 is the vanishing order of the Wronskian
// u'v - uv' (this covers ramified poles too); at infinity the local
// multiplicity falls out of a degree comparison.
inline Divisor ramification_divisor(const RationalMap& f) {
  if (f.is_constant())
    throw PremiseError("ramification divisor: map must be non-constant");
  const Polynomial& u = f.num();
  const Polynomial& v = f.den();
  Polynomial w = u.derivative() * v - u * v.derivative();
  Divisor r;
  if (w.degree() >= 1) {
    for (const auto& [g, e] : factorize(w).factors)
      r.add(Place::finite_unchecked(g), Rational(e));
  }
  int k = u.degree();
  int l = v.degree();
  long long e_inf;
  if (k != l) {
    e_inf = std::abs(k - l);
  } else {
    Polynomial diff = u - (u.lc() / v.lc()) * v;
    e_inf = l - diff.degree();
  }
  if (e_inf >= 2) r.add(Place::infinity(), Rational(e_inf - 1));
  return r;
}

struct CompositionCheck {
  Divisor lhs;  // R_{g o f}
  Divisor rhs;  // R_f + f^* R_g
  bool equal;
};

// The chain rule for ramification divisors of maps between curves (the
// correction term for fibers dominating a curve never appears in relative
// dimension zero).
inline CompositionCheck composition_rule_check(const RationalMap& f, const RationalMap& g) {
  if (f.is_constant() || g.is_constant())
    throw PremiseError("composition rule: maps must be non-constant");
  RationalMap gf = g.compose(f);
  if (gf.is_constant())
    throw PremiseError("composition rule: composition degenerates to a constant");
  Divisor lhs = ramification_divisor(gf);
  Divisor rhs = ramification_divisor(f) + pullback_divisor(f, ramification_divisor(g));
  return {lhs, rhs, lhs == rhs};
}

struct CriterionResult {
  Divisor divisor;  // R_f + Delta - f^* Delta'
  bool nonnegative;
};

// Divisor form of the morphism conditions: f is a non-classical orbifold
// morphism (X/Delta) -> (X'/Delta') iff R_f + Delta - f^*Delta' >= 0.
inline CriterionResult divisor_criterion(const RationalMap& f, const OrbifoldDivisor& delta,
                                         const OrbifoldDivisor& delta_prime) {
  if (f.is_constant())
    throw PremiseError("divisor criterion: map must be non-constant");
  Divisor d = ramification_divisor(f) + delta.weights() -
              pullback_divisor(f, delta_prime.weights());
  return {d, d.is_effective()};
}

struct DegreeInequality {
  Rational lhs;  // deg(K + Delta) upstairs
  Rational rhs;  // deg(f) * deg(K' + Delta') downstairs
  bool holds;
};

// Orbifold morphisms can only map down in canonical degree:
// deg(K + Delta) >= deg(f) * deg(K' + Delta').
inline DegreeInequality degree_inequality_check(const RationalMap& f,
                                                const OrbifoldCurve& source,
                                                const OrbifoldCurve& target) {
  if (f.is_constant())
    throw PremiseError("degree inequality: map must be non-constant");
  Rational lhs = canonical_degree(source);
  Rational rhs = Rational(f.degree()) * canonical_degree(target);
  return {lhs, rhs, lhs >= rhs};
}

namespace morphism_detail {

inline Polynomial reversed(const Polynomial& p) {
  std::vector<Rational> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Polynomial::from_coeffs(std::move(c));
}

// Decides whether an irreducible (monic) factor has a root of modulus < 1.
// Degrees 1 and 2 are decided exactly; higher degrees fall back to certified
// numerics. Near-circle ambiguity is resolved only for self-reciprocal
// factors, whose near-circle roots are genuinely on the circle for any
// moderate degree and height (off-circle roots of reciprocal integer
// polynomials come in pairs r, 1/r with |r| bounded away from 1).
inline bool irreducible_has_root_in_unit_disc(const Polynomial& q) {
  int n = q.degree();
  if (n == 1) return rat_abs(q[0]) < 1;
  if (n == 2) {
    const Rational a = q[2], b = q[1], c = q[0];
    Rational disc = b * b - 4 * a * c;
    if (disc < 0) return c / a < 1;  // conjugate pair of modulus sqrt(c/a)
    Rational q1 = a + b + c;         // q(1); nonzero: q has no rational root
    Rational qm1 = a - b + c;        // q(-1)
    if (q1 * qm1 < 0) return true;   // exactly one real root inside (-1, 1)
    return a * q1 > 0 && rat_abs(b) < 2 * rat_abs(a);  // both roots inside
  }
  bool ambiguous = false;
  for (const auto& z : complex_roots(q)) {
    double m = std::abs(z);
    if (m < 1.0 - 1e-9) return true;
    if (m <= 1.0 + 1e-9) ambiguous = true;
  }
  if (!ambiguous) return false;
  Polynomial rev = reversed(q);
  if (q == monic(rev) || q == monic(Rational(-1) * rev)) return false;
  throw NumericError("unit-disc root test: root too close to the circle to certify");
}

inline bool has_root_in_open_unit_disc(const Polynomial& p) {
  if (p.degree() < 1) return false;
  for (const auto& [g, e] : factorize(p).factors) {
    (void)e;
    if (irreducible_has_root_in_unit_disc(g)) return true;
  }
  return false;
}

inline Multiplicity origin_multiplicity(const OrbifoldDivisor& d) {
  for (const auto& [p, m] : d.terms()) {
    if (!(p == Place::of_rational(Rational(0))))
      throw PremiseError("etale check: disc orbifolds carry their point at the origin");
    return m;
  }
  return Multiplicity::finite(1);
}

}  // namespace morphism_detail

// Etale test. Between projective lines this is the exact divisor identity
// R_f = f^*Delta' - Delta (plus the morphism conditions). Between discs it is
// the germ criterion: f(0) = 0, n * ord_0(f) = m, and f has no critical point
// elsewhere in the open unit disc; that f maps the disc into the disc is a
// premise left to the caller.
inline bool etale_check(const RationalMap& f, const OrbifoldCurve& source,
                        const OrbifoldCurve& target) {
  if (f.is_constant()) throw PremiseError("etale check: map must be non-constant");
  const auto sk = source.base.kind();
  const auto tk = target.base.kind();
  if (sk == BaseCurve::Kind::P1 && tk == BaseCurve::Kind::P1) {
    Divisor lhs = ramification_divisor(f);
    Divisor rhs =
        pullback_divisor(f, target.delta.weights()) - source.delta.weights();
    return lhs == rhs &&
           check_morphism(f, source.delta, target.delta, MorphismMode::NonClassical).ok;
  }
  if (sk == BaseCurve::Kind::Disc && tk == BaseCurve::Kind::Disc) {
    Multiplicity n = morphism_detail::origin_multiplicity(source.delta);
    Multiplicity m = morphism_detail::origin_multiplicity(target.delta);
    auto value = f.eval(Rational(0));
    if (!value || *value != 0) return false;
    int d0 = 0;
    while (f.num()[d0] == 0) ++d0;  // ord_0 of the numerator; finite since f != 0
    if (n.is_infinite() || m.is_infinite()) {
      if (!(n.is_infinite() && m.is_infinite())) return false;
    } else if (n.value() * d0 != m.value()) {
      return false;
    }
    Polynomial w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
    if (d0 > 1) {  // strip the exact z^(d0 - 1) factor carried by the origin
      std::vector<Rational> c(w.coeffs().begin() + (d0 - 1), w.coeffs().end());
      w = Polynomial::from_coeffs(std::move(c));
    }
    return !morphism_detail::has_root_in_open_unit_disc(w);
  }
  throw PremiseError("etale check: supported base pairs are line/line and disc/disc");
}

// The place of the target hit by every geometric point of the source place p:
// for an irreducible monic p this is the unique irreducible factor of
// M(w) = prod_{p(a)=0} (u(a) - w v(a)), computed exactly by interpolation of
// scalar resultants.
inline Place image_place(const RationalMap& f, const Place& p) {
  if (f.is_constant()) throw PremiseError("image place: map must be non-constant");
  const Polynomial& u = f.num();
  const Polynomial& v = f.den();
  if (p.is_infinity()) {
    int k = u.degree();
    int l = v.degree();
    if (k > l) return Place::infinity();
    if (k < l) return Place::of_rational(Rational(0));
    return Place::of_rational(u.lc() / v.lc());
  }
  const Polynomial& pp = p.poly();
  if (pp.degree() == 1) {
    auto value = f.eval(-pp[0]);
    return value ? Place::of_rational(*value) : Place::infinity();
  }
  if (divmod(v, pp).second.is_zero()) return Place::infinity();
  int k = pp.degree();
  std::vector<std::pair<Rational, Rational>> nodes;
  for (int j = 0; j <= k; ++j)
    nodes.emplace_back(Rational(j), resultant(pp, u - Rational(j) * v));
  Factorization fac = factorize(interpolate(nodes));
  if (fac.factors.size() != 1)
    throw std::logic_error("image place: fiber norm is not a prime power");
  return Place::finite_unchecked(fac.factors[0].first);
}

// Maximal target divisor making f an orbifold morphism from the trivial
// orbifold: over each critical value take the minimum fiber multiplicity
// (NonClassical) or their gcd (Classical); plain points contribute nothing.
inline OrbifoldDivisor orbifold_base(const RationalMap& f, MorphismMode mode) {
  if (f.is_constant()) throw PremiseError("orbifold base: map must be non-constant");
  std::set<Place> values;
  Divisor ram = ramification_divisor(f);
  for (const auto& [p, e] : ram.terms()) {
    (void)e;
    values.insert(image_place(f, p));
  }
  OrbifoldDivisor base;
  for (const Place& q : values) {
    long long m = 0;
    Divisor fiber = pullback_place(f, q);
    for (const auto& [p, e] : fiber.terms()) {
      (void)p;
      long long d = morphism_detail::as_int(e);
      if (mode == MorphismMode::NonClassical)
        m = (m == 0) ? d : std::min(m, d);
      else
        m = std::gcd(m, d);
    }
    if (m >= 2) base.set(q, Multiplicity::finite(m));
  }
  return base;
}

}  // namespace orbicurve
