#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "morphism.hpp"
#include "orbifold.hpp"
#include "place.hpp"
#include "rational_map.hpp"
#include "roots.hpp"
#include "squarefree.hpp"

namespace orbicurve {

namespace nevanlinna_detail {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

inline std::vector<Cplx> to_complex(const Polynomial& p) {
  std::vector<Cplx> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(rat_double(x), 0.0);
  return c;
}

inline Cplx horner(const std::vector<Cplx>& c, Cplx z) {
  Cplx r(0.0, 0.0);
  for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

// Finite value of a degree-one place, read off its monic polynomial z - a.
inline Rational place_value(const Place& q) {
  if (q.is_infinity() || q.poly().degree() != 1)
    throw InputError("counting function: the target must be a rational point or infinity");
  return -q.poly()[0];
}

// Polynomial whose finite roots are exactly the finite preimages of q,
// with the fiber multiplicities as root multiplicities.
inline Polynomial local_equation(const RationalMap& f, const Place& q) {
  if (q.is_infinity()) return f.den();
  Polynomial loc = f.num() - place_value(q) * f.den();
  if (loc.is_zero())
    throw PremiseError("counting function: the map takes the target value identically");
  return loc;
}

struct PreimageRoot {
  double modulus;
  int mult;
};

inline std::vector<PreimageRoot> finite_preimages(const RationalMap& f, const Place& q) {
  Polynomial loc = local_equation(f, q);
  std::vector<PreimageRoot> out;
  if (loc.degree() < 1) return out;
  for (const auto& [part, mult] : squarefree_decompose(loc)) {
    if (part.degree() < 1) continue;
    for (const auto& z : complex_roots(part)) out.push_back({std::abs(z), mult});
  }
  std::sort(out.begin(), out.end(), [](const PreimageRoot& a, const PreimageRoot& b) {
    if (a.modulus != b.modulus) return a.modulus < b.modulus;
    return a.mult < b.mult;
  });
  return out;
}

// Pullback of the unit-mass curvature form of the sphere, written without the
// indeterminate pole form: |f'|^2 / (pi (1+|f|^2)^2) = |p'q - pq'|^2 /
// (pi (|p|^2 + |q|^2)^2). The numerator is the Wronskian, so the coprimality
// of p and q keeps the denominator bounded away from zero on compact sets.
class SphericalDensity {
 public:
  explicit SphericalDensity(const RationalMap& f)
      : p_(to_complex(f.num())),
        q_(to_complex(f.den())),
        w_(to_complex(f.num().derivative() * f.den() - f.num() * f.den().derivative())) {}

  double operator()(Cplx z) const {
    double wn = std::norm(horner(w_, z));
    double pq = std::norm(horner(p_, z)) + std::norm(horner(q_, z));
    return wn / (kPi * pq * pq);
  }

 private:
  std::vector<Cplx> p_, q_, w_;
};

struct QuadValue {
  double value = 0.0;
  double error = 0.0;
};

// Integral of a smooth 2pi-periodic function over one period: uniform
// trapezoid sums with doubling, which converge spectrally for analytic
// integrands. Summation order is fixed, so results are deterministic.
template <typename F>
QuadValue periodic_integral(const F& h, double tol) {
  size_t n = 16;
  double prev = 0.0;
  for (size_t i = 0; i < n; ++i) prev += h(kTwoPi * double(i) / double(n));
  prev *= kTwoPi / double(n);
  for (int round = 0; round < 10; ++round) {
    n *= 2;
    double cur = 0.0;
    for (size_t i = 0; i < n; ++i) cur += h(kTwoPi * double(i) / double(n));
    cur *= kTwoPi / double(n);
    double err = std::abs(cur - prev);
    if (err <= tol * (std::abs(cur) + 1.0)) return {cur, err};
    prev = cur;
  }
  throw NumericError("circle quadrature did not converge (last step " +
                     std::to_string(std::abs(prev)) + ")");
}

}  // namespace nevanlinna_detail

struct CountingFunctions {
  std::vector<double> with_mult;  // N: every root weighted by its multiplicity
  std::vector<double> truncated;  // N1: every distinct root weighted once
};

// Logarithmically weighted root counts of the local equation of q under f:
// each finite preimage z_j inside the disc of radius r contributes
// log(r / max(1, |z_j|)), with or without its exact multiplicity. Roots
// inside the unit disc are clamped to the integration base radius 1.
inline CountingFunctions counting_functions(const RationalMap& f, const Place& q,
                                            const std::vector<double>& radii) {
  if (f.is_constant())
    throw PremiseError("counting function: map must be non-constant");
  for (double r : radii)
    if (!(r >= 1.0)) throw InputError("counting function: radii must be >= 1");
  auto roots = nevanlinna_detail::finite_preimages(f, q);
  CountingFunctions out;
  for (double r : radii) {
    double n = 0.0, n1 = 0.0;
    for (const auto& root : roots) {
      if (root.modulus >= r) continue;
      double w = std::log(r / std::max(1.0, root.modulus));
      n += double(root.mult) * w;
      n1 += w;
    }
    out.with_mult.push_back(n);
    out.truncated.push_back(n1);
  }
  return out;
}

struct CharacteristicValues {
  std::vector<double> value;
  std::vector<double> error;
};

// Spherical-area characteristic T(r): the density pulled back from the sphere
// is integrated over discs of radius t and averaged with weight dt/t from 1
// to r. Collapsing the t-integral per circular shell turns this into
//   T(r) = int_0^r  s * g(s) * log(r / max(1, s)) ds,
// with g(s) the circle integral of the density at radius s, computed by
// two-level polar quadrature: spectral trapezoid sums inside, adaptive
// Gauss-Kronrod outside, split at the weight kink s = 1.
inline CharacteristicValues characteristic_with_error(const RationalMap& f,
                                                      const std::vector<double>& radii,
                                                      double rel_tol = 1e-6) {
  using boost::math::quadrature::gauss_kronrod;
  namespace nd = nevanlinna_detail;
  for (double r : radii)
    if (!(r >= 1.0)) throw InputError("characteristic: radii must be >= 1");
  nd::SphericalDensity rho(f);
  const double inner_tol = 1e-11;
  auto shell = [&](double s) {
    auto on_circle = [&](double theta) {
      return rho(std::polar(s, theta));
    };
    return s * nd::periodic_integral(on_circle, inner_tol).value;
  };
  CharacteristicValues out;
  for (double r : radii) {
    double total = 0.0, err = 0.0;
    if (r > 1.0) {
      double lr = std::log(r);
      double e1 = 0.0;
      double inside = gauss_kronrod<double, 31>::integrate(shell, 0.0, 1.0, 12, 1e-9, &e1);
      auto weighted = [&](double s) { return shell(s) * std::log(r / s); };
      double e2 = 0.0;
      double outside = gauss_kronrod<double, 31>::integrate(weighted, 1.0, r, 12, 1e-9, &e2);
      total = lr * inside + outside;
      err = lr * e1 + e2 + inner_tol * (std::abs(total) + 1.0);
    }
    if (!std::isfinite(total) || err > rel_tol * (std::abs(total) + 1.0))
      throw NumericError("characteristic quadrature: achieved tolerance " +
                         std::to_string(err) + " exceeds target at r = " +
                         std::to_string(r));
    out.value.push_back(total);
    out.error.push_back(err);
  }
  return out;
}

inline std::vector<double> characteristic(const RationalMap& f,
                                          const std::vector<double>& radii) {
  return characteristic_with_error(f, radii).value;
}

namespace nevanlinna_detail {

// Evaluates log of the homogeneous pair (|p|^2 + |q|^2, |p - a q|^2) robustly.
struct CircleEvaluator {
  std::vector<Cplx> p, q;
  bool at_infinity = false;
  Cplx a;

  CircleEvaluator(const RationalMap& f, const Place& target)
      : p(to_complex(f.num())), q(to_complex(f.den())) {
    if (target.is_infinity()) {
      at_infinity = true;
    } else {
      a = Cplx(rat_double(place_value(target)), 0.0);
    }
  }

  // log+ |1/(f - a)| for finite a, log+ |f| at infinity.
  double log_plus(Cplx z) const {
    double lp = std::log(std::abs(horner(p, z)));
    double lq = std::log(std::abs(horner(q, z)));
    if (at_infinity) return std::max(0.0, lp - lq);
    double lr = std::log(std::abs(horner(p, z) - a * horner(q, z)));
    return std::max(0.0, lq - lr);
  }

  // log(1 / ||f(z), a||) for the chordal metric normalized to diameter 1.
  double log_chordal_inverse(Cplx z) const {
    double np = std::norm(horner(p, z));
    double nq = std::norm(horner(q, z));
    double half_log_scale = 0.5 * std::log(np + nq);
    if (at_infinity) return half_log_scale - 0.5 * std::log(nq);
    double lr = std::log(std::abs(horner(p, z) - a * horner(q, z)));
    return half_log_scale + 0.5 * std::log1p(std::norm(a)) - lr;
  }
};

template <typename F>
QuadValue circle_mean(const F& h, double r) {
  using boost::math::quadrature::gauss_kronrod;
  auto on_circle = [&](double theta) { return h(std::polar(r, theta)); };
  double err = 0.0;
  double v = gauss_kronrod<double, 31>::integrate(on_circle, 0.0, kTwoPi, 14, 1e-10, &err);
  if (!std::isfinite(v))
    throw NumericError("proximity quadrature: the target value lies on the sampled circle");
  return {v / kTwoPi, err / kTwoPi};
}

}  // namespace nevanlinna_detail

// Classical proximity m(r, q): the circle average of log+ |1/(f - q)|
// (log+ |f| when q is the infinite place). Nonnegative by construction.
inline nevanlinna_detail::QuadValue logplus_proximity(const RationalMap& f, const Place& q,
                                                      double r) {
  if (f.is_constant()) throw PremiseError("proximity: map must be non-constant");
  nevanlinna_detail::CircleEvaluator ev(f, q);
  return nevanlinna_detail::circle_mean(
      [&](nevanlinna_detail::Cplx z) { return ev.log_plus(z); }, r);
}

// Spherical proximity: the circle average of log(1/||f, q||) in the chordal
// metric. Satisfies T(r) = N(r, q) + m_sph(r, q) - m_sph(1, q) exactly for the
// spherical-area characteristic, which the sanity tests exploit.
inline nevanlinna_detail::QuadValue spherical_proximity(const RationalMap& f, const Place& q,
                                                        double r) {
  if (f.is_constant()) throw PremiseError("proximity: map must be non-constant");
  nevanlinna_detail::CircleEvaluator ev(f, q);
  return nevanlinna_detail::circle_mean(
      [&](nevanlinna_detail::Cplx z) { return ev.log_chordal_inverse(z); }, r);
}

struct NevanlinnaReport {
  std::vector<double> radii;
  std::vector<double> t;          // spherical-area characteristic
  std::vector<double> t_divisor;  // divisor characteristic N + m, exact in the
                                  // First Main Theorem sense: t_divisor >= N >= 0
  std::vector<double> n;          // counting function with multiplicities
  std::vector<double> n1;         // truncated counting function
  std::vector<double> margin;     // (t_divisor - n1) - alpha * t_divisor
  std::vector<double> quad_error; // error bound relevant to the margin
  std::vector<bool> flagged;      // margin below -(quad_error + slack)
  double alpha = 0.0;
  double slack = 1e-4;
  bool any_flagged = false;
};

// Verifies the truncation inequality T - N1 >= alpha T for an orbifold
// morphism from the plane into the line marked with multiplicity m at H.
// The margin uses the divisor characteristic t_divisor = N + m(r, H): the
// spherical-area T differs from any divisor-pinned characteristic by a
// bounded gauge term, and t_divisor is the gauge in which the First Main
// Theorem inequality T >= N holds exactly at every radius, so the inequality
// check needs no normalization allowance beyond quadrature error.
inline NevanlinnaReport orbi_trunc_check(const RationalMap& f, const Place& H, Multiplicity m,
                                         const std::vector<double>& radii,
                                         double rel_tol = 1e-6) {
  if (f.is_constant())
    throw PremiseError("truncation check: map must be non-constant");
  OrbifoldDivisor source;
  source.set(Place::infinity(), Multiplicity::infinite());
  OrbifoldDivisor target;
  target.set(H, m);
  MorphismVerdict premise = check_morphism(f, source, target, MorphismMode::NonClassical);
  if (!premise.ok) {
    std::string detail;
    for (const auto& w : premise.witnesses)
      if (!w.satisfied) detail += " [" + w.source_place.str() + "]: " + w.condition + ";";
    throw PremiseError(
        "truncation check: the map is not an orbifold morphism from the plane;"
        " failing fiber conditions:" + detail);
  }

  NevanlinnaReport rep;
  rep.radii = radii;
  rep.alpha = m.is_infinite() ? 1.0 : 1.0 - 1.0 / double(m.value());
  CountingFunctions counts = counting_functions(f, H, radii);
  rep.n = counts.with_mult;
  rep.n1 = counts.truncated;
  CharacteristicValues t = characteristic_with_error(f, radii, rel_tol);
  rep.t = t.value;
  for (size_t i = 0; i < radii.size(); ++i) {
    auto prox = logplus_proximity(f, H, radii[i]);
    double td = rep.n[i] + prox.value;
    double err = t.error[i] + prox.error + 1e-12 * (1.0 + rep.n[i]);
    double mg = (td - rep.n1[i]) - rep.alpha * td;
    bool bad = mg < -(err + rep.slack);
    rep.t_divisor.push_back(td);
    rep.quad_error.push_back(err);
    rep.margin.push_back(mg);
    rep.flagged.push_back(bad);
    rep.any_flagged = rep.any_flagged || bad;
    if (!std::isfinite(td) || !std::isfinite(mg))
      throw NumericError("truncation check: non-finite report value at r = " +
                         std::to_string(radii[i]));
  }
  return rep;
}

// The degree obstruction to entire curves: a non-constant orbifold morphism
// from the plane into a compact orbifold forces deg(K + Delta) <= 0, so the
// orbifold admits one only if its canonical degree is non-positive.
inline bool degree_obstruction(const OrbifoldCurve& o) {
  if (!o.base.has_genus() || !o.compact() || o.infinite_support)
    throw PremiseError(
        "degree obstruction: the orbifold must be compact with finite support");
  return canonical_degree(o) <= 0;
}

}  // namespace orbicurve
