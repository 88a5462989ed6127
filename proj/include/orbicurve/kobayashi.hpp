#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "morphism.hpp"
#include "nevanlinna.hpp"
#include "orbifold.hpp"
#include "rational_map.hpp"

namespace orbicurve {

namespace kobayashi_detail {

using Cplx = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Power with IEEE-exact fast paths for the small integer exponents that the
// density formula produces at n = 1 and n = 2, so those cases evaluate to
// the exact dyadic arithmetic the closed forms promise.
inline double real_power(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (exponent == 1.0) return base;
  if (exponent == 2.0) return base * base;
  return std::pow(base, exponent);
}

inline void require_in_punctured_disc(const Cplx& z, const char* who) {
  double r = std::abs(z);
  if (!(r > 0.0 && r < 1.0))
    throw InputError(std::string(who) + ": |z| must lie strictly between 0 and 1");
}

inline void require_in_disc(const Cplx& z, const char* who) {
  if (!(std::abs(z) < 1.0))
    throw InputError(std::string(who) + ": inputs must lie in the open unit disc");
}

inline long long finite_order(Multiplicity n, const char* who) {
  if (n.is_infinite())
    throw InputError(std::string(who) + ": the multiplicity must be finite");
  return n.value();
}

// All n-th roots of w inside the disc; w = 0 has the single n-fold root 0.
inline std::vector<Cplx> nth_roots(const Cplx& w, long long n) {
  if (w == Cplx(0.0, 0.0)) return {Cplx(0.0, 0.0)};
  if (n == 1) return {w};
  std::vector<Cplx> out;
  out.reserve(static_cast<size_t>(n));
  double rho = std::pow(std::abs(w), 1.0 / double(n));
  double theta = std::arg(w);
  for (long long j = 0; j < n; ++j) {
    double phi = (theta + kTwoPi * double(j)) / double(n);
    out.emplace_back(rho * std::cos(phi), rho * std::sin(phi));
  }
  return out;
}

inline Cplx eval_complex(const RationalMap& f, const Cplx& z) {
  return nevanlinna_detail::horner(nevanlinna_detail::to_complex(f.num()), z) /
         nevanlinna_detail::horner(nevanlinna_detail::to_complex(f.den()), z);
}

}  // namespace kobayashi_detail

// Poincare density 4/(1 - |z|^2)^2 of the unit disc, curvature -1 convention.
inline double poincare_density(std::complex<double> z) {
  kobayashi_detail::require_in_disc(z, "poincare density");
  double r = std::abs(z);
  double s = 1.0 - r * r;
  return 4.0 / (s * s);
}

// Poincare distance d(x, y) = 2 artanh |(x - y)/(1 - conj(x) y)|; on a radius
// it reduces to d(0, r) = log((1 + r)/(1 - r)).
inline double poincare_distance(std::complex<double> x, std::complex<double> y) {
  kobayashi_detail::require_in_disc(x, "poincare distance");
  kobayashi_detail::require_in_disc(y, "poincare distance");
  double num = std::abs(x - y);
  if (num == 0.0) return 0.0;
  double den = std::abs(1.0 - std::conj(x) * y);
  return 2.0 * std::atanh(num / den);
}

// Density of the push-forward metric on the disc marked 1 - 1/n at the
// origin: 4 / (n^2 |z|^{2 - 2/n} (1 - |z|^{2/n})^2). At n = 1 the exponents
// vanish and the formula degenerates to the Poincare density.
inline double metric_density(Multiplicity n, std::complex<double> z) {
  long long order = kobayashi_detail::finite_order(n, "metric density");
  kobayashi_detail::require_in_punctured_disc(z, "metric density");
  double nn = double(order);
  double r = std::abs(z);
  double radial = kobayashi_detail::real_power(r, 2.0 - 2.0 / nn);
  double u = kobayashi_detail::real_power(r, 2.0 / nn);
  double s = 1.0 - u;
  return 4.0 / (nn * nn * radial * s * s);
}

// The n -> infinity limit of metric_density: 4 / (|z|^2 log^2(|z|^2)), the
// complete metric of the punctured disc.
inline double limit_density(std::complex<double> z) {
  kobayashi_detail::require_in_punctured_disc(z, "limit density");
  double r = std::abs(z);
  double r2 = r * r;
  double ell = std::log(r2);
  return 4.0 / (r2 * ell * ell);
}

struct LimitConvergence {
  double limit = 0.0;
  std::vector<long long> orders;     // n = 2, 4, ..., 1024
  std::vector<double> deviation;     // |metric_density(n, z) - limit|
  bool monotone_decreasing = false;  // deviations strictly decrease
  double final_deviation = 0.0;
};

// Convergence report of metric_density(n, z) toward limit_density(z) over
// the doubling sequence n = 2, 4, ..., 2^10.
inline LimitConvergence limit_density_convergence(std::complex<double> z) {
  LimitConvergence rep;
  rep.limit = limit_density(z);
  rep.monotone_decreasing = true;
  for (long long n = 2; n <= 1024; n *= 2) {
    double dev = std::abs(metric_density(Multiplicity::finite(n), z) - rep.limit);
    if (!rep.deviation.empty() && dev >= rep.deviation.back())
      rep.monotone_decreasing = false;
    rep.orders.push_back(n);
    rep.deviation.push_back(dev);
  }
  rep.final_deviation = rep.deviation.back();
  return rep;
}

// Classical pseudodistance on the disc marked 1 - 1/n at the origin, through
// the unfolding z -> z^n: the minimum of the Poincare distance over preimage
// pairs. Rotational symmetry reduces the n x n pairs to one principal root
// on one side against all n roots on the other; evaluating both sides and
// taking the smaller keeps the result exactly symmetric in p and q.
inline double classical_distance_disc(Multiplicity n, std::complex<double> p,
                                      std::complex<double> q) {
  long long order = kobayashi_detail::finite_order(n, "classical distance");
  kobayashi_detail::require_in_disc(p, "classical distance");
  kobayashi_detail::require_in_disc(q, "classical distance");
  auto one_sided = [order](const std::complex<double>& a, const std::complex<double>& b) {
    std::complex<double> x = kobayashi_detail::nth_roots(a, order).front();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : kobayashi_detail::nth_roots(b, order))
      best = std::min(best, poincare_distance(x, y));
    return best;
  };
  return std::min(one_sided(p, q), one_sided(q, p));
}

// Line integral of the metric length element along the radial segment
// [a, b] of the positive axis; for same-argument pairs this is the distance
// realized by the radial geodesic, equal to 2 artanh(t^{1/n}) evaluated
// between the endpoints.
inline double radial_metric_integral(Multiplicity n, double a, double b) {
  kobayashi_detail::finite_order(n, "radial integral");
  if (!(0.0 < a && a <= b && b < 1.0))
    throw InputError("radial integral: need 0 < a <= b < 1");
  using boost::math::quadrature::gauss_kronrod;
  auto speed = [&](double t) { return std::sqrt(metric_density(n, {t, 0.0})); };
  double err = 0.0;
  double value = gauss_kronrod<double, 15>::integrate(speed, a, b, 10, 1e-10, &err);
  if (!std::isfinite(value) || err > 1e-7 * (std::abs(value) + 1.0))
    throw NumericError("radial integral: quadrature did not converge");
  return value;
}

struct PairCheck {
  std::complex<double> p, q;
  double source_distance = 0.0;  // classical distance of (p, q) upstairs
  double target_distance = 0.0;  // classical distance of (f(p), f(q)) downstairs
  bool ok = false;
};

struct DistanceDecreasingReport {
  bool ok = false;
  double tolerance = 0.0;
  double boundary_max = 0.0;  // sampled max |f| on the sample-disc boundary
  std::vector<PairCheck> pairs;
};

// Checks that a self-map of the disc which is an orbifold morphism from
// (D, (1-1/n_src)[0]) to (D, (1-1/n_tgt)[0]) contracts the classical
// pseudodistance on the sampled pairs. The morphism premise is the
// divisibility form at every zero of f in the closed sample disc, because
// the classical pseudodistance is defined through unfoldings and only the
// divisibility condition lifts f to a map of the unfolding discs.
inline DistanceDecreasingReport distance_decreasing_check(
    const RationalMap& f, Multiplicity n_src, Multiplicity n_tgt,
    const std::vector<std::pair<std::complex<double>, std::complex<double>>>& pairs,
    double tolerance = 1e-9) {
  using kobayashi_detail::Cplx;
  kobayashi_detail::finite_order(n_src, "distance check");
  kobayashi_detail::finite_order(n_tgt, "distance check");
  if (pairs.empty()) throw InputError("distance check: no sample pairs");
  double radius = 0.0;
  for (const auto& [p, q] : pairs)
    radius = std::max({radius, std::abs(p), std::abs(q)});
  if (!(radius < 1.0))
    throw InputError("distance check: sample points must lie in the open unit disc");

  DistanceDecreasingReport rep;
  rep.tolerance = tolerance;

  if (f.is_constant()) {
    Cplx c = kobayashi_detail::eval_complex(f, Cplx(0.0, 0.0));
    if (!(std::abs(c) < 1.0))
      throw PremiseError("distance check: the constant value lies outside the unit disc");
    rep.boundary_max = std::abs(c);
  } else {
    for (const auto& pole : complex_roots(f.den()))
      if (std::abs(pole) <= radius + 1e-12)
        throw PremiseError("distance check: the map has a pole in the sample disc");
    // Holomorphic on the closed sample disc, so the boundary maximum controls
    // the interior by the maximum principle; sample the boundary circle.
    const int samples = 720;
    for (int k = 0; k < samples; ++k) {
      double phi = kobayashi_detail::kTwoPi * double(k) / double(samples);
      Cplx z = radius * Cplx(std::cos(phi), std::sin(phi));
      rep.boundary_max = std::max(rep.boundary_max,
                                  std::abs(kobayashi_detail::eval_complex(f, z)));
    }
    if (!(rep.boundary_max < 1.0))
      throw PremiseError("distance check: the map does not send the sample disc into "
                         "the unit disc (sampled boundary max " +
                         std::to_string(rep.boundary_max) + ")");
    // Orbifold morphism condition at every preimage of the marked origin.
    for (const auto& root :
         nevanlinna_detail::finite_preimages(f, Place::of_rational(Rational(0)))) {
      if (root.modulus > radius + 1e-12) continue;
      Multiplicity upstairs =
          root.modulus < 1e-9 ? n_src : Multiplicity::finite(1);
      if (!local_condition(upstairs, root.mult, n_tgt, MorphismMode::Classical))
        throw PremiseError(
            "distance check: zero of order " + std::to_string(root.mult) +
            " at |z| = " + std::to_string(root.modulus) +
            " violates the divisibility condition for the target marking");
    }
  }

  rep.ok = true;
  for (const auto& [p, q] : pairs) {
    PairCheck pc;
    pc.p = p;
    pc.q = q;
    Cplx fp = kobayashi_detail::eval_complex(f, p);
    Cplx fq = kobayashi_detail::eval_complex(f, q);
    if (!(std::abs(fp) < 1.0 && std::abs(fq) < 1.0))
      throw PremiseError("distance check: a sample image lies outside the unit disc");
    pc.source_distance = classical_distance_disc(n_src, p, q);
    pc.target_distance = classical_distance_disc(n_tgt, fp, fq);
    pc.ok = pc.target_distance <= pc.source_distance + tolerance;
    rep.ok = rep.ok && pc.ok;
    rep.pairs.push_back(pc);
  }
  return rep;
}

namespace kobayashi_detail {

// Disc automorphism sending a to 0: B_a(z) = (z - a)/(1 - conj(a) z).
inline Cplx blaschke(const Cplx& a, const Cplx& z) {
  return (z - a) / (1.0 - std::conj(a) * z);
}

// Preimages in the disc of value v under g(z) = e^{i psi} B_a(z)^k.
inline std::vector<Cplx> deg1_preimages(const Cplx& a, long long k, double psi,
                                        const Cplx& v) {
  Cplx c = v * std::polar(1.0, -psi);
  std::vector<Cplx> out;
  for (const auto& u : nth_roots(c, k)) out.push_back(blaschke(-a, u));
  return out;
}

// Preimages in the disc of value v under g(z) = e^{i psi} (B_a(z) B_b(z))^k:
// for each k-th root u of e^{-i psi} v, solve the degree-2 equation
// (z - a)(z - b) = u (1 - conj(a) z)(1 - conj(b) z).
inline std::vector<Cplx> deg2_preimages(const Cplx& a, const Cplx& b, long long k,
                                        double psi, const Cplx& v) {
  Cplx c = v * std::polar(1.0, -psi);
  std::vector<Cplx> out;
  for (const auto& u : nth_roots(c, k)) {
    Cplx A = 1.0 - u * std::conj(a) * std::conj(b);
    Cplx B = -(a + b) + u * (std::conj(a) + std::conj(b));
    Cplx C = a * b - u;
    Cplx disc = std::sqrt(B * B - 4.0 * A * C);
    if (std::abs(B + disc) < std::abs(B - disc)) disc = -disc;
    Cplx big = -(B + disc) / 2.0;
    if (std::abs(big) > 0.0) {
      out.push_back(big / A);
      out.push_back(C / big);
    } else {
      out.push_back(Cplx(0.0, 0.0));  // B = C = 0: double root at the origin
      out.push_back(Cplx(0.0, 0.0));
    }
  }
  return out;
}

// One-link value of a candidate: the smallest Poincare distance between a
// preimage of p and a preimage of q. Preimages outside the closed disc can
// only arise from roundoff; skip them.
inline double link_value(const std::vector<Cplx>& from, const std::vector<Cplx>& to) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : from) {
    if (!(std::abs(x) < 1.0)) continue;
    for (const auto& y : to) {
      if (!(std::abs(y) < 1.0)) continue;
      best = std::min(best, poincare_distance(x, y));
    }
  }
  return best;
}

struct ChainSearch {
  long long order = 1;       // target multiplicity n
  long long budget = 0;      // remaining candidate evaluations
  long long evaluated = 0;

  bool spend() {
    if (budget <= 0) return false;
    --budget;
    ++evaluated;
    return true;
  }

  double eval_deg1(const Cplx& a, long long k, double psi, const Cplx& p, const Cplx& q) {
    if (!local_condition(Multiplicity::finite(1), k, Multiplicity::finite(order),
                         MorphismMode::NonClassical))
      return std::numeric_limits<double>::infinity();
    if (!spend()) return std::numeric_limits<double>::infinity();
    return link_value(deg1_preimages(a, k, psi, p), deg1_preimages(a, k, psi, q));
  }

  double eval_deg2(const Cplx& a, const Cplx& b, long long k, double psi, const Cplx& p,
                   const Cplx& q) {
    if (!local_condition(Multiplicity::finite(1), k, Multiplicity::finite(order),
                         MorphismMode::NonClassical))
      return std::numeric_limits<double>::infinity();
    if (!spend()) return std::numeric_limits<double>::infinity();
    return link_value(deg2_preimages(a, b, k, psi, p), deg2_preimages(a, b, k, psi, q));
  }

  // Single-link search over the candidate family. The classical lift z^n is
  // the first candidate, so with any budget the result is at most the
  // classical distance. Iteration order is fixed and only strict improvement
  // replaces the incumbent, which makes ties resolve to the first
  // (lexicographically smallest) candidate.
  double single_link(const Cplx& p, const Cplx& q, bool refine) {
    double best = eval_deg1(Cplx(0.0, 0.0), order, 0.0, p, q);

    Cplx best_a(0.0, 0.0);
    long long best_k = order;
    double best_psi = 0.0;
    for (long long k : {order, order + 1}) {
      for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
          Cplx a(0.25 * double(i), 0.25 * double(j));
          if (std::abs(a) > 0.9) continue;
          for (int t = 0; t < 8; ++t) {
            double psi = kTwoPi * double(t) / 8.0;
            double v = eval_deg1(a, k, psi, p, q);
            if (v < best) {
              best = v;
              best_a = a;
              best_k = k;
              best_psi = psi;
            }
          }
        }
      }
    }

    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        Cplx a(0.3 * double(i), 0.3 * double(j));
        if (std::abs(a) > 0.9) continue;
        for (int i2 = i; i2 <= 2; ++i2) {
          for (int j2 = (i2 == i ? j : -2); j2 <= 2; ++j2) {
            Cplx b(0.3 * double(i2), 0.3 * double(j2));
            if (std::abs(b) > 0.9) continue;
            for (int t = 0; t < 4; ++t) {
              double psi = kTwoPi * double(t) / 4.0;
              double v = eval_deg2(a, b, order, psi, p, q);
              if (v < best) best = v;
            }
          }
        }
      }
    }

    if (refine) {
      // Deterministic coordinate descent around the best degree-1 candidate.
      for (double step : {0.08, 0.02, 0.005, 0.001}) {
        for (int sweep = 0; sweep < 2; ++sweep) {
          const Cplx moves[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
          for (const auto& mv : moves) {
            Cplx a = best_a + mv;
            if (std::abs(a) > 0.95) continue;
            double v = eval_deg1(a, best_k, best_psi, p, q);
            if (v < best) {
              best = v;
              best_a = a;
            }
          }
          for (double dpsi : {step, -step}) {
            double v = eval_deg1(best_a, best_k, best_psi + dpsi, p, q);
            if (v < best) {
              best = v;
              best_psi += dpsi;
            }
          }
        }
      }
    }
    return best;
  }
};

}  // namespace kobayashi_detail

struct ChainBound {
  double value = 0.0;      // best chain sum found; an upper bound for d
  double classical = 0.0;  // classical_distance_disc(n, p, q) for comparison
  long long evaluated = 0;
  bool used_fallback = false;  // no candidate evaluated; value is the classical one
};

// Experimental upper bound for the non-classical pseudodistance: minimizes
// the chain sum over a finite family of disc morphisms (rotated Blaschke
// products of degree <= 2 raised to a power meeting the marking) and chains
// of length <= 2. The classical unfolding lift z^n is always a candidate, so
// the result never exceeds the classical distance; it can only ever witness
// a strict gap, never confirm equality.
inline ChainBound chain_upper_bound(Multiplicity n, std::complex<double> p,
                                    std::complex<double> q, long long budget = 8192) {
  using kobayashi_detail::Cplx;
  long long order = kobayashi_detail::finite_order(n, "chain bound");
  kobayashi_detail::require_in_disc(p, "chain bound");
  kobayashi_detail::require_in_disc(q, "chain bound");

  ChainBound out;
  out.classical = classical_distance_disc(n, p, q);
  out.value = out.classical;
  if (budget <= 0) {
    out.used_fallback = true;
    return out;
  }

  kobayashi_detail::ChainSearch search;
  search.order = order;
  search.budget = budget;

  double best = search.single_link(p, q, true);
  for (const Cplx& w : {Cplx(0.0, 0.0), (p + q) / 2.0}) {
    if (search.budget <= 0) break;
    double left = search.single_link(p, w, false);
    double right = search.single_link(w, q, false);
    best = std::min(best, left + right);
  }

  out.evaluated = search.evaluated;
  if (search.evaluated == 0) {
    out.used_fallback = true;
    return out;
  }
  out.value = std::min(best, out.classical);
  return out;
}

}  // namespace orbicurve
