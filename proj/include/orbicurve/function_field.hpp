#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "elliptic_curve.hpp"
#include "errors.hpp"
#include "factorize.hpp"
#include "polynomial.hpp"
#include "quad_ext.hpp"
#include "rational.hpp"
#include "rational_map.hpp"

namespace orbicurve {

// Element a(x) + b(x) y of the function field of y^2 = h(x), with a and b
// rational functions of x.
class EllipticFunction {
 public:
  EllipticFunction(RationalMap a, RationalMap b) : a_(std::move(a)), b_(std::move(b)) {}

  // Pure function of x (b = 0).
  static EllipticFunction of_x(RationalMap a) {
    return EllipticFunction(std::move(a), zero_map());
  }
  // The coordinate function y itself (a = 0, b = 1).
  static EllipticFunction y_coordinate() {
    return EllipticFunction(zero_map(), RationalMap(Polynomial(Rational(1)), Polynomial(Rational(1))));
  }

  static EllipticFunction parse(const std::string& a_text, const std::string& b_text) {
    return EllipticFunction(RationalMap::parse(a_text, 'x'), RationalMap::parse(b_text, 'x'));
  }

  const RationalMap& a() const { return a_; }
  const RationalMap& b() const { return b_; }

  bool is_zero() const { return a_.num().is_zero() && b_.num().is_zero(); }
  bool is_constant() const {
    return b_.num().is_zero() && a_.is_constant();
  }

  std::string str() const {
    if (b_.num().is_zero()) return a_.str('x');
    bool unit = b_.num() == Polynomial(Rational(1)) && b_.den() == Polynomial(Rational(1));
    std::string bs = unit ? "y" : "(" + b_.str('x') + ")*y";
    if (a_.num().is_zero()) return bs;
    return a_.str('x') + " + " + bs;
  }

 private:
  static RationalMap zero_map() {
    return RationalMap(Polynomial(), Polynomial(Rational(1)));
  }
  RationalMap a_, b_;
};

namespace function_field_detail {

// Minimal polynomial of x0 over Q: monic, degree 1 (rational) or 2.
inline Polynomial minimal_polynomial(const QuadExt& x0) {
  if (x0.is_rational()) {
    return Polynomial::from_coeffs({-x0.a(), Rational(1)});
  }
  // x^2 - (trace) x + (norm)
  return Polynomial::from_coeffs({x0.norm(), Rational(-2) * x0.a(), Rational(1)});
}

// Order of vanishing at x0 of a nonzero polynomial, with the leading Taylor
// coefficient in the local coordinate x - x0.
struct LocalData {
  long long ord;
  QuadExt lead;
};

inline LocalData local_at(const Polynomial& p, const QuadExt& x0) {
  if (p.is_zero()) throw std::logic_error("local expansion of the zero polynomial");
  Polynomial mu = minimal_polynomial(x0);
  Polynomial q = p;
  long long m = 0;
  while (q.degree() >= mu.degree()) {
    auto [quo, rem] = divmod(q, mu);
    if (!rem.is_zero()) break;
    q = quo;
    ++m;
  }
  QuadExt lead = eval_at(q, x0);
  if (!x0.is_rational()) {
    // mu = (x - x0)(x - conj x0), so each factor contributes x0 - conj(x0).
    QuadExt gap = x0 - x0.conj();
    for (long long i = 0; i < m; ++i) lead = lead * gap;
  }
  return {m, lead};
}

inline LocalData local_at(const RationalMap& r, const QuadExt& x0) {
  LocalData n = local_at(r.num(), x0);
  LocalData d = local_at(r.den(), x0);
  return {n.ord - d.ord, n.lead / d.lead};
}

// deg num - deg den: the order of r at infinity is -2 * this on the curve.
inline int x_degree(const RationalMap& r) { return r.num().degree() - r.den().degree(); }

// Square root within a single quadratic extension; nullopt when the value
// needs a wider field.
inline std::optional<QuadExt> try_sqrt(const QuadExt& v) {
  if (v.is_zero()) return QuadExt();
  if (v.is_rational()) return QuadExt::sqrt_of(v.a());
  // Seek (u + w sqrt(D))^2 = a + b sqrt(D): u^2 + D w^2 = a, 2uw = b.
  Rational n = v.norm();
  if (n < 0) return std::nullopt;
  QuadExt s = QuadExt::sqrt_of(n);
  if (!s.is_rational()) return std::nullopt;
  for (int sign : {1, -1}) {
    Rational u2 = (v.a() + Rational(sign) * s.a()) / 2;
    if (u2 <= 0) continue;
    QuadExt u = QuadExt::sqrt_of(u2);
    if (!u.is_rational()) continue;
    Rational w = v.b() / (2 * u.a());
    QuadExt cand(u.a(), w, v.radicand());
    if (cand * cand == v) return cand;
  }
  return std::nullopt;
}

// Deterministic ordering for exact points: affine before infinity, then by
// coordinates componentwise.
inline bool quad_less(const QuadExt& p, const QuadExt& q) {
  return std::tuple(p.a(), p.b(), p.radicand()) < std::tuple(q.a(), q.b(), q.radicand());
}

inline bool point_less(const EllipticPoint& p, const EllipticPoint& q) {
  if (p.is_infinity() != q.is_infinity()) return q.is_infinity();
  if (p.is_infinity()) return false;
  if (p.x() != q.x()) return quad_less(p.x(), q.x());
  return quad_less(p.y(), q.y());
}

}  // namespace function_field_detail

// Product in the function field: y^2 collapses to h(x).
inline EllipticFunction multiply(const EllipticCurve& curve, const EllipticFunction& f,
                                 const EllipticFunction& g) {
  RationalMap h(curve.h(), Polynomial(Rational(1)));
  return EllipticFunction(f.a() * g.a() + f.b() * g.b() * h,
                          f.a() * g.b() + g.a() * f.b());
}

// Order of vanishing of f at P. Local parameters: x - x(P) where y(P) != 0,
// y where y(P) = 0, and x/y at infinity (so v(x) = -2, v(y) = -3 there).
inline long long valuation(const EllipticCurve& curve, const EllipticFunction& f,
                           const EllipticPoint& point) {
  using namespace function_field_detail;
  if (f.is_zero()) throw PremiseError("valuation: the zero function has no order");
  if (!point.is_infinity() && point.y() * point.y() != eval_at(curve.h(), point.x()))
    throw InputError("valuation: point does not lie on the curve");

  bool has_a = !f.a().num().is_zero();
  bool has_b = !f.b().num().is_zero();

  if (point.is_infinity()) {
    long long va = has_a ? -2LL * x_degree(f.a()) : 0;
    long long vb = has_b ? -2LL * x_degree(f.b()) - 3 : 0;
    if (!has_a) return vb;
    if (!has_b) return va;
    return std::min(va, vb);  // distinct parity, no cancellation
  }

  const QuadExt& x0 = point.x();
  if (point.y().is_zero()) {
    // h(x0) = 0: y is the local parameter, v(x - x0) = 2.
    long long va = has_a ? 2 * local_at(f.a(), x0).ord : 0;
    long long vb = has_b ? 2 * local_at(f.b(), x0).ord + 1 : 0;
    if (!has_a) return vb;
    if (!has_b) return va;
    return std::min(va, vb);  // distinct parity, no cancellation
  }

  // y(P) != 0: local parameter x - x0, and y is a unit.
  if (!has_a) return local_at(f.b(), x0).ord;
  if (!has_b) return local_at(f.a(), x0).ord;
  LocalData la = local_at(f.a(), x0);
  LocalData lb = local_at(f.b(), x0);
  if (la.ord != lb.ord) return std::min(la.ord, lb.ord);
  QuadExt front = la.lead + lb.lead * point.y();
  if (!front.is_zero()) return la.ord;
  // Leading terms cancel: read the order off the norm f * conj(f), whose
  // conjugate factor a - b y keeps order la.ord at P.
  RationalMap norm = f.a() * f.a() - f.b() * f.b() * RationalMap(curve.h(), Polynomial(Rational(1)));
  return local_at(norm, x0).ord - la.ord;
}

// All points with nonzero valuation, as (point, valuation) sorted by point.
inline std::vector<std::pair<EllipticPoint, long long>> principal_divisor(
    const EllipticCurve& curve, const EllipticFunction& f) {
  using namespace function_field_detail;
  if (f.is_zero()) throw PremiseError("principal divisor: the zero function");

  // Candidate x-coordinates: zeros and poles of the norm a^2 - b^2 h plus
  // poles of a and b (where f and its conjugate can cancel), then infinity.
  RationalMap norm =
      f.a() * f.a() - f.b() * f.b() * RationalMap(curve.h(), Polynomial(Rational(1)));
  if (norm.num().is_zero()) throw std::logic_error("vanishing norm of a nonzero function");
  std::vector<Polynomial> sources{norm.num(), norm.den(), f.a().den(), f.b().den()};

  std::set<std::tuple<Rational, Rational, Int>> seen;
  std::vector<QuadExt> xs;
  auto push_x = [&](const QuadExt& x0) {
    if (seen.insert({x0.a(), x0.b(), x0.radicand()}).second) xs.push_back(x0);
  };
  for (const Polynomial& s : sources) {
    if (s.degree() < 1) continue;
    for (const auto& [g, e] : factorize(s).factors) {
      if (g.degree() == 1) {
        push_x(QuadExt(-g[0]));
      } else if (g.degree() == 2) {
        Rational half_trace = -g[1] / 2;
        QuadExt root = QuadExt::sqrt_of(half_trace * half_trace - g[0]);
        push_x(QuadExt(half_trace) + root);
        push_x(QuadExt(half_trace) - root);
      } else {
        throw PremiseError(
            "function field: support needs an algebraic extension of degree > 2");
      }
    }
  }

  std::vector<std::pair<EllipticPoint, long long>> out;
  auto consider = [&](const EllipticPoint& p) {
    long long v = valuation(curve, f, p);
    if (v != 0) out.emplace_back(p, v);
  };
  for (const QuadExt& x0 : xs) {
    QuadExt hv = eval_at(curve.h(), x0);
    if (hv.is_zero()) {
      consider(EllipticPoint::affine(curve, x0, QuadExt()));
      continue;
    }
    std::optional<QuadExt> y0 = try_sqrt(hv);
    if (!y0 || (!x0.is_rational() && !y0->is_rational() &&
                x0.radicand() != y0->radicand()))
      throw PremiseError(
          "function field: fiber point needs an algebraic extension of degree > 2");
    consider(EllipticPoint::affine(curve, x0, *y0));
    consider(EllipticPoint::affine(curve, x0, -*y0));
  }
  consider(EllipticPoint::at_infinity());

  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return point_less(l.first, r.first); });
  long long total = 0;
  for (const auto& [p, v] : out) total += v;
  if (total != 0) throw std::logic_error("principal divisor has nonzero degree");
  return out;
}

// Degree of f as a covering of the projective line: total pole multiplicity.
inline long long function_degree(const EllipticCurve& curve, const EllipticFunction& f) {
  if (f.is_constant()) throw PremiseError("function degree: constant function");
  long long d = 0;
  for (const auto& [p, v] : principal_divisor(curve, f))
    if (v < 0) d -= v;
  return d;
}

// Fiber of f over a finite value c (zero divisor of f - c) or over infinity
// (pole divisor of f). Multiplicities sum to the covering degree.
inline std::vector<std::pair<EllipticPoint, long long>> fiber_divisor(
    const EllipticCurve& curve, const EllipticFunction& f,
    const std::optional<Rational>& c) {
  if (f.is_constant()) throw PremiseError("fiber divisor: constant function");
  std::vector<std::pair<EllipticPoint, long long>> fiber;
  long long total = 0;
  if (!c) {
    for (const auto& [p, v] : principal_divisor(curve, f)) {
      if (v < 0) {
        fiber.emplace_back(p, -v);
        total -= v;
      }
    }
  } else {
    RationalMap shift(Polynomial(*c), Polynomial(Rational(1)));
    EllipticFunction g(f.a() - shift, f.b());
    for (const auto& [p, v] : principal_divisor(curve, g)) {
      if (v > 0) {
        fiber.emplace_back(p, v);
        total += v;
      }
    }
  }
  if (total != function_degree(curve, f))
    throw std::logic_error("fiber multiplicities do not sum to the covering degree");
  return fiber;
}

inline std::vector<std::pair<EllipticPoint, long long>> fiber_divisor(
    const EllipticCurve& curve, const EllipticFunction& f, const Rational& c) {
  return fiber_divisor(curve, f, std::optional<Rational>(c));
}

inline std::vector<std::pair<EllipticPoint, long long>> fiber_divisor_at_infinity(
    const EllipticCurve& curve, const EllipticFunction& f) {
  return fiber_divisor(curve, f, std::nullopt);
}

}  // namespace orbicurve
