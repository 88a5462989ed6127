#pragma once

#include <optional>
#include <string>
#include <utility>

#include "divisor.hpp"
#include "errors.hpp"
#include "place.hpp"
#include "poly_parser.hpp"
#include "polynomial.hpp"

namespace orbicurve {

// Endomorphism of P^1 over Q, kept as a coprime pair with monic denominator.
class RationalMap {
 public:
  RationalMap(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw InputError("rational map: zero denominator");
    Polynomial g = gcd(num, den);
    if (g.degree() > 0) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
    Rational s = Rational(1) / den.lc();
    num_ = num * s;
    den_ = den * s;
  }

  static RationalMap parse(const std::string& text, char var = 'z') {
    RatFun f = parse_ratfun(text, var);
    return RationalMap(std::move(f.num), std::move(f.den));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_constant() const { return degree() <= 0; }

  // Value at a finite rational point; nullopt encodes infinity.
  std::optional<Rational> eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d == 0) return std::nullopt;
    return num_.eval(x) / d;
  }

  // Value at the infinite place.
  std::optional<Rational> eval_at_infinity() const {
    if (num_.degree() > den_.degree()) return std::nullopt;
    if (num_.degree() < den_.degree()) return Rational(0);
    return num_.lc() / den_.lc();
  }

  // this after inner: z -> this(inner(z)).
  RationalMap compose(const RationalMap& inner) const {
    int d = degree();
    Polynomial nu, nv;
    for (int i = 0; i <= d; ++i) {
      Polynomial t = poly_pow(inner.num_, static_cast<unsigned>(i)) *
                     poly_pow(inner.den_, static_cast<unsigned>(d - i));
      nu = nu + num_[i] * t;
      nv = nv + den_[i] * t;
    }
    return RationalMap(std::move(nu), std::move(nv));
  }

  std::string str(char var = 'z') const { return print_ratfun(num_, den_, var); }

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalMap& a, const RationalMap& b) { return !(a == b); }

  // Field arithmetic on rational functions; the constructor re-reduces.
  friend RationalMap operator+(const RationalMap& a, const RationalMap& b) {
    return RationalMap(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalMap operator-(const RationalMap& a) {
    return RationalMap(Rational(-1) * a.num_, a.den_);
  }
  friend RationalMap operator-(const RationalMap& a, const RationalMap& b) { return a + (-b); }
  friend RationalMap operator*(const RationalMap& a, const RationalMap& b) {
    return RationalMap(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalMap operator/(const RationalMap& a, const RationalMap& b) {
    if (b.num_.is_zero()) throw PremiseError("rational function: division by zero");
    return RationalMap(a.num_ * b.den_, a.den_ * b.num_);
  }

 private:
  Polynomial num_, den_;
};

// Total transform f*[q] with exact multiplicities; degree is deg(f) deg(q).
inline Divisor pullback_place(const RationalMap& f, const Place& q) {
  if (f.is_constant()) throw PremiseError("pullback: constant map");
  int d = f.degree();
  Divisor out;
  if (q.is_infinity()) {
    if (f.den().degree() > 0) {
      for (const auto& [g, e] : factorize(f.den()).factors)
        out.add(Place::finite_unchecked(g), Rational(e));
    }
    int e_inf = f.num().degree() - f.den().degree();
    if (e_inf > 0) out.add(Place::infinity(), Rational(e_inf));
    return out;
  }
  const Polynomial& qp = q.poly();
  int k = qp.degree();
  // Q = den^k q(num/den), the numerator of q pulled back through f.
  Polynomial big;
  for (int i = 0; i <= k; ++i) {
    big = big + qp[i] * poly_pow(f.num(), static_cast<unsigned>(i)) *
                    poly_pow(f.den(), static_cast<unsigned>(k - i));
  }
  if (big.is_zero()) throw PremiseError("pullback: image of the map lies in the place");
  if (big.degree() > 0) {
    for (const auto& [g, e] : factorize(big).factors)
      out.add(Place::finite_unchecked(g), Rational(e));
  }
  int e_inf = d * k - big.degree();
  if (e_inf > 0) out.add(Place::infinity(), Rational(e_inf));
  return out;
}

// Pullback of a whole divisor, linear in the coefficients.
inline Divisor pullback_divisor(const RationalMap& f, const Divisor& d) {
  Divisor out;
  for (const auto& [p, c] : d.terms()) out = out + c * pullback_place(f, p);
  return out;
}

}  // namespace orbicurve
