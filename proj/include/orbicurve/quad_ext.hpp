#pragma once

#include <string>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace orbicurve {

namespace quad_detail {

// Splits n = s^2 * core with core square-free as far as trial division by
// factors <= 1000 can see; larger square factors stay inside core, which is
// harmless as long as every value in a computation goes through this same
// normalization.
inline void split_square(Int n, Int& s, Int& core) {
  s = 1;
  core = 1;
  if (n < 0) {
    core = -1;
    n = -n;
  }
  for (Int d = 2; d <= 1000 && d * d <= n; ++d) {
    while (n % (d * d) == 0) {
      n /= d * d;
      s *= d;
    }
  }
  core *= n;
}

}  // namespace quad_detail

// Element a + b sqrt(D) of a real or imaginary quadratic extension of Q.
// D is a nonzero integer with small square factors removed; D = 1 encodes a
// plain rational (then b = 0 by normalization).
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), d_(1) {}
  QuadExt(const Rational& a) : a_(a), b_(0), d_(1) {}
  QuadExt(const Rational& a, const Rational& b, const Int& d) : a_(a), b_(b), d_(d) {
    normalize();
  }

  // sqrt(r) as an exact element of Q(sqrt(core)).
  static QuadExt sqrt_of(const Rational& r) {
    if (r == 0) return QuadExt();
    Int s, core;
    quad_detail::split_square(rat_num(r) * rat_den(r), s, core);
    Rational b = make_rat(s, rat_den(r));
    if (core == 1) return QuadExt(b);
    return QuadExt(Rational(0), b, core);
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Int& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadExt conj() const { return QuadExt(a_, -b_, d_); }
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

  friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_, x.d_); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    Int d = join(x, y);
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Int d = join(x, y);
    return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
  }

  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    if (y.is_zero()) throw PremiseError("quadratic extension: division by zero");
    Rational n = y.norm();
    QuadExt c = y.conj();
    QuadExt p = x * c;
    return QuadExt(p.a_ / n, p.b_ / n, p.d_);
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  std::string str() const {
    if (is_rational()) return rat_str(a_);
    std::string root = "sqrt(" + d_.str() + ")";
    std::string rhs = (b_ == 1 ? root : rat_str(b_) + "*" + root);
    if (a_ == 0) return rhs;
    if (b_ > 0) return rat_str(a_) + " + " + rhs;
    return rat_str(a_) + " - " + (b_ == -1 ? root : rat_str(-b_) + "*" + root);
  }

 private:
  static Int join(const QuadExt& x, const QuadExt& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) throw PremiseError("quadratic extension: incompatible radicands");
    return x.d_;
  }

  void normalize() {
    if (b_ == 0) {
      d_ = 1;
      return;
    }
    if (d_ == 0) throw std::logic_error("quadratic extension: zero radicand");
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    }
  }

  Rational a_, b_;
  Int d_;
};

inline QuadExt eval_at(const Polynomial& p, const QuadExt& x) {
  QuadExt r;
  for (size_t i = p.coeffs().size(); i-- > 0;) r = r * x + QuadExt(p[static_cast<int>(i)]);
  return r;
}

}  // namespace orbicurve
