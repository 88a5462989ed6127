#pragma once

#include <string>
#include <variant>

#include "errors.hpp"
#include "poly_parser.hpp"
#include "polynomial.hpp"
#include "quad_ext.hpp"
#include "squarefree.hpp"

namespace orbicurve {

// y^2 = h(x) with h a square-free cubic; the smooth projective model has a
// single point at infinity.
class EllipticCurve {
 public:
  explicit EllipticCurve(Polynomial h) : h_(std::move(h)) {
    if (h_.degree() != 3) throw InputError("elliptic curve: h must be a cubic");
    if (gcd(h_, h_.derivative()).degree() != 0)
      throw InputError("elliptic curve: h must be square-free");
  }

  static EllipticCurve parse(const std::string& text) {
    return EllipticCurve(parse_poly(text, 'x'));
  }

  const Polynomial& h() const { return h_; }

  std::string str() const { return "y^2 = " + print_poly(h_, 'x'); }

  friend bool operator==(const EllipticCurve& a, const EllipticCurve& b) {
    return a.h_ == b.h_;
  }

 private:
  Polynomial h_;
};

// A point of the projective curve, with exact coordinates in Q or a
// quadratic extension.
class EllipticPoint {
 public:
  static EllipticPoint at_infinity() { return EllipticPoint(); }

  static EllipticPoint affine(const EllipticCurve& c, QuadExt x, QuadExt y) {
    if (y * y != eval_at(c.h(), x))
      throw InputError("elliptic point: does not satisfy the curve equation");
    EllipticPoint p;
    p.affine_ = true;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
  }

  bool is_infinity() const { return !affine_; }
  const QuadExt& x() const { return x_; }  // pre: affine
  const QuadExt& y() const { return y_; }  // pre: affine

  std::string str() const {
    if (!affine_) return "infinity";
    return "(" + x_.str() + ", " + y_.str() + ")";
  }

  friend bool operator==(const EllipticPoint& a, const EllipticPoint& b) {
    if (a.affine_ != b.affine_) return false;
    if (!a.affine_) return true;
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const EllipticPoint& a, const EllipticPoint& b) { return !(a == b); }

 private:
  EllipticPoint() = default;
  bool affine_ = false;
  QuadExt x_, y_;
};

}  // namespace orbicurve
