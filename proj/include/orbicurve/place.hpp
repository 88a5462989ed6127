#pragma once

#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "factorize.hpp"
#include "poly_parser.hpp"
#include "polynomial.hpp"

namespace orbicurve {

// A closed point of P^1 over Q: a monic irreducible polynomial (one Galois
// orbit of complex points) or the point at infinity. deg(infinity) = 1.
class Place {
 public:
  static Place infinity() { return Place(std::nullopt); }

  static Place finite(const Polynomial& p) {
    Polynomial m = monic(p);
    if (m.degree() < 1 || !is_irreducible(m))
      throw InputError("place: polynomial is not irreducible of degree >= 1");
    return Place(std::move(m));
  }

  // For factors already known to be monic irreducible.
  static Place finite_unchecked(Polynomial p) { return Place(std::move(p)); }

  static Place of_rational(const Rational& a) {
    return Place(Polynomial::var() - Polynomial(a));
  }

  static Place parse(const std::string& text, char var = 'z') {
    if (text == "inf") return infinity();
    return finite(parse_poly(text, var));
  }

  bool is_infinity() const { return !p_.has_value(); }
  const Polynomial& poly() const { return *p_; }  // pre: finite
  int degree() const { return p_ ? p_->degree() : 1; }

  // The rational point when the place is z - a or infinity-free callers
  // need it; nullopt for higher-degree places or infinity.
  std::optional<Rational> rational_point() const {
    if (!p_ || p_->degree() != 1) return std::nullopt;
    return -(*p_)[0];
  }

  std::string str(char var = 'z') const { return p_ ? print_poly(*p_, var) : "inf"; }

  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
  friend bool operator<(const Place& a, const Place& b) {
    // Finite places in polynomial order, infinity last.
    if (!a.p_) return false;
    if (!b.p_) return true;
    return *a.p_ < *b.p_;
  }

 private:
  explicit Place(std::optional<Polynomial> p) : p_(std::move(p)) {}
  std::optional<Polynomial> p_;
};

}  // namespace orbicurve
