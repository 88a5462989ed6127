#pragma once

#include <map>
#include <string>

#include "place.hpp"
#include "rational.hpp"

namespace orbicurve {

// Q-Weil divisor on P^1: finite formal sum of places with rational
// coefficients. Zero coefficients are never stored.
class Divisor {
 public:
  Divisor() = default;

  static Divisor single(const Place& p, const Rational& c) {
    Divisor d;
    d.add(p, c);
    return d;
  }

  void add(const Place& p, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coeff(const Place& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<Place, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational degree() const {
    Rational d(0);
    for (const auto& [p, c] : terms_) d += c * p.degree();
    return d;
  }

  bool is_effective() const {
    for (const auto& [p, c] : terms_) {
      (void)p;
      if (c < 0) return false;
    }
    return true;
  }

  bool is_integral() const {
    for (const auto& [p, c] : terms_) {
      (void)p;
      if (rat_den(c) != 1) return false;
    }
    return true;
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [p, c] : b.terms_) r.add(p, c);
    return r;
  }

  friend Divisor operator-(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [p, c] : b.terms_) r.add(p, -c);
    return r;
  }

  friend Divisor operator*(const Rational& s, const Divisor& a) {
    Divisor r;
    if (s == 0) return r;
    for (const auto& [p, c] : a.terms_) r.terms_.emplace(p, s * c);
    return r;
  }

  friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

  std::string str(char var = 'z') const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [p, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += rat_str(c) + "*[" + p.str(var) + "]";
    }
    return out;
  }

 private:
  std::map<Place, Rational> terms_;
};

}  // namespace orbicurve
