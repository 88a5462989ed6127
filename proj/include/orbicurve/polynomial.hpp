#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace orbicurve {

// Dense univariate polynomial over K. Coefficient i belongs to z^i; no
// trailing zeros are stored, the zero polynomial is empty and has degree -1.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(const K& c) {
    if (!(c == K(0))) c_.push_back(c);
  }

  static Poly var() {
    Poly p;
    p.c_ = {K(0), K(1)};
    return p;
  }

  static Poly from_coeffs(std::vector<K> c) {
    Poly p;
    p.c_ = std::move(c);
    p.trim();
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }

  const K& operator[](int i) const {
    static const K kzero{};
    if (i < 0 || i >= static_cast<int>(c_.size())) return kzero;
    return c_[static_cast<size_t>(i)];
  }

  const K& lc() const { return c_.back(); }  // pre: nonzero polynomial

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  // Compound forms, needed so Poly itself qualifies as a coefficient ring.
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == K(0)) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  friend Poly operator*(const Poly& a, const K& s) {
    if (s == K(0)) return Poly();
    Poly r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend Poly operator*(const K& s, const Poly& a) { return a * s; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Degree-then-coefficient order; total, used for map keys.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }

  K eval(const K& x) const {
    K r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  Poly derivative() const {
    Poly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * K(static_cast<int>(i));
    r.trim();
    return r;
  }

  // this(g), Horner in g.
  Poly compose(const Poly& g) const {
    Poly r;
    for (size_t i = c_.size(); i-- > 0;) r = r * g + Poly(c_[i]);
    return r;
  }

  // Multiply by z^k.
  Poly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r;
    r.c_.assign(c_.size() + static_cast<size_t>(k), K(0));
    std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }

  std::vector<K> c_;
};

template <class K>
Poly<K> poly_pow(Poly<K> base, unsigned e) {
  Poly<K> r{K(1)};
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

template <class K>
K pow_k(K base, unsigned e) {
  K r(1);
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

// Long division; requires b nonzero with lc(b) invertible in K.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw std::logic_error("divmod: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly<K>(), a};
  std::vector<K> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<K> quo(static_cast<size_t>(a.degree() - b.degree()) + 1, K(0));
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    K q = rem[static_cast<size_t>(i)] / b.lc();
    if (q == K(0)) continue;
    quo[static_cast<size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= q * b[j];
  }
  return {Poly<K>::from_coeffs(std::move(quo)), Poly<K>::from_coeffs(std::move(rem))};
}

template <class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

template <class K>
Poly<K> monic(const Poly<K>& p) {
  if (p.is_zero() || p.lc() == K(1)) return p;
  return p * (K(1) / p.lc());
}

// Monic gcd by plain Euclid; fine over small fields, use gcd() for Q.
template <class K>
Poly<K> gcd_field(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = b;
    b = r;
  }
  return monic(a);
}

using Polynomial = Poly<Rational>;
using IPoly = Poly<Int>;

inline Int content(const IPoly& p) {
  Int g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, c);
  return g < 0 ? Int(-g) : g;
}

// Content divided out and leading coefficient made positive.
inline IPoly primitive_part(const IPoly& p) {
  if (p.is_zero()) return p;
  Int g = content(p);
  if (p.lc() < 0) g = -g;
  std::vector<Int> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(x / g);
  return IPoly::from_coeffs(std::move(c));
}

// p = scale * q with q primitive over Z and lc(q) > 0.
inline std::pair<IPoly, Rational> to_integer(const Polynomial& p) {
  if (p.is_zero()) return {IPoly(), Rational(0)};
  Int l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, rat_den(c));
  std::vector<Int> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(rat_num(c) * (l / rat_den(c)));
  IPoly q = IPoly::from_coeffs(std::move(v));
  Int g = content(q);
  if (q.lc() < 0) g = -g;
  std::vector<Int> w;
  w.reserve(q.coeffs().size());
  for (const auto& x : q.coeffs()) w.push_back(x / g);
  return {IPoly::from_coeffs(std::move(w)), Rational(g, l)};
}

inline Polynomial to_rational(const IPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return Polynomial::from_coeffs(std::move(c));
}

// Pseudo-remainder: repeatedly scales by lc(b), stays over Z. pre: b nonzero.
inline IPoly prem(IPoly a, const IPoly& b) {
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    IPoly t = (b * a.lc()).shifted(a.degree() - db);
    a = a * b.lc() - t;
  }
  return a;
}

// Primitive gcd over Z (content of the inputs is ignored), lc > 0.
inline IPoly gcd_primitive(IPoly a, IPoly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IPoly r = primitive_part(prem(a, b));
    a = b;
    b = r;
  }
  return a.degree() == 0 ? IPoly(Int(1)) : a;
}

// Monic gcd over Q via the primitive PRS (coefficient growth stays tame).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  IPoly g = gcd_primitive(to_integer(a).first, to_integer(b).first);
  return monic(to_rational(g));
}

// res(a, b) over a field; res(const c, const d) = 1, res with a zero
// polynomial is 0 unless the other argument is a nonzero constant.
template <class K>
K resultant(Poly<K> a, Poly<K> b) {
  if (a.is_zero() || b.is_zero()) {
    const Poly<K>& other = a.is_zero() ? b : a;
    return other.degree() == 0 ? K(1) : K(0);
  }
  K r(1);
  bool neg = false;
  while (true) {
    if (b.degree() == 0) {
      r = r * pow_k(b.lc(), static_cast<unsigned>(a.degree()));
      break;
    }
    if (a.degree() < b.degree()) {
      if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
      std::swap(a, b);
      continue;
    }
    Poly<K> rem = divmod(a, b).second;
    if (rem.is_zero()) return K(0);
    r = r * pow_k(b.lc(), static_cast<unsigned>(a.degree() - rem.degree()));
    if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
    a = b;
    b = rem;
  }
  return neg ? K(-r) : r;
}

// Lagrange interpolation through distinct nodes.
template <class K>
Poly<K> interpolate(const std::vector<std::pair<K, K>>& pts) {
  Poly<K> full{K(1)};
  for (const auto& [x, y] : pts) {
    (void)y;
    full = full * (Poly<K>::var() - Poly<K>(x));
  }
  Poly<K> r;
  for (const auto& [x, y] : pts) {
    Poly<K> q = exact_div(full, Poly<K>::var() - Poly<K>(x));
    r = r + q * (y / q.eval(x));
  }
  return r;
}

}  // namespace orbicurve
