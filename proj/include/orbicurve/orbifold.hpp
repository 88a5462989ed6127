#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divisor.hpp"
#include "elliptic_curve.hpp"
#include "errors.hpp"
#include "place.hpp"
#include "rational.hpp"

namespace orbicurve {

// Orbifold multiplicity m >= 1 or infinity; carries weight 1 - 1/m (resp. 1).
// Weight-0 multiplicity (m = 1) exists as a value but is never stored in an
// orbifold divisor.
class Multiplicity {
 public:
  static Multiplicity infinite() { return Multiplicity(0); }
  static Multiplicity finite(long long m) {
    if (m < 1) throw InputError("multiplicity: must be >= 1");
    return Multiplicity(m);
  }

  bool is_infinite() const { return m_ == 0; }
  long long value() const { return m_; }  // pre: finite

  Rational weight() const {
    if (m_ == 0) return Rational(1);
    return Rational(m_ - 1, m_);
  }

  std::string str() const { return m_ == 0 ? "inf" : std::to_string(m_); }

  friend bool operator==(Multiplicity a, Multiplicity b) { return a.m_ == b.m_; }
  friend bool operator!=(Multiplicity a, Multiplicity b) { return a.m_ != b.m_; }
  friend bool operator<(Multiplicity a, Multiplicity b) {
    if (a.m_ == 0) return false;
    if (b.m_ == 0) return true;
    return a.m_ < b.m_;
  }

 private:
  explicit Multiplicity(long long m) : m_(m) {}
  long long m_;  // 0 encodes infinity
};

// Weighted orbifold divisor: finitely many places with multiplicity >= 2 (or
// infinity). Infinite supports are tracked by a flag on the curve, never
// here.
class OrbifoldDivisor {
 public:
  OrbifoldDivisor() = default;

  void set(const Place& p, Multiplicity m) {
    if (!m.is_infinite() && m.value() == 1) return;  // weight 0: dropped
    terms_.insert_or_assign(p, m);
  }

  std::optional<Multiplicity> at(const Place& p) const {
    auto it = terms_.find(p);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  Rational weight(const Place& p) const {
    auto m = at(p);
    return m ? m->weight() : Rational(0);
  }

  const std::map<Place, Multiplicity>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  bool has_infinite() const {
    for (const auto& [p, m] : terms_) {
      (void)p;
      if (m.is_infinite()) return true;
    }
    return false;
  }

  // Sum of weight * deg(place).
  Rational weight_degree() const {
    Rational d(0);
    for (const auto& [p, m] : terms_) d += m.weight() * p.degree();
    return d;
  }

  // As a Q-divisor of weights.
  Divisor weights() const {
    Divisor d;
    for (const auto& [p, m] : terms_) d.add(p, m.weight());
    return d;
  }

  // Number of geometric points in the support.
  int geometric_points() const {
    int n = 0;
    for (const auto& [p, m] : terms_) {
      (void)m;
      n += p.degree();
    }
    return n;
  }

  friend bool operator==(const OrbifoldDivisor& a, const OrbifoldDivisor& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const OrbifoldDivisor& a, const OrbifoldDivisor& b) {
    return !(a == b);
  }

  std::string str(char var = 'z') const {
    if (terms_.empty()) return "empty";
    std::string out;
    for (const auto& [p, m] : terms_) {
      if (!out.empty()) out += ", ";
      out += "[" + p.str(var) + "]: " + m.str();
    }
    return out;
  }

 private:
  std::map<Place, Multiplicity> terms_;
};

// weight_A(p) <= weight_B(p) everywhere.
inline bool divisor_leq(const OrbifoldDivisor& a, const OrbifoldDivisor& b) {
  for (const auto& [p, m] : a.terms()) {
    if (m.weight() > b.weight(p)) return false;
  }
  return true;
}

// Pointwise maximum of weights (join of the partial order).
inline OrbifoldDivisor divisor_max(const OrbifoldDivisor& a, const OrbifoldDivisor& b) {
  OrbifoldDivisor r = a;
  for (const auto& [p, m] : b.terms()) {
    auto cur = r.at(p);
    if (!cur || cur->weight() < m.weight()) r.set(p, m);
  }
  return r;
}

class BaseCurve {
 public:
  enum class Kind { P1, Elliptic, Disc, CompactGenus, NonCompactifiable };

  static BaseCurve p1() { return BaseCurve(Kind::P1, 0, std::nullopt); }
  static BaseCurve disc() { return BaseCurve(Kind::Disc, 0, std::nullopt); }
  static BaseCurve noncompactifiable() {
    return BaseCurve(Kind::NonCompactifiable, 0, std::nullopt);
  }
  static BaseCurve elliptic(EllipticCurve c) {
    return BaseCurve(Kind::Elliptic, 1, std::move(c));
  }
  static BaseCurve compact_genus(int g) {
    if (g < 0) throw InputError("base curve: genus must be >= 0");
    return BaseCurve(Kind::CompactGenus, g, std::nullopt);
  }

  Kind kind() const { return kind_; }
  bool has_genus() const {
    return kind_ == Kind::P1 || kind_ == Kind::Elliptic || kind_ == Kind::CompactGenus;
  }
  int genus() const {
    if (!has_genus()) throw PremiseError("base curve: no genus for this base");
    return genus_;
  }
  const EllipticCurve& curve() const { return *curve_; }  // pre: Elliptic

  friend bool operator==(const BaseCurve& a, const BaseCurve& b) {
    return a.kind_ == b.kind_ && a.genus_ == b.genus_ && a.curve_ == b.curve_;
  }

 private:
  BaseCurve(Kind k, int g, std::optional<EllipticCurve> c)
      : kind_(k), genus_(g), curve_(std::move(c)) {}
  Kind kind_;
  int genus_;
  std::optional<EllipticCurve> curve_;
};

// (X/Delta) with X possibly non-compact: punctures counts the weight-1
// boundary points of the compact model that are missing from X.
struct OrbifoldCurve {
  BaseCurve base = BaseCurve::p1();
  OrbifoldDivisor delta;
  int punctures = 0;
  bool infinite_support = false;

  bool compact() const { return punctures == 0 && !delta.has_infinite(); }
};

// deg(K + Delta) of the compact model plus punctures at weight 1.
inline Rational canonical_degree(const OrbifoldCurve& o) {
  if (!o.base.has_genus())
    throw PremiseError("canonical degree: base curve is not compactifiable");
  if (o.infinite_support)
    throw PremiseError("canonical degree: undefined for infinite orbifold support");
  return Rational(2 * o.base.genus() - 2) + o.delta.weight_degree() + o.punctures;
}

struct BlowupThreshold {
  bool infinite = false;
  Rational m;          // meaningful when finite
  Multiplicity k_min;  // smallest integer multiplicity of weight >= 1 - 1/m

  friend bool operator==(const BlowupThreshold& a, const BlowupThreshold& b) {
    return a.infinite == b.infinite && (a.infinite || a.m == b.m) && a.k_min == b.k_min;
  }
};

// Exceptional multiplicity after a weighted blow-up meeting components of
// multiplicity n_i to order d_i: the threshold is max n_i / d_i.
inline BlowupThreshold blowup_exceptional_threshold(
    const std::vector<std::pair<Multiplicity, int>>& pairs) {
  if (pairs.empty()) throw InputError("blow-up threshold: empty input");
  BlowupThreshold r{false, Rational(0), Multiplicity::finite(1)};
  for (const auto& [n, d] : pairs) {
    if (d < 1) throw InputError("blow-up threshold: contact order must be >= 1");
    if (n.is_infinite()) {
      return BlowupThreshold{true, Rational(0), Multiplicity::infinite()};
    }
    r.m = std::max(r.m, Rational(n.value(), d));
  }
  r.k_min = Multiplicity::finite(rat_ceil(r.m).convert_to<long long>());
  return r;
}

}  // namespace orbicurve
