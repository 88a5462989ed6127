#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "orbifold.hpp"
#include "place.hpp"

namespace orbicurve {

// A Mobius transformation z -> (az + b)/(cz + d), stored with determinant 1.
// M and -M act identically; comparisons work modulo that sign.
struct Mobius {
  std::complex<double> a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Mobius from_matrix(std::complex<double> a, std::complex<double> b,
                            std::complex<double> c, std::complex<double> d) {
    std::complex<double> det = a * d - b * c;
    if (std::abs(det) < 1e-12)
      throw InputError("mobius transformation: the matrix is singular");
    std::complex<double> s = std::sqrt(det);
    return Mobius{a / s, b / s, c / s, d / s};
  }

  // Rotation of the sphere by `angle` about the unit axis (ux, uy, uz),
  // transported to a Mobius map by stereographic projection.
  static Mobius rotation(double ux, double uy, double uz, double angle) {
    double n = std::sqrt(ux * ux + uy * uy + uz * uz);
    ux /= n;
    uy /= n;
    uz /= n;
    double co = std::cos(angle / 2), si = std::sin(angle / 2);
    const std::complex<double> i(0.0, 1.0);
    return Mobius{co - i * uz * si, (-i * ux - uy) * si, (-i * ux + uy) * si,
                  co + i * uz * si};
  }

  friend Mobius operator*(const Mobius& x, const Mobius& y) {
    return Mobius{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                  x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  bool same_as(const Mobius& o, double tol = 1e-9) const {
    double plus = std::abs(a - o.a) + std::abs(b - o.b) + std::abs(c - o.c) +
                  std::abs(d - o.d);
    double minus = std::abs(a + o.a) + std::abs(b + o.b) + std::abs(c + o.c) +
                   std::abs(d + o.d);
    return std::min(plus, minus) < tol;
  }

  bool is_identity(double tol = 1e-9) const { return same_as(Mobius{}, tol); }
};

// A point of the Riemann sphere in numeric coordinates.
struct SpherePoint {
  std::complex<double> z{0.0};
  bool at_inf = false;

  static SpherePoint infinity() { return SpherePoint{0.0, true}; }
};

// Chordal metric on the sphere; bounded by 2 and finite at infinity.
inline double chordal(const SpherePoint& p, const SpherePoint& q) {
  if (p.at_inf && q.at_inf) return 0.0;
  if (p.at_inf || q.at_inf) {
    const std::complex<double>& z = p.at_inf ? q.z : p.z;
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  return 2.0 * std::abs(p.z - q.z) /
         std::sqrt((1.0 + std::norm(p.z)) * (1.0 + std::norm(q.z)));
}

inline SpherePoint apply(const Mobius& g, const SpherePoint& p) {
  // Work projectively: (z : w) -> (az + bw : cz + dw) avoids dividing by a
  // near-zero denominator.
  std::complex<double> z = p.at_inf ? 1.0 : p.z;
  std::complex<double> w = p.at_inf ? 0.0 : 1.0;
  std::complex<double> nz = g.a * z + g.b * w, nw = g.c * z + g.d * w;
  if (std::abs(nw) <= 1e-12 * std::abs(nz)) return SpherePoint::infinity();
  return SpherePoint{nz / nw, false};
}

// Both fixed points of a non-identity transformation of finite order.
inline std::vector<SpherePoint> fixed_points(const Mobius& g) {
  std::vector<SpherePoint> out;
  if (std::abs(g.c) > 1e-9) {
    // c z^2 + (d - a) z - b = 0
    std::complex<double> disc = std::sqrt((g.d - g.a) * (g.d - g.a) + 4.0 * g.c * g.b);
    out.push_back(SpherePoint{(g.a - g.d + disc) / (2.0 * g.c), false});
    out.push_back(SpherePoint{(g.a - g.d - disc) / (2.0 * g.c), false});
  } else {
    out.push_back(SpherePoint::infinity());
    if (std::abs(g.d - g.a) > 1e-9)
      out.push_back(SpherePoint{g.b / (g.d - g.a), false});
  }
  return out;
}

// Closure of a generator list under products. Throws if the closure exceeds
// `cap` elements (non-closing or oversized input).
inline std::vector<Mobius> mobius_group_closure(const std::vector<Mobius>& generators,
                                                size_t cap = 120) {
  std::vector<Mobius> elems{Mobius{}};
  auto known = [&elems](const Mobius& g) {
    for (const auto& e : elems)
      if (e.same_as(g)) return true;
    return false;
  };
  for (const auto& g : generators)
    if (!known(g)) elems.push_back(g);

  for (size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : generators) {
      Mobius prod = elems[i] * g;
      if (!known(prod)) {
        if (elems.size() >= cap)
          throw PremiseError("group closure: generators do not close within " +
                             std::to_string(cap) + " elements");
        elems.push_back(prod);
      }
    }
  }
  return elems;
}

// One branch orbit of the quotient map: common stabilizer order and the
// number of points in the orbit.
struct BranchOrbit {
  long long stabilizer = 1;
  long long orbit_size = 1;
};

struct QuotientReport {
  long long group_order = 1;
  std::vector<BranchOrbit> orbits;  // sorted by stabilizer order
  OrbifoldDivisor divisor;          // multiplicities at 0, 1, ..., infinity
};

namespace quotient_detail {

constexpr double kClusterTol = 1e-7;

inline long long stabilizer_order(const std::vector<Mobius>& group, const SpherePoint& p) {
  long long n = 0;
  for (const auto& g : group)
    if (chordal(apply(g, p), p) < kClusterTol) ++n;
  return n;
}

}  // namespace quotient_detail

// Branch data of the quotient of the sphere by a finite Mobius group: every
// point with nontrivial stabilizer contributes 1 - 1/#stabilizer to the
// quotient orbifold divisor, one component per orbit. The multiplicities
// are placed at 0, 1, 2, ... and infinity (ascending order, infinity last);
// the sphere's own coordinates do not descend to the quotient, so the
// placement is a normalization.
inline QuotientReport quotient_branch_data(const std::vector<Mobius>& group) {
  using quotient_detail::kClusterTol;
  QuotientReport rep;
  rep.group_order = static_cast<long long>(group.size());

  // Distinct fixed points of all non-identity elements.
  std::vector<SpherePoint> pts;
  for (const auto& g : group) {
    if (g.is_identity()) continue;
    for (const auto& p : fixed_points(g)) {
      bool fresh = true;
      for (const auto& q : pts)
        if (chordal(p, q) < kClusterTol) {
          fresh = false;
          break;
        }
      if (fresh) pts.push_back(p);
    }
  }

  // Group the fixed points into orbits and record stabilizer orders.
  std::vector<bool> used(pts.size(), false);
  long long incidence = 0;  // sum of (stabilizer - 1) over all fixed points
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> orbit{i};
    used[i] = true;
    for (size_t k = 0; k < orbit.size(); ++k) {
      for (const auto& g : group) {
        SpherePoint img = apply(g, pts[orbit[k]]);
        for (size_t j = 0; j < pts.size(); ++j) {
          if (used[j] || chordal(img, pts[j]) >= kClusterTol) continue;
          used[j] = true;
          orbit.push_back(j);
        }
      }
    }
    long long stab = quotient_detail::stabilizer_order(group, pts[i]);
    for (size_t idx : orbit) {
      long long s = quotient_detail::stabilizer_order(group, pts[idx]);
      if (s != stab)
        throw NumericError("quotient: stabilizer orders disagree within an orbit");
      incidence += s - 1;
    }
    long long size = static_cast<long long>(orbit.size());
    if (stab * size != rep.group_order)
      throw NumericError("quotient: orbit size times stabilizer misses the group order");
    rep.orbits.push_back({stab, size});
  }
  // Each non-identity rotation fixes exactly two points, so the incidences
  // must add up to twice the count of non-identity elements.
  if (incidence != 2 * (rep.group_order - 1))
    throw NumericError("quotient: fixed-point incidences do not match the group order");

  std::sort(rep.orbits.begin(), rep.orbits.end(),
            [](const BranchOrbit& x, const BranchOrbit& y) {
              return x.stabilizer < y.stabilizer;
            });
  for (size_t i = 0; i < rep.orbits.size(); ++i) {
    Place at = (i + 1 == rep.orbits.size())
                   ? Place::infinity()
                   : Place::of_rational(Rational(static_cast<long long>(i)));
    rep.divisor.set(at, Multiplicity::finite(rep.orbits[i].stabilizer));
  }
  return rep;
}

// The finite groups of sphere rotations, given by explicit generators.
enum class GroupPreset { Cyclic, Dihedral, Tetrahedral, Octahedral, Icosahedral };

inline const char* group_name(GroupPreset p) {
  switch (p) {
    case GroupPreset::Cyclic: return "cyclic";
    case GroupPreset::Dihedral: return "dihedral";
    case GroupPreset::Tetrahedral: return "tetrahedral";
    case GroupPreset::Octahedral: return "octahedral";
    default: return "icosahedral";
  }
}

inline GroupPreset group_from_name(const std::string& s) {
  if (s == "cyclic") return GroupPreset::Cyclic;
  if (s == "dihedral") return GroupPreset::Dihedral;
  if (s == "tetrahedral") return GroupPreset::Tetrahedral;
  if (s == "octahedral") return GroupPreset::Octahedral;
  if (s == "icosahedral") return GroupPreset::Icosahedral;
  throw InputError(
      "group preset: expected cyclic, dihedral, tetrahedral, octahedral, or icosahedral");
}

inline std::vector<Mobius> preset_generators(GroupPreset preset, int n = 0) {
  const double pi = std::acos(-1.0);
  switch (preset) {
    case GroupPreset::Cyclic:
      if (n < 1) throw InputError("cyclic group: the order must be >= 1");
      return {Mobius::rotation(0, 0, 1, 2 * pi / n)};
    case GroupPreset::Dihedral:
      if (n < 2) throw InputError("dihedral group: the rotation order must be >= 2");
      return {Mobius::rotation(0, 0, 1, 2 * pi / n), Mobius::rotation(1, 0, 0, pi)};
    case GroupPreset::Tetrahedral:
      // Order-2 axis through opposite edge midpoints, order-3 through a vertex.
      return {Mobius::rotation(1, 0, 0, pi), Mobius::rotation(1, 1, 1, 2 * pi / 3)};
    case GroupPreset::Octahedral:
      return {Mobius::rotation(0, 0, 1, pi / 2), Mobius::rotation(1, 1, 1, 2 * pi / 3)};
    default: {
      // Order-5 axis through the vertex (0, 1, phi), order-2 through the
      // midpoint of the edge joining (0, 1, phi) and (0, -1, phi).
      double phi = (1.0 + std::sqrt(5.0)) / 2.0;
      return {Mobius::rotation(0, 1, phi, 2 * pi / 5), Mobius::rotation(0, 0, 1, pi)};
    }
  }
}

inline QuotientReport quotient_analysis(GroupPreset preset, int n = 0) {
  return quotient_branch_data(mobius_group_closure(preset_generators(preset, n)));
}

// Orbifold divisor of the quotient of the sphere by the preset group.
inline OrbifoldDivisor quotient_signature(GroupPreset preset, int n = 0) {
  return quotient_analysis(preset, n).divisor;
}

}  // namespace orbicurve
