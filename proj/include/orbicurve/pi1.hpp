#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "orbifold.hpp"
#include "rational.hpp"

namespace orbicurve {

// Smith normal form of an integer matrix: returns the diagonal d_1, ..., d_k
// (k = min(rows, cols)) with d_i >= 0 and d_i | d_{i+1}. Row/column
// operations are unimodular, so Z^cols / rowspan is preserved.
inline std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> a) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  const size_t k = std::min(rows, cols);
  std::vector<Int> diag(k, 0);

  for (size_t t = 0; t < k; ++t) {
    // Move a nonzero entry of smallest magnitude in the submatrix to (t, t).
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 &&
            (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(a[t], a[pi]);
    for (size_t i = t; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

    for (;;) {
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {  // remainder is smaller: promote it to pivot
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (size_t i = t; i < rows; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // Pivot must divide the rest of the submatrix; if not, absorb the
      // offending row and reduce again.
      bool divides = true;
      for (size_t i = t + 1; i < rows && divides; ++i)
        for (size_t j = t + 1; j < cols && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            divides = false;
          }
      if (divides) break;
    }
    diag[t] = abs(a[t][t]);
  }
  return diag;
}

// Invariant factors of Z^generators / rowspan(relators): the torsion factors
// (> 1, each dividing the next) and the rank of the free part.
struct AbelianInvariants {
  std::vector<Int> torsion;
  int free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }

  friend bool operator==(const AbelianInvariants& x, const AbelianInvariants& y) {
    return x.torsion == y.torsion && x.free_rank == y.free_rank;
  }
};

inline AbelianInvariants abelian_invariants(size_t generators,
                                            const std::vector<std::vector<Int>>& relators) {
  for (const auto& r : relators)
    if (r.size() != generators)
      throw InputError("abelian invariants: relator length must match generator count");
  AbelianInvariants out;
  if (generators == 0) return out;
  if (relators.empty()) {
    out.free_rank = static_cast<int>(generators);
    return out;
  }
  std::vector<Int> d = smith_normal_form(relators);
  size_t rank = 0;
  for (const Int& x : d)
    if (x != 0) {
      ++rank;
      if (x > 1) out.torsion.push_back(x);
    }
  out.free_rank = static_cast<int>(generators - rank);
  return out;
}

// Presentation of the orbifold fundamental group: surface generators
// a_i, b_i (genus many pairs), one loop generator c_j per marked point —
// finite marks carry a torsion relation, punctures and infinite marks do
// not — and the single surface relation [a_1,b_1]...[a_g,b_g] c_1 ... c_k.
struct Pi1Presentation {
  int genus = 0;
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  std::vector<std::vector<Int>> relator_rows;  // abelianized exponent rows
};

struct Pi1Result {
  Pi1Presentation presentation;
  bool trivial = false;
  AbelianInvariants abelianization;
};

namespace pi1_detail {

// Loop generators around marked points: multiplicity per finite mark
// (in divisor order), 0 for each weight-one point (infinite marks,
// punctures, and the ideal boundary of a disc).
struct LoopData {
  std::vector<long long> orders;  // 0 = torsion-free
};

inline LoopData loop_data(const OrbifoldCurve& o) {
  LoopData l;
  for (const auto& [p, m] : o.delta.terms())
    l.orders.push_back(m.is_infinite() ? 0 : m.value());
  for (int i = 0; i < o.punctures; ++i) l.orders.push_back(0);
  if (o.base.kind() == BaseCurve::Kind::Disc) l.orders.push_back(0);
  return l;
}

// The complete list of orbifolds with trivial fundamental group: the plane,
// the disc, the projective line, one marked point on the line, or two marked
// points with coprime multiplicities.
inline bool uniformization_trivial(const OrbifoldCurve& o) {
  if (o.base.kind() == BaseCurve::Kind::Disc)
    return o.delta.terms().empty() && o.punctures == 0;
  if (o.base.genus() != 0) return false;

  std::vector<long long> finite;
  int weight_one = o.punctures;
  for (const auto& [p, m] : o.delta.terms()) {
    if (m.is_infinite())
      ++weight_one;
    else
      finite.push_back(m.value());
  }
  if (weight_one == 0) {
    if (finite.size() <= 1) return true;
    if (finite.size() == 2) return std::gcd(finite[0], finite[1]) == 1;
    return false;
  }
  // One added point makes the plane; it is trivial only unmarked.
  return weight_one == 1 && finite.empty();
}

}  // namespace pi1_detail

inline Pi1Result pi1_presentation(const OrbifoldCurve& o) {
  if (o.infinite_support)
    throw PremiseError("fundamental group: infinite orbifold support is not finitely presented here");
  if (o.base.kind() == BaseCurve::Kind::NonCompactifiable)
    throw PremiseError("fundamental group: the base curve carries no marked-point model");

  int g = o.base.kind() == BaseCurve::Kind::Disc ? 0 : o.base.genus();
  pi1_detail::LoopData loops = pi1_detail::loop_data(o);
  const size_t k = loops.orders.size();
  const size_t n = 2 * static_cast<size_t>(g) + k;

  Pi1Result res;
  Pi1Presentation& pres = res.presentation;
  pres.genus = g;
  for (int i = 1; i <= g; ++i) {
    pres.generators.push_back("a" + std::to_string(i));
    pres.generators.push_back("b" + std::to_string(i));
  }
  for (size_t j = 1; j <= k; ++j) pres.generators.push_back("c" + std::to_string(j));

  // Surface relation: commutators vanish in the abelianization, the loop
  // generators each contribute exponent 1.
  std::string word;
  for (int i = 1; i <= g; ++i)
    word += "[a" + std::to_string(i) + ",b" + std::to_string(i) + "]";
  std::vector<Int> row(n, 0);
  for (size_t j = 0; j < k; ++j) {
    if (!word.empty()) word += " ";
    word += "c" + std::to_string(j + 1);
    row[2 * static_cast<size_t>(g) + j] = 1;
  }
  if (word.empty()) word = "1";
  pres.relators.push_back(word);
  pres.relator_rows.push_back(std::move(row));

  for (size_t j = 0; j < k; ++j) {
    if (loops.orders[j] == 0) continue;
    pres.relators.push_back("c" + std::to_string(j + 1) + "^" +
                            std::to_string(loops.orders[j]));
    std::vector<Int> trow(n, 0);
    trow[2 * static_cast<size_t>(g) + j] = loops.orders[j];
    pres.relator_rows.push_back(std::move(trow));
  }

  res.abelianization = abelian_invariants(n, pres.relator_rows);
  res.trivial = pi1_detail::uniformization_trivial(o);
  // A trivial group abelianizes trivially; catching the converse here would
  // be wrong (perfect groups exist), so only this direction is enforced.
  if (res.trivial && !res.abelianization.trivial())
    throw std::logic_error("fundamental group: trivial verdict with nontrivial abelianization");
  return res;
}

}  // namespace orbicurve
