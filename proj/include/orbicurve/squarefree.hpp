#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace orbicurve {

// Yun decomposition: p = lc(p) * prod f_e^e with every f_e monic, square-free
// and the f_e pairwise coprime. Only nonconstant factors are returned,
// ascending in e.
inline std::vector<std::pair<Polynomial, int>> squarefree_decompose(const Polynomial& p) {
  if (p.is_zero()) throw InputError("squarefree_decompose: zero polynomial");
  std::vector<std::pair<Polynomial, int>> out;
  Polynomial f = monic(p);
  if (f.degree() <= 0) return out;
  Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = exact_div(f, a);
  Polynomial c = exact_div(fp, a);
  Polynomial d = c - b.derivative();
  for (int e = 1; b.degree() > 0; ++e) {
    Polynomial g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, e);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
  }
  return out;
}

// Radical: product of the distinct monic irreducible-square-free layers.
inline Polynomial radical(const Polynomial& p) {
  Polynomial r{Rational(1)};
  for (const auto& [g, e] : squarefree_decompose(p)) {
    (void)e;
    r = r * g;
  }
  return r;
}

}  // namespace orbicurve
