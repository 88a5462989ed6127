#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include <orbicurve/poly_parser.hpp>
#include <orbicurve/squarefree.hpp>

#include "gen.hpp"

using namespace orbicurve;
using orbigen::Rng;

namespace {

using Decomp = std::vector<std::pair<Polynomial, int>>;

Decomp sorted(Decomp d) {
  std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) {
    return a.second < b.second;
  });
  return d;
}

Polynomial reassemble(const Polynomial& input, const Decomp& d) {
  Polynomial r{input.lc()};
  for (const auto& [g, e] : d) r = r * poly_pow(g, static_cast<unsigned>(e));
  return r;
}

}  // namespace

TEST_CASE("fixed decompositions") {
  CHECK(sorted(squarefree_decompose(parse_poly("z^2"))) ==
        Decomp{{parse_poly("z"), 2}});
  CHECK(sorted(squarefree_decompose(parse_poly("(z-1)*(z+1)"))) ==
        Decomp{{parse_poly("z^2-1"), 1}});
  // Expand z^3 (z-1)^2 and check against the hand decomposition.
  Polynomial p = poly_pow(parse_poly("z"), 3) * poly_pow(parse_poly("z-1"), 2);
  CHECK(sorted(squarefree_decompose(p)) ==
        Decomp{{parse_poly("z-1"), 2}, {parse_poly("z"), 3}});
  CHECK(squarefree_decompose(parse_poly("7")).empty());
  CHECK_THROWS_AS(squarefree_decompose(Polynomial()), InputError);
}

TEST_CASE("leading coefficient does not leak into the factors") {
  Polynomial p = parse_poly("4*z^2 - 4");
  CHECK(sorted(squarefree_decompose(p)) == Decomp{{parse_poly("z^2-1"), 1}});
}

TEST_CASE("random products round-trip with correct multiplicities") {
  Rng rng(11);
  std::uniform_int_distribution<int> mult(1, 4);
  std::uniform_int_distribution<int> root(-4, 4);
  for (int iter = 0; iter < 60; ++iter) {
    // Distinct linear factors and an irreducible quadratic, random powers.
    int r1 = root(rng), r2 = root(rng);
    while (r2 == r1) r2 = root(rng);
    int e1 = mult(rng), e2 = mult(rng), e3 = mult(rng);
    while (e2 == e1) e2 = mult(rng);
    while (e3 == e1 || e3 == e2) e3 = mult(rng);
    Polynomial f1 = Polynomial::var() - Polynomial(Rational(r1));
    Polynomial f2 = Polynomial::var() - Polynomial(Rational(r2));
    Polynomial f3 = parse_poly("z^2+1");
    Polynomial p = poly_pow(f1, static_cast<unsigned>(e1)) *
                   poly_pow(f2, static_cast<unsigned>(e2)) *
                   poly_pow(f3, static_cast<unsigned>(e3)) *
                   Polynomial(orbigen::rand_rat(rng, 5, 3) + Rational(6));
    Decomp d = squarefree_decompose(p);
    CHECK(reassemble(p, d) == p);
    for (const auto& [g, e] : d) {
      CHECK(g.lc() == 1);
      CHECK(gcd(g, g.derivative()).degree() == 0);
      for (const auto& [h, e2_] : d) {
        if (e != e2_) CHECK(gcd(g, h).degree() == 0);
      }
    }
    Decomp s = sorted(d);
    Decomp expected;
    std::vector<std::pair<int, Polynomial>> by_mult = {
        {e1, f1}, {e2, f2}, {e3, f3}};
    std::sort(by_mult.begin(), by_mult.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [e, g] : by_mult) expected.emplace_back(g, e);
    CHECK(s == expected);
  }
}

TEST_CASE("radical strips multiplicities") {
  Polynomial p = poly_pow(parse_poly("z"), 3) * poly_pow(parse_poly("z-1"), 2);
  CHECK(radical(p) == parse_poly("z") * parse_poly("z-1"));
}
