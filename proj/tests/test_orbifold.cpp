#include <catch2/catch_amalgamated.hpp>

#include <orbicurve/orbifold.hpp>
#include <orbicurve/quad_ext.hpp>

#include "gen.hpp"

using namespace orbicurve;
using orbigen::Rng;

namespace {

OrbifoldDivisor triple(long long p, long long q, long long r) {
  OrbifoldDivisor d;
  d.set(Place::of_rational(Rational(0)), Multiplicity::finite(p));
  d.set(Place::of_rational(Rational(1)), Multiplicity::finite(q));
  d.set(Place::infinity(), Multiplicity::finite(r));
  return d;
}

OrbifoldDivisor rand_orbidiv(Rng& rng) {
  OrbifoldDivisor d;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    Place p = Place::of_rational(Rational(static_cast<int>(rng() % 5)));
    if (rng() % 5 == 0) {
      d.set(p, Multiplicity::infinite());
    } else {
      d.set(p, Multiplicity::finite(2 + static_cast<long long>(rng() % 5)));
    }
  }
  return d;
}

}  // namespace

TEST_CASE("multiplicity weights") {
  CHECK(Multiplicity::finite(2).weight() == Rational(1, 2));
  CHECK(Multiplicity::finite(3).weight() == Rational(2, 3));
  CHECK(Multiplicity::finite(1).weight() == 0);
  CHECK(Multiplicity::infinite().weight() == 1);
  CHECK(Multiplicity::finite(2) < Multiplicity::infinite());
  CHECK(Multiplicity::finite(2) < Multiplicity::finite(3));
  CHECK_THROWS_AS(Multiplicity::finite(0), InputError);

  OrbifoldDivisor d;
  d.set(Place::of_rational(Rational(0)), Multiplicity::finite(1));
  CHECK(d.empty());  // weight-0 components are dropped
}

TEST_CASE("canonical degree") {
  OrbifoldCurve o;
  CHECK(canonical_degree(o) == Rational(-2));

  o.delta = triple(2, 3, 7);
  CHECK(canonical_degree(o) == Rational(1, 42));

  OrbifoldCurve e;
  e.base = BaseCurve::elliptic(EllipticCurve::parse("x^3 - x"));
  CHECK(canonical_degree(e) == 0);

  OrbifoldCurve punct;
  punct.punctures = 3;
  CHECK(canonical_degree(punct) == 1);

  // Weight counts each geometric point of a higher-degree place.
  OrbifoldCurve q;
  q.delta.set(Place::parse("z^2+1"), Multiplicity::finite(2));
  CHECK(canonical_degree(q) == Rational(-1));

  OrbifoldCurve g2;
  g2.base = BaseCurve::compact_genus(2);
  CHECK(canonical_degree(g2) == 2);

  OrbifoldCurve bad;
  bad.base = BaseCurve::noncompactifiable();
  CHECK_THROWS_AS(canonical_degree(bad), PremiseError);
  OrbifoldCurve disc;
  disc.base = BaseCurve::disc();
  CHECK_THROWS_AS(canonical_degree(disc), PremiseError);
  OrbifoldCurve inf_supp;
  inf_supp.infinite_support = true;
  CHECK_THROWS_AS(canonical_degree(inf_supp), PremiseError);
}

TEST_CASE("compactness") {
  OrbifoldCurve o;
  CHECK(o.compact());
  o.punctures = 1;
  CHECK_FALSE(o.compact());
  o.punctures = 0;
  o.delta.set(Place::of_rational(Rational(0)), Multiplicity::infinite());
  CHECK_FALSE(o.compact());
}

TEST_CASE("divisor order examples") {
  OrbifoldDivisor empty;
  OrbifoldDivisor half0;
  half0.set(Place::of_rational(Rational(0)), Multiplicity::finite(2));
  OrbifoldDivisor third0;
  third0.set(Place::of_rational(Rational(0)), Multiplicity::finite(3));
  OrbifoldDivisor half1;
  half1.set(Place::of_rational(Rational(1)), Multiplicity::finite(2));

  CHECK(divisor_leq(empty, half0));
  CHECK(divisor_leq(half0, third0));
  CHECK_FALSE(divisor_leq(third0, half0));
  CHECK_FALSE(divisor_leq(third0, half1));

  CHECK(divisor_max(empty, third0) == third0);
  CHECK(divisor_max(half0, third0) == third0);
  OrbifoldDivisor both = divisor_max(half0, half1);
  CHECK(both.terms().size() == 2);
  CHECK(both.weight(Place::of_rational(Rational(0))) == Rational(1, 2));
  CHECK(both.weight(Place::of_rational(Rational(1))) == Rational(1, 2));
}

TEST_CASE("divisor order is a partial order with join") {
  Rng rng(41);
  for (int i = 0; i < 80; ++i) {
    OrbifoldDivisor a = rand_orbidiv(rng);
    OrbifoldDivisor b = rand_orbidiv(rng);
    OrbifoldDivisor c = rand_orbidiv(rng);
    CHECK(divisor_leq(a, a));
    if (divisor_leq(a, b) && divisor_leq(b, a)) CHECK(a == b);
    if (divisor_leq(a, b) && divisor_leq(b, c)) CHECK(divisor_leq(a, c));
    OrbifoldDivisor j = divisor_max(a, b);
    CHECK(divisor_leq(a, j));
    CHECK(divisor_leq(b, j));
    CHECK(divisor_max(a, b) == divisor_max(b, a));
    // Least upper bound: c >= a and c >= b imply c >= join.
    if (divisor_leq(a, c) && divisor_leq(b, c)) CHECK(divisor_leq(j, c));
  }
}

TEST_CASE("canonical degree is additive in the divisor") {
  Rng rng(42);
  for (int i = 0; i < 40; ++i) {
    OrbifoldCurve o;
    o.delta = rand_orbidiv(rng);
    Rational before = canonical_degree(o);
    Place fresh = Place::of_rational(Rational(100));
    Multiplicity m = Multiplicity::finite(2 + static_cast<long long>(rng() % 7));
    o.delta.set(fresh, m);
    CHECK(canonical_degree(o) == before + m.weight());
  }
}

TEST_CASE("blow-up threshold") {
  using MP = std::vector<std::pair<Multiplicity, int>>;
  BlowupThreshold t = blowup_exceptional_threshold(MP{{Multiplicity::finite(2), 1}});
  CHECK_FALSE(t.infinite);
  CHECK(t.m == 2);
  CHECK(t.k_min == Multiplicity::finite(2));

  t = blowup_exceptional_threshold(MP{{Multiplicity::finite(2), 1}, {Multiplicity::finite(3), 2}});
  CHECK(t.m == 2);
  CHECK(t.k_min == Multiplicity::finite(2));

  t = blowup_exceptional_threshold(MP{{Multiplicity::finite(5), 2}});
  CHECK(t.m == Rational(5, 2));
  CHECK(t.k_min == Multiplicity::finite(3));

  t = blowup_exceptional_threshold(MP{{Multiplicity::finite(2), 3}});
  CHECK(t.m == Rational(2, 3));
  CHECK(t.k_min == Multiplicity::finite(1));

  t = blowup_exceptional_threshold(MP{{Multiplicity::infinite(), 4}});
  CHECK(t.infinite);
  CHECK(t.k_min == Multiplicity::infinite());

  CHECK_THROWS_AS(blowup_exceptional_threshold(MP{}), InputError);
  CHECK_THROWS_AS(blowup_exceptional_threshold(MP{{Multiplicity::finite(2), 0}}), InputError);
}

TEST_CASE("blow-up threshold weight bounds") {
  Rng rng(43);
  for (int i = 0; i < 60; ++i) {
    std::vector<std::pair<Multiplicity, int>> pairs;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < n; ++j) {
      pairs.emplace_back(Multiplicity::finite(2 + static_cast<long long>(rng() % 9)),
                         1 + static_cast<int>(rng() % 4));
    }
    BlowupThreshold t = blowup_exceptional_threshold(pairs);
    REQUIRE_FALSE(t.infinite);
    long long k = t.k_min.value();
    CHECK(Rational(1) - Rational(1, k) >= Rational(1) - Rational(1) / t.m);
    if (k >= 3) CHECK(Rational(1) - Rational(1, k - 1) < Rational(1) - Rational(1) / t.m);
  }
}

TEST_CASE("quadratic extension arithmetic") {
  // sqrt(-3) lives in Q(sqrt(-3)) with b = 1.
  QuadExt r = QuadExt::sqrt_of(Rational(-3));
  CHECK(r.radicand() == -3);
  CHECK(r * r == QuadExt(Rational(-3)));

  // sqrt(8) = 2*sqrt(2); square factors move into b.
  QuadExt s = QuadExt::sqrt_of(Rational(8));
  CHECK(s.radicand() == 2);
  CHECK(s.b() == 2);
  CHECK(s * s == QuadExt(Rational(8)));

  // sqrt(9/4) collapses to the rational 3/2.
  QuadExt t = QuadExt::sqrt_of(Rational(9, 4));
  CHECK(t.is_rational());
  CHECK(t.a() == Rational(3, 2));

  QuadExt x(Rational(1), Rational(2), Int(5));  // 1 + 2*sqrt(5)
  CHECK(x.conj() == QuadExt(Rational(1), Rational(-2), Int(5)));
  CHECK(x.norm() == Rational(1) - Rational(20));
  CHECK(x + x.conj() == QuadExt(Rational(2)));
  CHECK(x * x.conj() == QuadExt(x.norm()));
  QuadExt inv = QuadExt(Rational(1)) / x;
  CHECK(x * inv == QuadExt(Rational(1)));

  // Elements of different extensions cannot be combined.
  QuadExt y(Rational(0), Rational(1), Int(2));
  CHECK_THROWS_AS(x + y, PremiseError);
  CHECK_THROWS_AS(x / QuadExt(Rational(0)), PremiseError);

  // Polynomial evaluation at 1 + sqrt(2): (z^2 - 2*z - 1) vanishes there.
  Polynomial p = parse_poly("z^2 - 2*z - 1");
  QuadExt root(Rational(1), Rational(1), Int(2));
  CHECK(eval_at(p, root) == QuadExt(Rational(0)));
}

TEST_CASE("elliptic curve validation") {
  CHECK_THROWS_AS(EllipticCurve::parse("x^2 - 1"), InputError);
  CHECK_THROWS_AS(EllipticCurve::parse("x^3 - 3*x + 2"), InputError);  // (x-1)^2 (x+2)
  CHECK(EllipticCurve::parse("x^3 - x").str() == "y^2 = x^3 - x");
}
