#include <catch2/catch_amalgamated.hpp>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <orbicurve/morphism.hpp>

#include "gen.hpp"

using namespace orbicurve;
using orbigen::Rng;

namespace {

Place pl(const std::string& s) { return Place::parse(s); }

OrbifoldDivisor div_of(std::initializer_list<std::pair<const char*, long long>> items) {
  OrbifoldDivisor d;
  for (const auto& [place, m] : items) {
    d.set(pl(place), m == 0 ? Multiplicity::infinite() : Multiplicity::finite(m));
  }
  return d;
}

Divisor qdiv(std::initializer_list<std::pair<const char*, Rational>> items) {
  Divisor d;
  for (const auto& [place, c] : items) d.add(pl(place), c);
  return d;
}

RationalMap map_of(const std::string& s) { return RationalMap::parse(s); }

OrbifoldCurve p1_curve(OrbifoldDivisor d = {}) {
  OrbifoldCurve o;
  o.delta = std::move(d);
  return o;
}

OrbifoldCurve disc_curve(OrbifoldDivisor d = {}) {
  OrbifoldCurve o;
  o.base = BaseCurve::disc();
  o.delta = std::move(d);
  return o;
}

}  // namespace

TEST_CASE("local condition") {
  auto fin = [](long long m) { return Multiplicity::finite(m); };
  auto inf = Multiplicity::infinite();
  CHECK(local_condition(fin(1), 5, fin(3), MorphismMode::NonClassical));
  CHECK(local_condition(fin(2), 1, fin(2), MorphismMode::Classical));
  CHECK_FALSE(local_condition(fin(1), 2, fin(4), MorphismMode::NonClassical));
  CHECK_FALSE(local_condition(fin(1), 2, fin(4), MorphismMode::Classical));
  // Punctured source points satisfy everything; punctured targets need a
  // punctured fiber.
  CHECK(local_condition(inf, 1, fin(7), MorphismMode::NonClassical));
  CHECK(local_condition(inf, 3, inf, MorphismMode::Classical));
  CHECK_FALSE(local_condition(fin(6), 4, inf, MorphismMode::NonClassical));
  CHECK_THROWS_AS(local_condition(fin(1), 0, fin(2), MorphismMode::NonClassical), InputError);
}

TEST_CASE("ramification divisor examples") {
  CHECK(ramification_divisor(map_of("z^2")) == qdiv({{"z", 1}, {"inf", 1}}));
  CHECK(ramification_divisor(map_of("z^3-3*z")) ==
        qdiv({{"z-1", 1}, {"z+1", 1}, {"inf", 2}}));
  CHECK(ramification_divisor(map_of("z")).is_zero());
  CHECK(ramification_divisor(map_of("(z+1)/(z-1)")).is_zero());
  CHECK(ramification_divisor(map_of("1/z")).is_zero());
  // Ramified pole away from infinity.
  CHECK(ramification_divisor(map_of("1/(z^2)")) == qdiv({{"z", 1}, {"inf", 1}}));
  CHECK_THROWS_AS(ramification_divisor(map_of("3/4")), PremiseError);
}

TEST_CASE("Riemann-Hurwitz degree") {
  Rng rng(101);
  for (int i = 0; i < 60; ++i) {
    RationalMap f = orbigen::rand_map(rng, 6);
    Divisor r = ramification_divisor(f);
    CHECK(r.degree() == Rational(2 * f.degree() - 2));
    CHECK(r.is_effective());
  }
}

TEST_CASE("composition rule examples") {
  auto [lhs, rhs, equal] = composition_rule_check(map_of("z^2"), map_of("z^3"));
  CHECK(equal);
  CHECK(lhs == qdiv({{"z", 5}, {"inf", 5}}));
  CHECK(rhs == lhs);

  auto idc = composition_rule_check(map_of("z"), map_of("z^3-3*z"));
  CHECK(idc.equal);
  CHECK(idc.lhs == ramification_divisor(map_of("z^3-3*z")));

  CHECK(composition_rule_check(map_of("z^2+1"), map_of("z^2")).equal);
  CHECK_THROWS_AS(composition_rule_check(map_of("z"), map_of("2")), PremiseError);
}

TEST_CASE("composition rule on random pairs") {
  Rng rng(102);
  for (int i = 0; i < 30; ++i) {
    RationalMap f = orbigen::rand_map(rng, 3);
    RationalMap g = orbigen::rand_map(rng, 3);
    CHECK(composition_rule_check(f, g).equal);
  }
}

TEST_CASE("morphism check examples") {
  // Identity between different one-point orbifolds: >= succeeds, | fails.
  MorphismVerdict v = check_morphism(map_of("z"), div_of({{"z", 3}}), div_of({{"z", 2}}),
                                     MorphismMode::NonClassical);
  CHECK(v.ok);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].condition == "3 >= 2");
  CHECK_FALSE(check_morphism(map_of("z"), div_of({{"z", 3}}), div_of({{"z", 2}}),
                             MorphismMode::Classical)
                  .ok);

  // Double cover onto the (2,2) orbifold.
  for (auto mode : {MorphismMode::NonClassical, MorphismMode::Classical}) {
    CHECK(check_morphism(map_of("z^2"), {}, div_of({{"z", 2}, {"inf", 2}}), mode).ok);
  }

  // Unramified map into an orbifold point fails, with the witness naming it.
  v = check_morphism(map_of("z"), {}, div_of({{"z", 2}}), MorphismMode::NonClassical);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].source_place == pl("z"));
  CHECK(v.witnesses[0].target_place == pl("z"));
  CHECK(v.witnesses[0].multiplicity == 1);
  CHECK_FALSE(v.witnesses[0].satisfied);

  // Punctured targets demand punctured fibers.
  CHECK_FALSE(check_morphism(map_of("z^2"), {}, div_of({{"z", 0}}),
                             MorphismMode::NonClassical)
                  .ok);
  CHECK(check_morphism(map_of("z^2"), div_of({{"z", 0}}), div_of({{"z", 0}}),
                       MorphismMode::NonClassical)
            .ok);

  CHECK_THROWS_AS(
      check_morphism(map_of("5"), OrbifoldDivisor{}, {}, MorphismMode::NonClassical),
      PremiseError);
  CHECK_THROWS_AS(
      check_morphism(map_of("z"), disc_curve(), disc_curve(), MorphismMode::NonClassical),
      PremiseError);
  OrbifoldCurve punctured = p1_curve();
  punctured.punctures = 1;
  CHECK_THROWS_AS(
      check_morphism(map_of("z"), punctured, p1_curve(), MorphismMode::NonClassical),
      PremiseError);
}

TEST_CASE("divisor criterion examples") {
  // Monomial between one-point orbifolds: coefficient -1/n + d/m at the origin.
  auto r = divisor_criterion(map_of("z^3"), div_of({{"z", 2}}), div_of({{"z", 4}}));
  CHECK(r.divisor.coeff(pl("z")) == Rational(1, 4));  // -1/2 + 3/4

  r = divisor_criterion(map_of("z^2"), {}, div_of({{"z", 2}, {"inf", 2}}));
  CHECK(r.divisor.is_zero());
  CHECK(r.nonnegative);

  r = divisor_criterion(map_of("z"), {}, div_of({{"z", 2}}));
  CHECK(r.divisor == qdiv({{"z", Rational(-1, 2)}}));
  CHECK_FALSE(r.nonnegative);
}

TEST_CASE("criterion equivalence and mode implication") {
  Rng rng(103);
  int classical_hits = 0;
  for (int i = 0; i < 80; ++i) {
    RationalMap f = orbigen::rand_map(rng, 4);
    OrbifoldDivisor delta = orbigen::rand_orbifold_divisor(rng, true);
    OrbifoldDivisor delta_prime = orbigen::rand_orbifold_divisor(rng, true);
    bool nc = check_morphism(f, delta, delta_prime, MorphismMode::NonClassical).ok;
    CHECK(nc == divisor_criterion(f, delta, delta_prime).nonnegative);
    if (check_morphism(f, delta, delta_prime, MorphismMode::Classical).ok) {
      ++classical_hits;
      CHECK(nc);
    }
  }
  CHECK(classical_hits > 0);  // the implication test must not be vacuous
}

TEST_CASE("majorisation and join") {
  Rng rng(104);
  int passes = 0;
  for (int i = 0; i < 120; ++i) {
    RationalMap f = orbigen::rand_map(rng, 4);
    OrbifoldDivisor target = orbigen::rand_orbifold_divisor(rng);
    if (!check_morphism(f, {}, target, MorphismMode::NonClassical).ok) continue;
    ++passes;
    // Shrink every multiplicity: the morphism conditions only get weaker.
    OrbifoldDivisor smaller;
    for (const auto& [p, m] : target.terms()) {
      if (rng() % 2 == 0) continue;
      smaller.set(p, Multiplicity::finite(std::max(1LL, m.value() - 1)));
    }
    CHECK(check_morphism(f, {}, smaller, MorphismMode::NonClassical).ok);
  }
  CHECK(passes > 0);

  // Join: passing to both targets means passing to their pointwise maximum.
  for (int i = 0; i < 200; ++i) {
    RationalMap f = orbigen::rand_map(rng, 4);
    OrbifoldDivisor a = orbigen::rand_orbifold_divisor(rng);
    OrbifoldDivisor b = orbigen::rand_orbifold_divisor(rng);
    if (!check_morphism(f, {}, a, MorphismMode::NonClassical).ok) continue;
    if (!check_morphism(f, {}, b, MorphismMode::NonClassical).ok) continue;
    CHECK(check_morphism(f, {}, divisor_max(a, b), MorphismMode::NonClassical).ok);
  }
}

TEST_CASE("composition closure") {
  // f passes into its own orbifold base; g passes from any source into its
  // base; the composite must pass end to end.
  Rng rng(105);
  for (int i = 0; i < 25; ++i) {
    RationalMap f = orbigen::rand_map(rng, 3);
    RationalMap g = orbigen::rand_map(rng, 3);
    for (auto mode : {MorphismMode::NonClassical, MorphismMode::Classical}) {
      OrbifoldDivisor mid = orbifold_base(f, mode);
      OrbifoldDivisor out = orbifold_base(g, mode);
      REQUIRE(check_morphism(f, {}, mid, mode).ok);
      REQUIRE(check_morphism(g, mid, out, mode).ok);
      CHECK(check_morphism(g.compose(f), {}, out, mode).ok);
    }
  }

  // Hand-built chain through the (2,2) orbifold.
  OrbifoldDivisor mid = div_of({{"z", 2}, {"inf", 2}});
  OrbifoldDivisor out = div_of({{"z", 6}, {"inf", 6}});
  REQUIRE(check_morphism(map_of("z^2"), {}, mid, MorphismMode::Classical).ok);
  REQUIRE(check_morphism(map_of("z^3"), mid, out, MorphismMode::Classical).ok);
  CHECK(check_morphism(map_of("z^6"), {}, out, MorphismMode::Classical).ok);
}

TEST_CASE("degree inequality") {
  OrbifoldCurve src237 = p1_curve(div_of({{"z", 2}, {"z-1", 3}, {"inf", 7}}));
  auto r = degree_inequality_check(map_of("z"), src237, src237);
  CHECK(r.lhs == Rational(1, 42));
  CHECK(r.rhs == Rational(1, 42));
  CHECK(r.holds);

  r = degree_inequality_check(map_of("z^2"), p1_curve(div_of({{"z", 2}, {"inf", 2}})),
                              p1_curve());
  CHECK(r.lhs == Rational(-1));
  CHECK(r.rhs == Rational(-4));
  CHECK(r.holds);

  // Every checked morphism obeys the inequality.
  Rng rng(106);
  for (int i = 0; i < 40; ++i) {
    RationalMap f = orbigen::rand_map(rng, 4);
    OrbifoldCurve target = p1_curve(orbifold_base(f, MorphismMode::NonClassical));
    auto d = degree_inequality_check(f, p1_curve(), target);
    CHECK(d.holds);
  }
}

TEST_CASE("etale between projective lines") {
  CHECK(etale_check(map_of("z^2"), p1_curve(), p1_curve(div_of({{"z", 2}, {"inf", 2}}))));
  CHECK(etale_check(map_of("z^3"), p1_curve(), p1_curve(div_of({{"z", 3}, {"inf", 3}}))));
  CHECK_FALSE(etale_check(map_of("z^2"), p1_curve(), p1_curve(div_of({{"z", 2}}))));
  CHECK(etale_check(map_of("z"), p1_curve(div_of({{"z", 5}})),
                    p1_curve(div_of({{"z", 5}}))));
  CHECK_FALSE(etale_check(map_of("z"), p1_curve(div_of({{"z", 5}})),
                          p1_curve(div_of({{"z", 4}}))));
  // Punctured-plane self-cover.
  OrbifoldCurve cstar = p1_curve(div_of({{"z", 0}, {"inf", 0}}));
  CHECK(etale_check(map_of("z^3"), cstar, cstar));

  // Etale implies equality in the degree inequality.
  auto cases = std::vector<std::pair<RationalMap, OrbifoldDivisor>>{
      {map_of("z^2"), div_of({{"z", 2}, {"inf", 2}})},
      {map_of("z^5"), div_of({{"z", 5}, {"inf", 5}})},
  };
  for (const auto& [f, target] : cases) {
    REQUIRE(etale_check(f, p1_curve(), p1_curve(target)));
    auto d = degree_inequality_check(f, p1_curve(), p1_curve(target));
    CHECK(d.lhs == d.rhs);
  }
}

TEST_CASE("etale between discs") {
  for (long long n = 2; n <= 5; ++n) {
    std::string f = "z^" + std::to_string(n);
    CHECK(etale_check(map_of(f), disc_curve(), disc_curve(div_of({{"z", n}}))));
  }
  // n * ord_0(f) = m decides monomial towers.
  CHECK(etale_check(map_of("z^3"), disc_curve(div_of({{"z", 2}})),
                    disc_curve(div_of({{"z", 6}}))));
  CHECK_FALSE(etale_check(map_of("z^3"), disc_curve(div_of({{"z", 2}})),
                          disc_curve(div_of({{"z", 5}}))));
  CHECK_FALSE(etale_check(map_of("z+1"), disc_curve(), disc_curve()));  // f(0) != 0

  // A critical point inside the disc breaks the germ criterion...
  CHECK_FALSE(etale_check(map_of("z^2*(z-1/4)"), disc_curve(),
                          disc_curve(div_of({{"z", 2}}))));
  // ...while one outside leaves it intact.
  CHECK(etale_check(map_of("z^2*(z-4)"), disc_curve(), disc_curve(div_of({{"z", 2}}))));

  // Cubic critical loci pass through the numeric root bound.
  CHECK(etale_check(map_of("1/4*z^4 - 2*z"), disc_curve(), disc_curve()));
  CHECK_FALSE(etale_check(map_of("z^4 - 2*z"), disc_curve(), disc_curve()));

  // Punctured disc self-cover.
  CHECK(etale_check(map_of("z^2"), disc_curve(div_of({{"z", 0}})),
                    disc_curve(div_of({{"z", 0}}))));

  CHECK_THROWS_AS(etale_check(map_of("z"), disc_curve(), p1_curve()), PremiseError);
  CHECK_THROWS_AS(
      etale_check(map_of("z"), disc_curve(div_of({{"z-1", 2}})), disc_curve()),
      PremiseError);
}

TEST_CASE("image place") {
  RationalMap sq = map_of("z^2");
  CHECK(image_place(sq, pl("z-3")) == pl("z-9"));
  CHECK(image_place(sq, pl("z^2+1")) == pl("z+1"));
  CHECK(image_place(sq, pl("z^2-2")) == pl("z-2"));
  CHECK(image_place(map_of("z^3"), pl("z^2+1")) == pl("z^2+1"));
  CHECK(image_place(map_of("1/z"), pl("z")) == pl("inf"));
  CHECK(image_place(map_of("1/z"), pl("inf")) == pl("z"));
  CHECK(image_place(map_of("(z^2+1)/z"), pl("z^2+1")) == pl("z"));
  CHECK(image_place(map_of("z^2"), pl("inf")) == pl("inf"));
  CHECK(image_place(map_of("(2*z+1)/(z+1)"), pl("inf")) == pl("z-2"));
}

TEST_CASE("orbifold base examples") {
  for (auto mode : {MorphismMode::NonClassical, MorphismMode::Classical}) {
    CHECK(orbifold_base(map_of("z^6"), mode) == div_of({{"z", 6}, {"inf", 6}}));
    CHECK(orbifold_base(map_of("z"), mode).empty());
  }
  RationalMap f = map_of("z^2*(z-1)^3");
  CHECK(orbifold_base(f, MorphismMode::NonClassical) == div_of({{"z", 2}, {"inf", 5}}));
  CHECK(orbifold_base(f, MorphismMode::Classical) == div_of({{"inf", 5}}));
  CHECK_THROWS_AS(orbifold_base(map_of("7"), MorphismMode::Classical), PremiseError);
}

TEST_CASE("orbifold base maximality") {
  Rng rng(107);
  for (int i = 0; i < 20; ++i) {
    RationalMap f = orbigen::rand_map(rng, 4);
    for (auto mode : {MorphismMode::NonClassical, MorphismMode::Classical}) {
      OrbifoldDivisor base = orbifold_base(f, mode);
      CHECK(check_morphism(f, {}, base, mode).ok);
      for (const auto& [p, m] : base.terms()) {
        OrbifoldDivisor raised = base;
        raised.set(p, Multiplicity::finite(m.value() + 1));
        CHECK_FALSE(check_morphism(f, {}, raised, mode).ok);
      }
    }
    // The gcd base never exceeds the min base.
    CHECK(divisor_leq(orbifold_base(f, MorphismMode::Classical),
                      orbifold_base(f, MorphismMode::NonClassical)));
  }
}
