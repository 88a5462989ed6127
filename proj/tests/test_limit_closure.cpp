#include <catch2/catch_amalgamated.hpp>

#include <orbicurve/limit_closure.hpp>

using namespace orbicurve;

namespace {

OrbifoldDivisor half_at_zero() {
  OrbifoldDivisor d;
  d.set(Place::of_rational(Rational(0)), Multiplicity::finite(2));
  return d;
}

}  // namespace

TEST_CASE("family parsing and evaluation") {
  FamilyMap fam = parse_family("(z^2-t)^2");
  CHECK(family_at(fam, Rational(0)) == RationalMap::parse("z^4"));
  CHECK(family_at(fam, Rational(1)) == RationalMap::parse("(z^2-1)^2"));
  CHECK(family_at(fam, Rational(1, 4)) == RationalMap::parse("(z^2-1/4)^2"));

  FamilyMap rat = parse_family("t*z/(z-t)");
  CHECK(family_at(rat, Rational(2)) == RationalMap::parse("2*z/(z-2)"));

  CHECK_THROWS_AS(parse_family("z+w"), InputError);
  CHECK_THROWS_AS(parse_family("z/(t-t)"), InputError);
}

TEST_CASE("family limit clears common parameter powers") {
  CHECK(family_limit(parse_family("(z^2-t)^2")) == RationalMap::parse("z^4"));
  // t*z / t*(z-1) -> z/(z-1) after clearing t.
  CHECK(family_limit(parse_family("t*z/(t*z-t)")) == RationalMap::parse("z/(z-1)"));
  // Denominator that dies at t = 0 without a common factor is degenerate.
  CHECK_THROWS_AS(family_limit(parse_family("z/t")), PremiseError);
}

TEST_CASE("limit of even-multiplicity families stays a morphism") {
  auto report = limit_closure_check(parse_family("(z^2-t)^2"), {}, half_at_zero(),
                                    MorphismMode::NonClassical);
  CHECK(report.branch == LimitBranch::Morphism);
  CHECK_FALSE(report.limit_constant);
  CHECK(report.limit == RationalMap::parse("z^4"));
  CHECK(report.limit_verdict.ok);
  CHECK(report.samples.size() == 3);
  for (const auto& v : report.sample_verdicts) CHECK(v.ok);
}

TEST_CASE("limit collapsing into the support is absorbed") {
  auto report = limit_closure_check(parse_family("t*z^2"), {}, half_at_zero(),
                                    MorphismMode::NonClassical);
  CHECK(report.branch == LimitBranch::ImageInSupport);
  CHECK(report.limit_constant);
}

TEST_CASE("constant families pass through unchanged") {
  auto report = limit_closure_check(parse_family("z^2"), {}, half_at_zero(),
                                    MorphismMode::NonClassical);
  CHECK(report.branch == LimitBranch::Morphism);
  CHECK_FALSE(report.limit_constant);
  CHECK(report.limit == RationalMap::parse("z^2"));
  CHECK(report.limit_verdict.ok);
}

TEST_CASE("premise violations are reported as such") {
  // z is never a morphism onto the half point.
  CHECK_THROWS_AS(
      limit_closure_check(parse_family("z"), {}, half_at_zero(), MorphismMode::NonClassical),
      PremiseError);
  // Degenerate denominator at t = 0.
  CHECK_THROWS_AS(
      limit_closure_check(parse_family("z/t"), {}, {}, MorphismMode::NonClassical),
      PremiseError);
  // A family that is constant at a sampled parameter value.
  CHECK_THROWS_AS(
      limit_closure_check(parse_family("t"), {}, {}, MorphismMode::NonClassical),
      PremiseError);
}

TEST_CASE("constant limit outside the support is a morphism") {
  // f_t = (t*z^2+1)^2 degenerates to the constant 1, which avoids the support.
  auto report = limit_closure_check(parse_family("(t*z^2+1)^2"), {}, half_at_zero(),
                                    MorphismMode::NonClassical);
  CHECK(report.branch == LimitBranch::Morphism);
  CHECK(report.limit_constant);
  CHECK(report.limit_verdict.ok);
  CHECK(report.limit_verdict.witnesses.empty());
}
