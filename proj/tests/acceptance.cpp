// Acceptance gate: runs the ten release criteria end to end and prints one
// PASS/FAIL line per criterion.  Exit status is the number of failed
// criteria, so `build/tests/acceptance` doubles as a scriptable check.
//
// Every tolerance is pinned next to the check that uses it; exact-arithmetic
// checks carry no tolerance at all.  Randomized criteria seed their own
// generator so a failure reproduces from this file alone.

#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <orbicurve/classify.hpp>
#include <orbicurve/kobayashi.hpp>
#include <orbicurve/limit_closure.hpp>
#include <orbicurve/morphism.hpp>
#include <orbicurve/nevanlinna.hpp>
#include <orbicurve/pi1.hpp>
#include <orbicurve/unfolding.hpp>

#include "gen.hpp"

using namespace orbicurve;
using orbigen::Rng;

namespace {

// ---------------------------------------------------------------------------
// Reporting scaffold
// ---------------------------------------------------------------------------

struct Check {
  int failed = 0;
  int total = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (!ok && failed++ == 0) first = what;
  }
};

// ---------------------------------------------------------------------------
// Shared fixtures
// ---------------------------------------------------------------------------

OrbifoldDivisor div_of(std::vector<std::pair<std::string, long long>> items) {
  OrbifoldDivisor d;
  for (const auto& [place, m] : items)
    d.set(Place::parse(place), m == 0 ? Multiplicity::infinite() : Multiplicity::finite(m));
  return d;
}

OrbifoldCurve p1_curve(OrbifoldDivisor d = {}) {
  OrbifoldCurve o;
  o.delta = std::move(d);
  return o;
}

// Marks at 0, 1, 2, ... on the projective line; 0 encodes an infinite mark.
OrbifoldCurve p1_marks(const std::vector<long long>& mults) {
  OrbifoldCurve o;
  long long at = 0;
  for (long long m : mults)
    o.delta.set(Place::of_rational(Rational(at++)),
                m == 0 ? Multiplicity::infinite() : Multiplicity::finite(m));
  return o;
}

RationalMap rm(const std::string& s) { return RationalMap::parse(s); }

std::vector<long long> fiber_mults(const FiberProfile& f) {
  std::vector<long long> out;
  for (const auto& [p, d] : f.points) out.push_back(d);
  return out;
}

long long ramification_degree(const CoveringData& c) {
  long long r = 0;
  for (const auto& fiber : c.profile)
    for (const auto& [p, d] : fiber.points) r += d - 1;
  return r;
}

std::string sig_str(const std::vector<long long>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// 1. The four elliptic coverings of the line: exact ramification profiles.
// ---------------------------------------------------------------------------

void criterion_unfolding_profiles(Check& c) {
  using LL = std::vector<long long>;

  CoveringData a = build_unfolding(UnfoldingPreset::Sig244);
  c.expect(a.degree == 4, "(2,4,4) covering degree");
  c.expect(a.profile.size() == 3 && a.profile[0].value == Rational(0) &&
               a.profile[1].value == Rational(1) && !a.profile[2].value.has_value(),
           "(2,4,4) branch values 0, 1, infinity");
  c.expect(fiber_mults(a.profile[0]) == LL{4} && fiber_mults(a.profile[1]) == LL{2, 2} &&
               fiber_mults(a.profile[2]) == LL{4},
           "(2,4,4) fiber multiplicities 4 | 2,2 | 4");
  c.expect(ramification_degree(a) == 8 && verify_etale_cover(a),
           "(2,4,4) unramified over the orbifold structure");

  CoveringData b = build_unfolding(UnfoldingPreset::Sig236);
  c.expect(b.degree == 6, "(2,3,6) covering degree");
  c.expect(b.profile.size() == 3 && fiber_mults(b.profile[0]) == LL{2, 2, 2} &&
               fiber_mults(b.profile[1]) == LL{3, 3} && fiber_mults(b.profile[2]) == LL{6},
           "(2,3,6) fiber multiplicities 2,2,2 | 3,3 | 6");
  c.expect(ramification_degree(b) == 12 && verify_etale_cover(b),
           "(2,3,6) unramified over the orbifold structure");

  CoveringData d = build_unfolding(UnfoldingPreset::Sig333);
  c.expect(d.degree == 3, "(3,3,3) covering degree");
  c.expect(d.profile.size() == 3 && d.profile[0].value == Rational(-1) &&
               d.profile[1].value == Rational(1) && !d.profile[2].value.has_value(),
           "(3,3,3) branch values -1, 1, infinity");
  c.expect(fiber_mults(d.profile[0]) == LL{3} && fiber_mults(d.profile[1]) == LL{3} &&
               fiber_mults(d.profile[2]) == LL{3},
           "(3,3,3) one point of multiplicity 3 per fiber");
  c.expect(ramification_degree(d) == 6 && verify_etale_cover(d),
           "(3,3,3) unramified over the orbifold structure");

  CoveringData q = build_unfolding(UnfoldingPreset::Sig2222, Rational(2));
  c.expect(q.degree == 2, "(2,2,2,2) covering degree");
  bool simple = q.profile.size() == 4;
  if (simple)
    for (const auto& fiber : q.profile) simple = simple && fiber_mults(fiber) == LL{2};
  c.expect(simple, "(2,2,2,2) four simple branch points");
  c.expect(q.profile.size() == 4 && q.profile[0].value == Rational(0) &&
               q.profile[1].value == Rational(1) && q.profile[2].value == Rational(2) &&
               !q.profile[3].value.has_value(),
           "(2,2,2,2) branch values 0, 1, lambda = 2, infinity");
  c.expect(ramification_degree(q) == 4 && verify_etale_cover(q),
           "(2,2,2,2) unramified over the orbifold structure");
}

// ---------------------------------------------------------------------------
// 2. Curvature-sign classifier: fixture list plus the exhaustive triple scan.
// ---------------------------------------------------------------------------

void criterion_classifier(Check& c) {
  auto hyper = [](const OrbifoldCurve& o) { return classify(o).hyperbolic; };

  OrbifoldCurve elliptic;
  elliptic.base = BaseCurve::elliptic(EllipticCurve::parse("x^3 - x"));
  c.expect(!hyper(elliptic), "elliptic base with empty divisor");

  c.expect(!hyper(p1_marks({})) && !hyper(p1_marks({7})) && !hyper(p1_marks({3, 11})) &&
               !hyper(p1_marks({12, 12})) && !hyper(p1_marks({0})) && !hyper(p1_marks({0, 0})),
           "line with at most two orbifold points");

  for (auto t : std::vector<std::vector<long long>>{
           {2, 3, 3}, {2, 3, 4}, {2, 3, 5}, {2, 3, 6}, {2, 4, 4}, {3, 3, 3}})
    c.expect(!hyper(p1_marks(t)), "spherical or flat triple " + sig_str(t));
  for (long long r = 2; r <= 20; ++r)
    c.expect(!hyper(p1_marks({2, 2, r})), "dihedral triple " + sig_str({2, 2, r}));

  c.expect(!hyper(p1_marks({2, 2, 2, 2})), "four double points at 0,1,2,3");
  OrbifoldCurve quad = p1_curve(div_of({{"z", 2}, {"z - 1", 2}, {"z - 5", 2}, {"inf", 2}}));
  c.expect(!hyper(quad), "four double points including infinity");

  for (auto t : std::vector<std::vector<long long>>{{2, 3, 7}, {2, 4, 5}, {3, 3, 4}})
    c.expect(hyper(p1_marks(t)), "hyperbolic triple " + sig_str(t));
  OrbifoldCurve g2;
  g2.base = BaseCurve::compact_genus(2);
  c.expect(hyper(g2), "genus-2 base with empty divisor");

  // Exhaustive: a triple is non-hyperbolic exactly when 1/p + 1/q + 1/r >= 1.
  int scanned = 0;
  bool scan_ok = true;
  std::vector<long long> bad;
  for (long long p = 2; p <= 50 && scan_ok; ++p)
    for (long long q = p; q <= 50 && scan_ok; ++q)
      for (long long r = q; r <= 50; ++r) {
        ++scanned;
        bool angle_sum = Rational(1, p) + Rational(1, q) + Rational(1, r) >= Rational(1);
        if (hyper(p1_marks({p, q, r})) != !angle_sum) {
          scan_ok = false;
          bad = {p, q, r};
          break;
        }
      }
  c.expect(scan_ok, scan_ok ? "" : "triple scan disagrees at " + sig_str(bad));
  c.expect(scanned == 51 * 50 * 49 / 6 || !scan_ok,  // multisets of size 3 from {2..50}
           "triple scan visits all multisets with 2 <= p <= q <= r <= 50");
}

// ---------------------------------------------------------------------------
// 3. Ramification bookkeeping on random maps: total degree and composition.
// ---------------------------------------------------------------------------

void criterion_ramification(Check& c) {
  Rng rng(20260301);
  for (int i = 0; i < 200; ++i) {
    RationalMap f = orbigen::rand_map(rng, 6);
    Rational expected(2 * f.degree() - 2);
    if (ramification_divisor(f).degree() != expected) {
      c.expect(false, "ramification degree of " + f.str());
      return;
    }
  }
  c.expect(true, "");

  for (int i = 0; i < 100; ++i) {
    RationalMap f = orbigen::rand_map(rng, 4);
    RationalMap g = orbigen::rand_map(rng, 4);
    CompositionCheck cc = composition_rule_check(f, g);
    if (!cc.equal) {
      c.expect(false, "composition rule for " + f.str() + " then " + g.str());
      return;
    }
  }
  c.expect(true, "");
}

// ---------------------------------------------------------------------------
// 4. Morphism verdict == divisor-criterion sign; classical implies relaxed.
// ---------------------------------------------------------------------------

void criterion_equivalence(Check& c) {
  Rng rng(20260402);
  int passes = 0, fails = 0, classical = 0;
  for (int i = 0; i < 200; ++i) {
    RationalMap f = orbigen::rand_map(rng, 5);
    OrbifoldDivisor delta = orbigen::rand_orbifold_divisor(rng, true);
    OrbifoldDivisor delta_prime = orbigen::rand_orbifold_divisor(rng, true);
    bool nc = check_morphism(f, delta, delta_prime, MorphismMode::NonClassical).ok;
    bool sign = divisor_criterion(f, delta, delta_prime).nonnegative;
    (nc ? passes : fails)++;
    if (nc != sign) {
      c.expect(false, "verdict vs divisor sign for " + f.str());
      return;
    }
    if (check_morphism(f, delta, delta_prime, MorphismMode::Classical).ok) {
      ++classical;
      if (!nc) {
        c.expect(false, "classical pass without relaxed pass for " + f.str());
        return;
      }
    }
  }
  c.expect(true, "");
  c.expect(passes > 0 && fails > 0 && classical > 0,
           "sample must exercise passing, failing, and classical instances");
}

// ---------------------------------------------------------------------------
// 5. Canonical degree never increases along morphisms; equality when etale.
// ---------------------------------------------------------------------------

void criterion_degree_lemma(Check& c) {
  Rng rng(20260503);
  int passes = 0, etale_hits = 0;
  for (int i = 0; i < 200; ++i) {
    RationalMap f = orbigen::rand_map(rng, 5);
    OrbifoldDivisor delta = orbigen::rand_orbifold_divisor(rng, true);
    OrbifoldDivisor delta_prime = orbigen::rand_orbifold_divisor(rng, true);
    if (!check_morphism(f, delta, delta_prime, MorphismMode::NonClassical).ok) continue;
    ++passes;
    OrbifoldCurve src = p1_curve(delta), tgt = p1_curve(delta_prime);
    DegreeInequality d = degree_inequality_check(f, src, tgt);
    if (!d.holds) {
      c.expect(false, "degree inequality for " + f.str());
      return;
    }
    if (etale_check(f, src, tgt)) {
      ++etale_hits;
      if (d.lhs != d.rhs) {
        c.expect(false, "etale cover without degree equality for " + f.str());
        return;
      }
    }
  }
  c.expect(true, "");
  c.expect(passes > 0, "sample must contain passing morphisms");

  // Structured etale covers; each must report exact equality.
  struct EtaleCase {
    std::string map;
    OrbifoldDivisor source, target;
  };
  std::vector<EtaleCase> cases = {
      {"z^2", {}, div_of({{"z", 2}, {"inf", 2}})},
      {"z^3", {}, div_of({{"z", 3}, {"inf", 3}})},
      {"z^5", {}, div_of({{"z", 5}, {"inf", 5}})},
      {"z", div_of({{"z", 5}}), div_of({{"z", 5}})},
      {"z^3", div_of({{"z", 0}, {"inf", 0}}), div_of({{"z", 0}, {"inf", 0}})},
  };
  for (const auto& e : cases) {
    OrbifoldCurve src = p1_curve(e.source), tgt = p1_curve(e.target);
    RationalMap f = rm(e.map);
    bool ok = etale_check(f, src, tgt);
    DegreeInequality d = degree_inequality_check(f, src, tgt);
    c.expect(ok && d.holds && d.lhs == d.rhs, "etale equality for " + e.map);
    ++etale_hits;
  }
  c.expect(etale_hits >= 5, "etale sample must be non-vacuous");
}

// ---------------------------------------------------------------------------
// 6. Orbifold base of z^2 (z-1)^3: min rule vs gcd rule, and maximality.
// ---------------------------------------------------------------------------

void criterion_orbifold_base(Check& c) {
  RationalMap f = rm("z^2*(z - 1)^3");

  OrbifoldDivisor relaxed = orbifold_base(f, MorphismMode::NonClassical);
  c.expect(relaxed == div_of({{"z", 2}, {"inf", 5}}),
           "min-rule base is multiplicity 2 at 0 plus 5 at infinity");

  OrbifoldDivisor strict = orbifold_base(f, MorphismMode::Classical);
  c.expect(strict == div_of({{"inf", 5}}),
           "gcd-rule base is multiplicity 5 at infinity alone");

  for (auto mode : {MorphismMode::NonClassical, MorphismMode::Classical}) {
    const char* name = mode == MorphismMode::Classical ? "gcd" : "min";
    OrbifoldDivisor base = orbifold_base(f, mode);
    c.expect(check_morphism(f, {}, base, mode).ok,
             std::string(name) + "-rule base admits the map");
    for (const auto& [p, m] : base.terms()) {
      OrbifoldDivisor raised = base;
      raised.set(p, Multiplicity::finite(m.value() + 1));
      c.expect(!check_morphism(f, {}, raised, mode).ok,
               std::string(name) + "-rule base stops admitting after raising " + p.str());
    }
  }

  // The gcd rule really drops the mark at 0: even multiplicity 2 fails there.
  OrbifoldDivisor strict_plus = strict;
  strict_plus.set(Place::parse("z"), Multiplicity::finite(2));
  c.expect(!check_morphism(f, {}, strict_plus, MorphismMode::Classical).ok,
           "gcd-rule base cannot absorb a mark at 0");
}

// ---------------------------------------------------------------------------
// 7. Truncated counting inequality with weight 1 - 1/m, margins and slopes.
// ---------------------------------------------------------------------------

void criterion_truncation(Check& c) {
  constexpr double kSlack = 1e-4;         // analytic slack added to quadrature error
  constexpr double kAsymptotic = 0.05;    // relative margin/slope bound at r = 100
  const std::vector<double> radii = {2.0, 10.0, 100.0};

  struct TruncCase {
    std::string map;
    long long m;
    bool power;  // pure power z^m: margin must vanish asymptotically
  };
  const std::vector<TruncCase> cases = {{"z^2", 2, true},
                                        {"z^3", 3, true},
                                        {"z^5", 5, true},
                                        {"(z^2 - 1)^2", 2, false},
                                        {"(z^3 - 1)^2", 2, false}};

  for (const auto& tc : cases) {
    RationalMap f = rm(tc.map);
    NevanlinnaReport rep =
        orbi_trunc_check(f, Place::parse("z"), Multiplicity::finite(tc.m), radii, 1e-6);
    c.expect(!rep.any_flagged, tc.map + ": no flagged radius");
    for (size_t i = 0; i < radii.size(); ++i)
      c.expect(rep.margin[i] >= -(rep.quad_error[i] + kSlack),
               tc.map + ": margin at r = " + std::to_string(radii[i]));
    if (tc.power)
      c.expect(std::abs(rep.margin[2]) < kAsymptotic * rep.t_divisor[2],
               tc.map + ": asymptotic equality of the truncated bound");

    CharacteristicValues t = characteristic_with_error(f, {100.0});
    double slope = t.value[0] / std::log(100.0);
    double deg = double(f.degree());
    c.expect(std::abs(slope - deg) < kAsymptotic * deg,
             tc.map + ": characteristic slope near the degree");
  }
}

// ---------------------------------------------------------------------------
// 8. Marked-disc metric: exact value, limit, radial integrals, monotonicity.
// ---------------------------------------------------------------------------

void criterion_metric(Check& c) {
  using Cplx = std::complex<double>;
  auto fin = [](long long n) { return Multiplicity::finite(n); };

  // Dyadic inputs evaluate the closed form without rounding: exactly 64/9.
  c.expect(metric_density(fin(2), Cplx(0.25, 0.0)) == 64.0 / 9.0,
           "density at order 2, z = 1/4 is exactly 64/9");

  constexpr double kLimitTol = 0.01;  // order 1024 vs punctured-disc density
  for (double r : {0.2, 0.5, 0.8})
    c.expect(std::abs(metric_density(fin(1024), Cplx(r, 0.0)) - limit_density(Cplx(r, 0.0))) <
                 kLimitTol,
             "limit agreement at |z| = " + std::to_string(r));

  // Ten radial pairs: length integral along the radius equals the distance.
  constexpr double kRadialTol = 1e-6;
  for (long long n : {1, 2, 3, 5, 8})
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.1, 0.6}, {0.35, 0.8}}) {
      double integral = radial_metric_integral(fin(n), a, b);
      double dist = classical_distance_disc(fin(n), Cplx(a, 0.0), Cplx(b, 0.0));
      c.expect(std::abs(integral - dist) <= kRadialTol,
               "radial integral at order " + std::to_string(n));
    }

  // Distance grows with the marking order: 50 sampled pairs, orders 1..16.
  constexpr double kMonotoneSlack = 1e-12;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-0.85, 0.85);
  int pairs = 0;
  bool monotone = true;
  while (pairs < 50 && monotone) {
    Cplx p(U(rng), U(rng)), q(U(rng), U(rng));
    if (std::abs(p) >= 0.9 || std::abs(q) >= 0.9) continue;
    ++pairs;
    double prev = -1.0;
    for (long long n = 1; n <= 16; ++n) {
      double v = classical_distance_disc(fin(n), p, q);
      monotone = monotone && v >= prev - kMonotoneSlack;
      prev = v;
    }
  }
  c.expect(monotone && pairs == 50, "distance non-decreasing in the order on 50 pairs");
}

// ---------------------------------------------------------------------------
// 9. Limit families: morphism limits vs limits absorbed into the support.
// ---------------------------------------------------------------------------

void criterion_limit_closure(Check& c) {
  OrbifoldDivisor target = div_of({{"z", 2}});

  auto run = [&](const std::string& family) {
    return limit_closure_check(parse_family(family), {}, target, MorphismMode::NonClassical);
  };

  c.expect(run("(z^2 - t)^2").branch == LimitBranch::Morphism,
           "(z^2 - t)^2 degenerates to a morphism");
  c.expect(run("t*z^2").branch == LimitBranch::ImageInSupport,
           "t z^2 collapses into the orbifold support");
  c.expect(run("z^2").branch == LimitBranch::Morphism, "constant family stays a morphism");
}

// ---------------------------------------------------------------------------
// 10. Fundamental group triviality and existence of euclidean unfoldings.
// ---------------------------------------------------------------------------

void criterion_pi1_and_unfolding(Check& c) {
  c.expect(pi1_presentation(p1_marks({})).trivial && unfolding_exists(p1_marks({})),
           "unmarked line");

  bool singles_ok = true;
  for (long long n = 2; n <= 12 && singles_ok; ++n)
    singles_ok = pi1_presentation(p1_marks({n})).trivial && !unfolding_exists(p1_marks({n}));
  c.expect(singles_ok, "single marked point: trivial group, no unfolding");

  bool pairs_ok = true;
  std::pair<long long, long long> bad{0, 0};
  for (long long n = 2; n <= 12 && pairs_ok; ++n)
    for (long long m = 2; m <= 12; ++m) {
      bool trivial = pi1_presentation(p1_marks({n, m})).trivial;
      bool exists = unfolding_exists(p1_marks({n, m}));
      if (trivial != (std::gcd(n, m) == 1) || exists != (n == m)) {
        pairs_ok = false;
        bad = {n, m};
        break;
      }
    }
  c.expect(pairs_ok, pairs_ok ? ""
                              : "pair rule fails at (" + std::to_string(bad.first) + "," +
                                    std::to_string(bad.second) + ")");

  // Off the exception list the unfolding exists, independent of curvature.
  for (auto t : std::vector<std::vector<long long>>{{2, 2, 2}, {2, 3, 6}, {2, 3, 7}})
    c.expect(unfolding_exists(p1_marks(t)), "triple " + sig_str(t) + " unfolds");
  OrbifoldCurve elliptic;
  elliptic.base = BaseCurve::elliptic(EllipticCurve::parse("x^3 - x"));
  c.expect(unfolding_exists(elliptic), "elliptic base unfolds");
}

// ---------------------------------------------------------------------------

struct Gate {
  int id;
  const char* what;
  void (*run)(Check&);
};

const Gate kGates[] = {
    {1, "elliptic coverings reproduce the four reference ramification profiles",
     criterion_unfolding_profiles},
    {2, "classifier matches the fixture list and the exhaustive triple scan",
     criterion_classifier},
    {3, "ramification degree and composition rule hold on randomized maps",
     criterion_ramification},
    {4, "morphism verdicts match divisor nonnegativity; strict implies relaxed",
     criterion_equivalence},
    {5, "canonical degree contracts along morphisms, with equality when etale",
     criterion_degree_lemma},
    {6, "orbifold base of z^2 (z-1)^3 is exact and maximal in both modes",
     criterion_orbifold_base},
    {7, "truncated counting margins stay within quadrature error of zero",
     criterion_truncation},
    {8, "marked-disc metric: exact value, limit, radial integral, monotonicity",
     criterion_metric},
    {9, "limit families split into morphism and support-absorbed branches",
     criterion_limit_closure},
    {10, "group triviality and unfolding existence follow the arithmetic rules",
     criterion_pi1_and_unfolding},
};

}  // namespace

int main() {
  int failed_criteria = 0;
  for (const Gate& g : kGates) {
    Check c;
    try {
      g.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("unexpected exception: ") + e.what());
    }
    if (c.failed == 0) {
      std::printf("criterion %2d: PASS - %s [%d checks]\n", g.id, g.what, c.total);
    } else {
      ++failed_criteria;
      std::printf("criterion %2d: FAIL - %s [%d/%d checks failed; first: %s]\n", g.id,
                  g.what, c.failed, c.total, c.first.c_str());
    }
  }
  return failed_criteria;
}
