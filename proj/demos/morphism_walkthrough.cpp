// Follows one rational map through the morphism toolkit: ramification
// divisor, the largest orbifold structures the map respects (min rule and
// gcd rule), the divisor criterion, and the canonical-degree inequality.

#include <cstdio>

#include <orbicurve/morphism.hpp>

using namespace orbicurve;

namespace {

void show_divisor(const char* label, const OrbifoldDivisor& d) {
  std::printf("%s %s\n", label, d.str().c_str());
}

}  // namespace

int main() {
  RationalMap f = RationalMap::parse("z^2*(z - 1)^3");
  std::printf("map          f = %s, degree %d\n", f.str().c_str(), f.degree());
  std::printf("ramification R_f = %s  (degree %s = 2 deg f - 2)\n",
              ramification_divisor(f).str().c_str(),
              ramification_divisor(f).degree().str().c_str());

  // The orbifold base is the largest target structure the map maps onto:
  // the min rule takes fiber minima, the gcd rule insists on divisibility.
  OrbifoldDivisor relaxed = orbifold_base(f, MorphismMode::NonClassical);
  OrbifoldDivisor strict = orbifold_base(f, MorphismMode::Classical);
  show_divisor("base (min) ", relaxed);
  show_divisor("base (gcd) ", strict);

  // The divisor criterion certifies the same verdict as the fiberwise check.
  CriterionResult crit = divisor_criterion(f, {}, relaxed);
  std::printf("criterion    R_f - f*Delta' = %s, effective: %s\n", crit.divisor.str().c_str(),
              crit.nonnegative ? "yes" : "no");

  OrbifoldCurve source;
  OrbifoldCurve target;
  target.delta = relaxed;
  DegreeInequality deg = degree_inequality_check(f, source, target);
  std::printf("degrees      deg(K + Delta) = %s >= deg(f) * deg(K' + Delta') = %s: %s\n",
              deg.lhs.str().c_str(), deg.rhs.str().c_str(), deg.holds ? "yes" : "no");

  // Raising any base multiplicity by one must break the morphism property.
  for (const auto& [p, m] : relaxed.terms()) {
    OrbifoldDivisor raised = relaxed;
    raised.set(p, Multiplicity::finite(m.value() + 1));
    MorphismVerdict v = check_morphism(f, {}, raised, MorphismMode::NonClassical);
    std::printf("raise at %-4s -> morphism: %s\n", p.str().c_str(), v.ok ? "yes" : "no");
  }
  return 0;
}
