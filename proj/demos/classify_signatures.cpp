// Walks a few orbifold signatures on the projective line and prints the
// curvature classification next to the canonical degree, ending with the
// euclidean coverings attached to the degree-zero triples.

#include <cstdio>
#include <vector>

#include <orbicurve/classify.hpp>
#include <orbicurve/unfolding.hpp>

using namespace orbicurve;

namespace {

OrbifoldCurve p1_marks(const std::vector<long long>& mults) {
  OrbifoldCurve o;
  long long at = 0;
  for (long long m : mults)
    o.delta.set(Place::of_rational(Rational(at++)), Multiplicity::finite(m));
  return o;
}

void report(const char* name, const OrbifoldCurve& o) {
  ClassificationVerdict v = classify(o);
  std::printf("%-12s deg(K + Delta) = %-6s %s (%s)\n", name,
              canonical_degree(o).str().c_str(), v.hyperbolic ? "hyperbolic" : "not hyperbolic",
              reason_code(v.reason));
}

}  // namespace

int main() {
  report("(2,3,5)", p1_marks({2, 3, 5}));
  report("(2,3,6)", p1_marks({2, 3, 6}));
  report("(2,3,7)", p1_marks({2, 3, 7}));
  report("(2,4,4)", p1_marks({2, 4, 4}));
  report("(3,3,3)", p1_marks({3, 3, 3}));
  report("(2,2,2,2)", p1_marks({2, 2, 2, 2}));
  report("(5,9)", p1_marks({5, 9}));

  std::printf("\nEuclidean signatures unfold to unramified elliptic coverings:\n");
  for (auto preset : {UnfoldingPreset::Sig244, UnfoldingPreset::Sig236, UnfoldingPreset::Sig333}) {
    CoveringData cover = build_unfolding(preset);
    std::printf("  %-9s degree %lld cover by %s, verified: %s\n",
                preset_name(preset).c_str(), cover.degree, cover.curve.str().c_str(),
                verify_etale_cover(cover) ? "yes" : "no");
  }
  return 0;
}
