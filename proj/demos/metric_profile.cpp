// Prints how the metric of the disc with one marked point of order n
// interpolates between the unmarked Poincare metric (n = 1) and the
// punctured-disc metric (n -> infinity), then compares distances.

#include <complex>
#include <cstdio>

#include <orbicurve/kobayashi.hpp>

using namespace orbicurve;
using Cplx = std::complex<double>;

int main() {
  std::printf("density at |z| = r for marking orders n (limit row = punctured disc)\n");
  std::printf("%8s", "n");
  for (double r : {0.2, 0.4, 0.6, 0.8}) std::printf("  r = %-8.1f", r);
  std::printf("\n");
  for (long long n : {1, 2, 4, 16, 256}) {
    std::printf("%8lld", n);
    for (double r : {0.2, 0.4, 0.6, 0.8})
      std::printf("  %-12.6f", metric_density(Multiplicity::finite(n), Cplx(r, 0.0)));
    std::printf("\n");
  }
  std::printf("%8s", "limit");
  for (double r : {0.2, 0.4, 0.6, 0.8}) std::printf("  %-12.6f", limit_density(Cplx(r, 0.0)));
  std::printf("\n\n");

  // Distances between the quarter points grow with the marking order.
  Cplx p(0.25, 0.0), q(-0.25, 0.0);
  std::printf("distance between 1/4 and -1/4:\n");
  for (long long n : {1, 2, 3, 8}) {
    double d = classical_distance_disc(Multiplicity::finite(n), p, q);
    std::printf("  order %lld: %.12f\n", n, d);
  }

  // An upper bound through two-link chains can only tighten the distance.
  ChainBound bound = chain_upper_bound(Multiplicity::finite(2), p, q);
  std::printf("chain upper bound at order 2: %.12f (%lld candidate evaluations)\n",
              bound.value, bound.evaluated);
  return 0;
}
