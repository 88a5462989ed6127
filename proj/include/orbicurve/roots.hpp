#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "squarefree.hpp"

namespace orbicurve {

namespace roots_detail {

using Cplx = std::complex<double>;

inline std::vector<Cplx> to_complex_coeffs(const Polynomial& p) {
  std::vector<Cplx> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(rat_double(x), 0.0);
  return c;
}

inline Cplx horner(const std::vector<Cplx>& c, Cplx z) {
  Cplx r(0.0, 0.0);
  for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

// Eigenvalues of the (balanced by Eigen) companion matrix of a monic-scaled
// polynomial: robust starting points for the refinement stage.
inline std::vector<Cplx> companion_eigenvalues(const std::vector<Cplx>& c) {
  int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  double lead = c[static_cast<size_t>(n)].real();
  for (int i = 0; i < n; ++i) {
    m(i, n - 1) = -c[static_cast<size_t>(i)].real() / lead;
    if (i > 0) m(i, i - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericError("root finding: eigenvalue iteration failed");
  std::vector<Cplx> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

// Simultaneous Aberth–Ehrlich refinement; the input polynomial must be
// square-free so that every root is simple.
inline void aberth_refine(const std::vector<Cplx>& c, std::vector<Cplx>& z) {
  std::vector<Cplx> dc(c.size() > 1 ? c.size() - 1 : 0);
  for (size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * static_cast<double>(i);
  const size_t n = z.size();
  for (int iter = 0; iter < 80; ++iter) {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      Cplx p = horner(c, z[i]);
      Cplx dp = horner(dc, z[i]);
      if (dp == Cplx(0.0, 0.0)) continue;
      Cplx newton = p / dp;
      Cplx sum(0.0, 0.0);
      for (size_t j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      Cplx step = newton / (1.0 - newton * sum);
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst < 1e-15) return;
  }
  // Accept the final iterate only if every residual is small relative to the
  // coefficient scale.
  double scale = 0.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  for (size_t i = 0; i < n; ++i) {
    double grow = 1.0;
    double az = std::abs(z[i]);
    for (size_t k = 0; k < c.size(); ++k) grow = std::max(grow, std::pow(az, double(k)));
    if (std::abs(horner(c, z[i])) > 1e-8 * scale * grow)
      throw NumericError("root finding: refinement did not converge");
  }
}

}  // namespace roots_detail

// All complex roots of p, each repeated according to its multiplicity.
// Multiplicities are separated exactly (square-free decomposition) before the
// numeric stage, so clustered output reflects genuinely distinct roots.
inline std::vector<std::complex<double>> complex_roots(const Polynomial& p) {
  if (p.degree() < 0) throw InputError("root finding: zero polynomial");
  std::vector<std::complex<double>> all;
  if (p.degree() == 0) return all;
  for (const auto& [part, mult] : squarefree_decompose(p)) {
    if (part.degree() < 1) continue;
    auto c = roots_detail::to_complex_coeffs(part);
    auto z = roots_detail::companion_eigenvalues(c);
    roots_detail::aberth_refine(c, z);
    for (const auto& r : z)
      for (int k = 0; k < mult; ++k) all.push_back(r);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return all;
}

// Real roots only, extracted from complex_roots with an imaginary-part cutoff
// scaled to the root magnitude.
inline std::vector<double> real_roots(const Polynomial& p) {
  std::vector<double> out;
  for (const auto& z : complex_roots(p)) {
    if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z.real()))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace orbicurve
