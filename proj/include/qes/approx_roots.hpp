#pragma once

// Floating-point eigenvalue extraction. Kept apart from the exact core: only
// the CLI --approx path and the spectral property tests include this header.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "qes/unipoly.hpp"

namespace qes {

struct ApproxRoot {
  double re = 0.0;
  double im = 0.0;
  double residual = 0.0;  // |p(z)| / sum_i |c_i| max(1,|z|)^i for the monic factor
};

/// Roots of a univariate polynomial via the companion-matrix eigenproblem.
inline std::vector<ApproxRoot> approx_roots(const UniPoly& p) {
  const int n = p.degree();
  std::vector<ApproxRoot> out;
  if (n < 1) return out;
  std::vector<double> monic(n + 1);
  const Rational lead = p.leading();
  for (int i = 0; i <= n; ++i) monic[i] = Rational(p.coeff(i) / lead).get_d();

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -monic[i];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);

  for (int i = 0; i < n; ++i) {
    std::complex<double> z = solver.eigenvalues()[i];
    std::complex<double> val(0.0, 0.0);
    double scale = 0.0;
    double zp = 1.0;
    std::complex<double> pw(1.0, 0.0);
    for (int k = 0; k <= n; ++k) {
      val += monic[k] * pw;
      scale += std::abs(monic[k]) * std::max(1.0, zp);
      pw *= z;
      zp *= std::abs(z);
    }
    out.push_back({z.real(), z.imag(), std::abs(val) / scale});
  }
  return out;
}

}  // namespace qes
