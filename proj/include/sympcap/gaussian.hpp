#pragma once

// Analytic phase-space Gaussians W(z) = C exp(-M (z - zbar) . (z - zbar) / hbar).
// This is the n-dimensional workhorse: grid transforms are one-dimensional,
// higher modes go through these closed forms and matrix algebra.

#include <Eigen/Dense>

#include <cmath>

#include "sympcap/jacobi.hpp"
#include "sympcap/types.hpp"

namespace sympcap {

struct GaussianWignerFunction {
  double amplitude = 0.0;  ///< C >= 0
  Vector center;           ///< zbar, length 2n
  Matrix M;                ///< symmetric positive definite
  double hbar = 1.0;

  double operator()(const Vector& z) const {
    const Vector d = z - center;
    return amplitude * std::exp(-d.dot(M * d) / hbar);
  }
};

/// Unit-mass Gaussian for a quadratic form M: C = (pi hbar)^{-n} sqrt(det M).
inline GaussianWignerFunction gaussian_wigner(const Matrix& m, const Vector& center,
                                              double hbar = 1.0) {
  require_square_even(m, "gaussian_wigner");
  if (!(hbar > 0)) throw ValidationError("gaussian_wigner: hbar must be positive");
  if (center.size() != m.rows())
    throw ValidationError("gaussian_wigner: center length must match the form");
  const Eigen::Index n = m.rows() / 2;
  const auto eig = symmetric_eigendecomposition<double>(m);
  double det = 1.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) <= 0)
      throw ValidationError("gaussian_wigner: matrix is not positive definite");
    det *= eig.eigenvalues(i);
  }
  GaussianWignerFunction g;
  g.amplitude = std::pow(M_PI * hbar, double(-n)) * std::sqrt(det);
  g.center = center;
  g.M = (m + m.transpose()) / 2.0;
  g.hbar = hbar;
  return g;
}

}  // namespace sympcap
