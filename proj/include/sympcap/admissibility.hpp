#pragma once

// Quantum-mechanical admissibility of covariance matrices, both as the
// positive semi-definiteness of Sigma + (i hbar / 2) J and as the capacity
// bound c(W_Sigma) >= h/2 on the Wigner ellipsoid; the two verdicts agree
// away from the boundary. Also the Gaussian trichotomy and quantum blobs.

#include <Eigen/Dense>

#include <cmath>

#include "sympcap/gaussian.hpp"
#include "sympcap/jacobi.hpp"
#include "sympcap/symplectic.hpp"
#include "sympcap/types.hpp"
#include "sympcap/williamson.hpp"

namespace sympcap {

struct CovarianceMatrix {
  Matrix sigma;       ///< symmetric positive definite, 2n x 2n
  double hbar = 1.0;  ///< > 0
};

struct AdmissibilityVerdict {
  bool hermitian_psd = false;
  double capacity = 0.0;
  bool capacity_ok = false;
  double min_symplectic_eigenvalue = 0.0;
  double margin = 0.0;  ///< nu_min - hbar/2
  bool equivalent = false;
};

enum class GaussianVerdict { PureBlob, AdmissibleMixed, NotAState };

struct GaussianClassification {
  GaussianVerdict verdict = GaussianVerdict::NotAState;
  Vector spectrum;
  double capacity = 0.0;
};

struct BlobVerdict {
  bool is_blob = false;
  Matrix witness;  ///< Williamson diagonalizer; maps B(sqrt(level)) onto the blob
  Vector spectrum;
};

namespace detail {

inline void require_covariance(const CovarianceMatrix& cov, const char* what) {
  require_spd(cov.sigma, what);
  if (!(cov.hbar > 0)) throw ValidationError(std::string(what) + ": hbar must be positive");
}

}  // namespace detail

/// PSD test of Sigma + (i hbar / 2) J on its real symmetric embedding
/// [[Sigma, (hbar/2) J], [-(hbar/2) J, Sigma]] (eigenvalues doubled).
inline bool admissible_hermitian(const CovarianceMatrix& cov, double tol = 1e-10) {
  detail::require_covariance(cov, "admissible_hermitian");
  const Eigen::Index d = cov.sigma.rows();
  const Matrix j = standard_form(d / 2);
  Matrix embed(2 * d, 2 * d);
  embed.topLeftCorner(d, d) = cov.sigma;
  embed.topRightCorner(d, d) = (cov.hbar / 2.0) * j;
  embed.bottomLeftCorner(d, d) = -(cov.hbar / 2.0) * j;
  embed.bottomRightCorner(d, d) = cov.sigma;
  const double min_eig = smallest_eigenvalue<double>(embed);
  return min_eig >= -tol * cov.sigma.norm();
}

/// W_Sigma : (1/2) Sigma^{-1} z . z <= 1.
inline Ellipsoid wigner_ellipsoid(const CovarianceMatrix& cov) {
  detail::require_covariance(cov, "wigner_ellipsoid");
  Ellipsoid e;
  e.M = 0.5 * spd_apply<double>(cov.sigma, [](double t) { return 1.0 / t; }, "wigner_ellipsoid");
  e.M = ((e.M + e.M.transpose()) / 2.0).eval();
  e.level = 1.0;
  return e;
}

/// Capacity form of the uncertainty principle: c(W_Sigma) >= h/2, checked
/// against the Hermitian verdict.
inline AdmissibilityVerdict admissible_capacity(const CovarianceMatrix& cov, double tol = 1e-9) {
  detail::require_covariance(cov, "admissible_capacity");
  AdmissibilityVerdict v;
  v.capacity = ellipsoid_capacity(wigner_ellipsoid(cov));
  const double half_h = M_PI * cov.hbar;  // h/2 = pi hbar
  v.capacity_ok = v.capacity >= half_h * (1.0 - tol);
  const Vector spec = symplectic_spectrum(cov.sigma);
  v.min_symplectic_eigenvalue = spec(spec.size() - 1);
  v.margin = v.min_symplectic_eigenvalue - cov.hbar / 2.0;
  v.hermitian_psd = admissible_hermitian(cov);
  v.equivalent = (v.hermitian_psd == v.capacity_ok);
  return v;
}

/// Per-pair Robertson-Schroedinger checks read off Sigma's entries:
/// (j, j): Var(X_j) Var(P_j) >= Cov(X_j, P_j)^2 + hbar^2/4,
/// (j, k): Var(X_j) Var(P_k) >= Cov(X_j, P_k)^2 for j != k,
/// each within 1e-12 slack relative to the matrix scale.
inline Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> robertson_schrodinger_check(
    const CovarianceMatrix& cov) {
  detail::require_covariance(cov, "robertson_schrodinger_check");
  const Eigen::Index n = cov.sigma.rows() / 2;
  const double scale = std::max(1.0, cov.sigma.cwiseAbs().maxCoeff());
  const double slack = 1e-12 * scale * scale;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> ok(n, n);
  for (Eigen::Index jj = 0; jj < n; ++jj) {
    for (Eigen::Index kk = 0; kk < n; ++kk) {
      const double var_x = cov.sigma(jj, jj);
      const double var_p = cov.sigma(n + kk, n + kk);
      const double cross = cov.sigma(jj, n + kk);
      const double rhs = cross * cross + (jj == kk ? cov.hbar * cov.hbar / 4.0 : 0.0);
      ok(jj, kk) = var_x * var_p >= rhs - slack;
    }
  }
  return ok;
}

/// Action of the shortest periodic orbit of H = (1/2) Sigma^{-1} z . z on
/// H^{-1}(1); equals the capacity of the Wigner ellipsoid.
inline double shortest_orbit_action(const CovarianceMatrix& cov) {
  return ellipsoid_capacity(wigner_ellipsoid(cov));
}

/// Trichotomy for W(z) = C exp(-M z . z / hbar): PureBlob when the whole
/// symplectic spectrum of M sits in [1 - tol, 1 + tol], NotAState when
/// lambda_1 > 1 + tol, AdmissibleMixed otherwise.
inline GaussianClassification classify_gaussian(const GaussianWignerFunction& g,
                                                double tol = 1e-8) {
  GaussianClassification out;
  out.spectrum = symplectic_spectrum(g.M);
  out.capacity = M_PI * g.hbar / out.spectrum(0);
  const double lo = 1.0 - tol, hi = 1.0 + tol;
  if (out.spectrum(0) > hi) {
    out.verdict = GaussianVerdict::NotAState;
  } else if (out.spectrum.minCoeff() >= lo) {
    out.verdict = GaussianVerdict::PureBlob;
  } else {
    out.verdict = GaussianVerdict::AdmissibleMixed;
  }
  return out;
}

/// Is the ellipsoid the image of the ball B(sqrt(level)) under a linear
/// symplectic map? True iff the symplectic spectrum is all ones; the witness
/// realizes the embedding when it is.
inline BlobVerdict is_quantum_blob(const Ellipsoid& e, double tol = 1e-8) {
  if (!(e.level > 0)) throw ValidationError("is_quantum_blob: level must be positive");
  BlobVerdict v;
  const WilliamsonDecomposition w = williamson_decompose(e.M);
  v.spectrum = w.spectrum;
  v.witness = w.S;
  v.is_blob = (v.spectrum.array() >= 1.0 - tol).all() && (v.spectrum.array() <= 1.0 + tol).all();
  return v;
}

/// Gaussian Wigner function of a covariance matrix: the quadratic form is
/// M = (hbar/2) Sigma^{-1}, which makes the amplitude the standard
/// multivariate normal constant (2 pi)^{-n} / sqrt(det Sigma).
inline GaussianWignerFunction gaussian_wigner(const CovarianceMatrix& cov, const Vector& center) {
  detail::require_covariance(cov, "gaussian_wigner");
  const Matrix m =
      (cov.hbar / 2.0) *
      spd_apply<double>(cov.sigma, [](double t) { return 1.0 / t; }, "gaussian_wigner");
  return gaussian_wigner(((m + m.transpose()) / 2.0).eval(), center, cov.hbar);
}

/// Area of the shadow of W_Sigma on the conjugate plane (x_j, p_j), i.e. the
/// section ellipse obtained by restricting (1/2 Sigma^{-1})^{-1} = 2 Sigma:
/// 2 pi sqrt(det Sigma_j). At least h/2 for admissible Sigma.
inline double conjugate_plane_area(const CovarianceMatrix& cov, Eigen::Index j) {
  detail::require_covariance(cov, "conjugate_plane_area");
  const Eigen::Index n = cov.sigma.rows() / 2;
  if (j < 0 || j >= n) throw ValidationError("conjugate_plane_area: mode index out of range");
  Eigen::Matrix2d block;
  block << cov.sigma(j, j), cov.sigma(j, n + j), cov.sigma(n + j, j), cov.sigma(n + j, n + j);
  return 2.0 * M_PI * std::sqrt(block.determinant());
}

}  // namespace sympcap
