#pragma once

// Williamson normal form S^T M S = diag(L, L), the symplectic spectrum, and
// the symplectic capacity of phase-space ellipsoids {z : M z . z <= level}.
//
// Everything here is built from real symmetric eigendecompositions only:
//
//   * spectrum: the eigenvalues of K = M^{1/2} (J^T M J) M^{1/2} are the
//     squared symplectic eigenvalues, each with multiplicity two;
//   * diagonalizer: with A = M^{-1/2} J M^{-1/2} (antisymmetric), pick an
//     orthogonal O whose column pairs (u_j, v_j) satisfy A u_j = -mu_j v_j
//     with mu_j = 1/lambda_j; then S = M^{-1/2} O diag(L^{1/2}, L^{1/2}) is
//     symplectic and diagonalizes M. Pairs come from the eigenspaces of
//     A A^T, which handles degenerate spectra.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "sympcap/jacobi.hpp"
#include "sympcap/symplectic.hpp"
#include "sympcap/types.hpp"

namespace sympcap {

struct WilliamsonDecomposition {
  Matrix S;         ///< symplectic diagonalizer
  Vector spectrum;  ///< symplectic eigenvalues, decreasing
  double residual;  ///< || S^T M S - diag(L, L) ||_max
};

struct Ellipsoid {
  Matrix M;            ///< symmetric positive definite
  double level = 1.0;  ///< the set {z : M z . z <= level}
};

namespace detail {

inline void require_spd(const Matrix& m, const char* what) {
  require_square_even(m, what);
  require_finite(m, what);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ValidationError(std::string(what) + ": matrix is not symmetric");
  const double min_eig = smallest_eigenvalue<double>(m);
  if (min_eig <= 0)
    throw ValidationError(std::string(what) + ": matrix is not positive definite (min eigenvalue " +
                          std::to_string(min_eig) + ")");
}

}  // namespace detail

/// Moduli of the eigenvalues +-i lambda_j of J M, decreasing.
inline Vector symplectic_spectrum(const Matrix& m) {
  detail::require_spd(m, "symplectic_spectrum");
  const Eigen::Index n = m.rows() / 2;
  const Matrix j = standard_form(n);
  const Matrix half = spd_apply<double>(m, [](double t) { return std::sqrt(t); }, "symplectic_spectrum");
  Matrix k = half * (j.transpose() * m * j) * half;
  k = ((k + k.transpose()) / 2.0).eval();
  const auto eig = symmetric_eigendecomposition<double>(k);
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out(i) = std::sqrt(0.5 * (eig.eigenvalues(2 * i) + eig.eigenvalues(2 * i + 1)));
  return out;
}

/// Symplectic diagonalization of a positive-definite M.
inline WilliamsonDecomposition williamson_decompose(const Matrix& m) {
  detail::require_spd(m, "williamson_decompose");
  const Eigen::Index two_n = m.rows();
  const Eigen::Index n = two_n / 2;
  const Matrix j = standard_form(n);
  const Matrix inv_half =
      spd_apply<double>(m, [](double t) { return 1.0 / std::sqrt(t); }, "williamson_decompose");

  Matrix a = inv_half * j * inv_half;
  a = ((a - a.transpose()) / 2.0).eval();  // exactly antisymmetric
  Matrix g = a * a.transpose();
  g = ((g + g.transpose()) / 2.0).eval();
  const auto eig = symmetric_eigendecomposition<double>(g);

  // Ascending mu^2 = 1/lambda^2, i.e. lambda decreasing; ties keep the
  // eigensolver's deterministic order.
  std::vector<Eigen::Index> asc(static_cast<std::size_t>(two_n));
  std::iota(asc.begin(), asc.end(), Eigen::Index(0));
  std::stable_sort(asc.begin(), asc.end(), [&](Eigen::Index i, Eigen::Index j) {
    return eig.eigenvalues(i) < eig.eigenvalues(j);
  });

  Matrix u_cols(two_n, n), v_cols(two_n, n);
  Vector lambdas(n);
  Eigen::Index pair = 0;
  std::size_t start = 0;
  while (start < asc.size()) {
    const double head = eig.eigenvalues(asc[start]);
    std::size_t stop = start + 1;
    while (stop < asc.size() && eig.eigenvalues(asc[stop]) - head <= 1e-7 * head) ++stop;
    const std::size_t group = stop - start;
    if (group % 2 != 0)
      throw NumericalError("williamson_decompose: eigenspace pairing failed (odd multiplicity)");

    std::vector<Vector> basis;
    basis.reserve(group);
    for (std::size_t i = start; i < stop; ++i) basis.push_back(eig.eigenvectors.col(asc[i]));
    std::vector<Vector> chosen;
    for (std::size_t p = 0; p < group / 2; ++p) {
      // Deterministic rank-revealing pick: candidate with the largest
      // residual after projecting out the pairs already chosen.
      std::size_t best = 0;
      double best_norm = -1.0;
      std::vector<Vector> residuals(basis.size());
      for (std::size_t c = 0; c < basis.size(); ++c) {
        Vector r = basis[c];
        for (const Vector& q : chosen) r -= q.dot(r) * q;
        residuals[c] = r;
        const double nr = r.norm();
        if (nr > best_norm + 1e-15) {
          best_norm = nr;
          best = c;
        }
      }
      if (best_norm <= 1e-8)
        throw NumericalError("williamson_decompose: eigenspace pairing failed (rank deficiency)");
      Vector u = residuals[best] / best_norm;
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (std::abs(u(i)) > 1e-12) {
          if (u(i) < 0) u = -u;
          break;
        }
      }
      Vector w = a * u;
      const double mu = w.norm();
      if (mu <= 0) throw NumericalError("williamson_decompose: degenerate rotation block");
      Vector v = -w / mu;
      u_cols.col(pair) = u;
      v_cols.col(pair) = v;
      lambdas(pair) = 1.0 / mu;
      chosen.push_back(u);
      chosen.push_back(v);
      ++pair;
    }
    start = stop;
  }

  // Rounding can leave epsilon-level inversions inside a degenerate group;
  // permuting whole (u, v) pairs preserves every contract.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return lambdas(i) > lambdas(j); });
  Matrix o(two_n, two_n);
  Vector sorted(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    o.col(i) = u_cols.col(order[static_cast<std::size_t>(i)]);
    o.col(n + i) = v_cols.col(order[static_cast<std::size_t>(i)]);
    sorted(i) = lambdas(order[static_cast<std::size_t>(i)]);
  }
  lambdas = sorted;

  Vector sqrt_block(two_n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sqrt_block(i) = std::sqrt(lambdas(i));
    sqrt_block(n + i) = std::sqrt(lambdas(i));
  }
  WilliamsonDecomposition out;
  out.S = inv_half * o * sqrt_block.asDiagonal();
  out.spectrum = lambdas;

  Matrix target = Matrix::Zero(two_n, two_n);
  for (Eigen::Index i = 0; i < n; ++i) {
    target(i, i) = lambdas(i);
    target(n + i, n + i) = lambdas(i);
  }
  out.residual = (out.S.transpose() * m * out.S - target).cwiseAbs().maxCoeff();
  return out;
}

/// c(e) = pi * level / lambda_1; equal for all symplectic capacities of an
/// ellipsoid.
inline double ellipsoid_capacity(const Ellipsoid& e) {
  if (!(e.level > 0)) throw ValidationError("ellipsoid_capacity: level must be positive");
  const Vector spec = symplectic_spectrum(e.M);
  return M_PI * e.level / spec(0);
}

/// A symplectic S mapping the ball of radius sqrt(capacity / pi) into e,
/// witnessing the linear Gromov width.
inline Matrix ball_embedding_certificate(const Ellipsoid& e) {
  if (!(e.level > 0)) throw ValidationError("ball_embedding_certificate: level must be positive");
  return williamson_decompose(e.M).S;
}

/// Check a certificate by sampling boundary points of the ball B(R),
/// R = sqrt(capacity / pi), and testing membership of their images in e.
inline bool embedding_certificate_valid(const Ellipsoid& e, const Matrix& s, int samples = 10000,
                                        std::uint64_t seed = 20160229, double slack = 1e-9) {
  const Eigen::Index dim = e.M.rows();
  const double capacity = ellipsoid_capacity(e);
  const double radius = std::sqrt(capacity / M_PI);
  std::mt19937_64 rng(seed);
  auto normal_draw = [&rng]() {
    // Box-Muller on raw bits; avoids distribution implementation differences.
    const double u1 = (double(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = double(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  for (int it = 0; it < samples; ++it) {
    Vector z(dim);
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = normal_draw();
    const double nz = z.norm();
    if (nz == 0) continue;
    z *= radius / nz;
    const Vector w = s * z;
    if (w.dot(e.M * w) > e.level + slack * (1.0 + e.level)) return false;
  }
  return true;
}

}  // namespace sympcap
