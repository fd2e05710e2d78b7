#pragma once

// Cyclic Jacobi eigendecomposition for real symmetric matrices.
//
// Works on the dense sizes this library targets (2n <= 64); eigenvalues are
// returned in decreasing order with the eigenvector columns permuted to match.

#include <Eigen/Dense>
#include <Eigen/Jacobi>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sympcap/types.hpp"

namespace sympcap {

template <typename Scalar>
struct SymmetricEigen {
  VectorX<Scalar> eigenvalues;   // decreasing
  MatrixX<Scalar> eigenvectors;  // orthogonal, column j pairs with eigenvalue j
  int sweeps = 0;
};

/// A = V diag(mu) V^T by cyclic-by-rows Jacobi rotations.
///
/// Stops once the off-diagonal Frobenius norm falls below 1e-14 * ||A||_F,
/// capped at 100 sweeps. Rejects input whose asymmetry exceeds
/// sym_tol * max(1, ||A||_max).
template <typename Scalar>
SymmetricEigen<Scalar> symmetric_eigendecomposition(const MatrixX<Scalar>& a,
                                                    Scalar sym_tol = Scalar(1e-12)) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || n == 0)
    throw ValidationError("symmetric_eigendecomposition: matrix must be square and nonempty");
  if (!a.allFinite())
    throw ValidationError("symmetric_eigendecomposition: non-finite entries");

  const Scalar scale = std::max(Scalar(1), a.cwiseAbs().maxCoeff());
  const Scalar asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > sym_tol * scale)
    throw ValidationError("symmetric_eigendecomposition: input is not symmetric (defect " +
                          std::to_string(double(asym)) + ")");

  MatrixX<Scalar> w = (a + a.transpose()) / Scalar(2);
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);
  const Scalar norm = w.norm();
  const Scalar thresh = Scalar(1e-14) * norm;

  auto off_norm = [&]() {
    Scalar s = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += w(p, q) * w(p, q);
    return std::sqrt(Scalar(2) * s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  bool converged = (norm == Scalar(0)) || off_norm() <= thresh;
  while (!converged && sweep < kMaxSweeps) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (w(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(w, p, q);
        w.applyOnTheLeft(p, q, rot.transpose());
        w.applyOnTheRight(p, q, rot);
        w(p, q) = w(q, p) = Scalar(0);
        v.applyOnTheRight(p, q, rot);
      }
    }
    ++sweep;
    converged = off_norm() <= thresh;
  }
  if (!converged)
    throw NumericalError("symmetric_eigendecomposition: no convergence after " +
                         std::to_string(kMaxSweeps) + " sweeps");

  // Decreasing eigenvalue order, ties kept in original index order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return w(i, i) > w(j, j); });

  SymmetricEigen<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = w(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  out.sweeps = sweep;
  return out;
}

/// Smallest eigenvalue of a symmetric matrix (convenience for PD checks).
template <typename Scalar>
Scalar smallest_eigenvalue(const MatrixX<Scalar>& a) {
  const auto eig = symmetric_eigendecomposition<Scalar>(a);
  return eig.eigenvalues(eig.eigenvalues.size() - 1);
}

/// V f(D) V^T for a symmetric positive-definite matrix; f given as a callable.
template <typename Scalar, typename Fn>
MatrixX<Scalar> spd_apply(const MatrixX<Scalar>& a, Fn&& f, const char* what) {
  const auto eig = symmetric_eigendecomposition<Scalar>(a);
  if (eig.eigenvalues(eig.eigenvalues.size() - 1) <= Scalar(0))
    throw ValidationError(std::string(what) + ": matrix is not positive definite (min eigenvalue " +
                          std::to_string(double(eig.eigenvalues(eig.eigenvalues.size() - 1))) +
                          ")");
  VectorX<Scalar> d = eig.eigenvalues;
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(d(i));
  return eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.transpose();
}

}  // namespace sympcap
