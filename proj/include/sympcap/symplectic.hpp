#pragma once

// The standard symplectic form on R^{2n}, group-membership tests, and seeded
// random symplectic matrices. Coordinates are ordered (x_1..x_n, p_1..p_n),
// so J has block form [[0, I], [-I, 0]] and sigma(z, w) = w^T J z.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

#include "sympcap/types.hpp"

namespace sympcap {

/// The 2n x 2n standard form J with J^2 = -I.
template <typename Scalar = double>
MatrixX<Scalar> standard_form(Eigen::Index n) {
  if (n < 1) throw ValidationError("standard_form: n must be >= 1");
  MatrixX<Scalar> j = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = MatrixX<Scalar>::Identity(n, n);
  j.bottomLeftCorner(n, n) = -MatrixX<Scalar>::Identity(n, n);
  return j;
}

/// sigma(z, w) = p . x' - p' . x for z = (x, p), w = (x', p').
template <typename DerivedZ, typename DerivedW>
typename DerivedZ::Scalar symplectic_product(const Eigen::MatrixBase<DerivedZ>& z,
                                             const Eigen::MatrixBase<DerivedW>& w) {
  if (z.size() != w.size())
    throw ValidationError("symplectic_product: vectors must have equal length");
  const Eigen::Index n = mode_count(z.size(), "symplectic_product");
  return z.tail(n).dot(w.head(n)) - w.tail(n).dot(z.head(n));
}

/// Max-norm residual ||S^T J S - J||_max.
inline double symplectic_defect(const Matrix& s) {
  require_square_even(s, "symplectic_defect");
  const Eigen::Index n = s.rows() / 2;
  const Matrix j = standard_form(n);
  return (s.transpose() * j * s - j).cwiseAbs().maxCoeff();
}

/// Membership in Sp(n). A negative tol requests the default 1e-9 relative
/// to the matrix norm.
inline bool is_symplectic(const Matrix& s, double tol = -1.0) {
  require_finite(s, "is_symplectic");
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) return false;
  const double effective = tol > 0 ? tol : 1e-9 * std::max(1.0, s.norm());
  return symplectic_defect(s) <= effective;
}

/// Inverse of a symplectic matrix via S^{-1} = -J S^T J (no factorization).
inline Matrix symplectic_inverse(const Matrix& s) {
  require_square_even(s, "symplectic_inverse");
  const Matrix j = standard_form(s.rows() / 2);
  return -j * s.transpose() * j;
}

namespace detail {

/// exp(X) by scaling-and-squaring with the Taylor series truncated at term 20.
inline Matrix matrix_exp_taylor(const Matrix& x) {
  double norm = x.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix t = x / std::ldexp(1.0, squarings);
  Matrix result = Matrix::Identity(x.rows(), x.cols());
  Matrix term = Matrix::Identity(x.rows(), x.cols());
  for (int k = 1; k <= 20; ++k) {
    term = (term * t) / double(k);
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

/// Deterministic uniform double in [lo, hi) from raw 64-bit draws, so the
/// stream does not depend on the standard library's distribution details.
inline double uniform_draw(std::mt19937_64& rng, double lo, double hi) {
  const double u = double(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace detail

/// Seeded random element of Sp(n): exp(J A_1) exp(J A_2) with symmetric A_i
/// drawn entrywise from [-spread, spread]. Same seed, same matrix.
inline Matrix random_symplectic(Eigen::Index n, std::uint64_t seed, double spread = 0.5) {
  if (n < 1) throw ValidationError("random_symplectic: n must be >= 1");
  if (!(spread > 0)) throw ValidationError("random_symplectic: spread must be positive");
  std::mt19937_64 rng(seed);
  const Matrix j = standard_form(n);
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  for (int rep = 0; rep < 2; ++rep) {
    Matrix a(2 * n, 2 * n);
    for (Eigen::Index r = 0; r < 2 * n; ++r)
      for (Eigen::Index c = r; c < 2 * n; ++c) a(r, c) = a(c, r) = detail::uniform_draw(rng, -spread, spread);
    s = s * detail::matrix_exp_taylor(j * a);
  }
  return s;
}

}  // namespace sympcap
