#pragma once

// Deterministic random inputs shared by the test suites. Raw-bit draws keep
// the streams identical across standard libraries.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

#include "sympcap/symplectic.hpp"
#include "sympcap/types.hpp"

namespace testutil {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
}

inline double normal(std::mt19937_64& rng) {
  const double u1 = (double(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = double(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline sympcap::Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  sympcap::Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * normal(rng);
  return v;
}

inline sympcap::Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  sympcap::Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) a(i, j) = a(j, i) = scale * normal(rng);
  return a;
}

inline sympcap::Matrix random_orthogonal(std::mt19937_64& rng, Eigen::Index n) {
  sympcap::Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<sympcap::Matrix> qr(g);
  sympcap::Matrix q = qr.householderQ();
  const sympcap::Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

/// Q diag(d) Q^T with eigenvalues log-uniform in [eig_lo, eig_hi].
inline sympcap::Matrix random_spd(std::mt19937_64& rng, Eigen::Index n, double eig_lo,
                                  double eig_hi) {
  const sympcap::Matrix q = random_orthogonal(rng, n);
  sympcap::Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d(i) = std::exp(uniform(rng, std::log(eig_lo), std::log(eig_hi)));
  return q * d.asDiagonal() * q.transpose();
}

/// PSD matrix of the same construction with eigenvalues in [0, eig_hi].
inline sympcap::Matrix random_psd(std::mt19937_64& rng, Eigen::Index n, double eig_hi) {
  const sympcap::Matrix q = random_orthogonal(rng, n);
  sympcap::Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = uniform(rng, 0.0, eig_hi);
  return q * d.asDiagonal() * q.transpose();
}

/// Covariance matrix with a prescribed symplectic spectrum band: S^T D S
/// with D = diag(nu, nu), nu_j log-uniform in [nu_lo, nu_hi] * hbar.
inline sympcap::Matrix random_covariance(std::mt19937_64& rng, Eigen::Index n, double hbar,
                                         double nu_lo, double nu_hi) {
  sympcap::Vector nu(n);
  for (Eigen::Index i = 0; i < n; ++i)
    nu(i) = hbar * std::exp(uniform(rng, std::log(nu_lo), std::log(nu_hi)));
  sympcap::Matrix d = sympcap::Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = d(n + i, n + i) = nu(i);
  const sympcap::Matrix s = sympcap::random_symplectic(n, rng(), 0.5);
  sympcap::Matrix sigma = s.transpose() * d * s;
  return ((sigma + sigma.transpose()) / 2.0).eval();
}

}  // namespace testutil
