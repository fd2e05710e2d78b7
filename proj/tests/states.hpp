#pragma once

// Closed-form reference states and Wigner functions used as oracles.

#include <cmath>

#include "sympcap/grid.hpp"

namespace testutil {

/// Squeezed vacuum psi_lambda(x) = (lambda / pi hbar)^{1/4} e^{-lambda x^2 / 2 hbar}.
inline sympcap::SampledWavefunction squeezed_state(const sympcap::SampledWavefunction& grid,
                                                   double lambda) {
  sympcap::SampledWavefunction psi = grid;
  const double amp = std::pow(lambda / (M_PI * grid.hbar), 0.25);
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double x = grid.coord(j);
    psi.values(j) = amp * std::exp(-lambda * x * x / (2.0 * grid.hbar));
  }
  return psi;
}

inline sympcap::SampledWavefunction coherent_state(const sympcap::SampledWavefunction& grid) {
  return squeezed_state(grid, 1.0);
}

/// W psi_lambda(x, p) = (pi hbar)^{-1} e^{-(lambda x^2 + p^2 / lambda) / hbar}.
inline double squeezed_wigner(double x, double p, double lambda, double hbar) {
  return std::exp(-(lambda * x * x + p * p / lambda) / hbar) / (M_PI * hbar);
}

/// Laguerre polynomial L_k(u) by the three-term recurrence.
inline double laguerre(int k, double u) {
  double prev = 1.0, cur = 1.0 - u;
  if (k == 0) return prev;
  for (int m = 1; m < k; ++m) {
    const double next = ((2.0 * m + 1.0 - u) * cur - double(m) * prev) / double(m + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// W h_k(z) = ((-1)^k / pi hbar) L_k(2 |z|^2 / hbar) e^{-|z|^2 / hbar}.
inline double hermite_wigner(int k, double x, double p, double hbar) {
  const double r2 = (x * x + p * p) / hbar;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * laguerre(k, 2.0 * r2) * std::exp(-r2) / (M_PI * hbar);
}

}  // namespace testutil
