#pragma once

// Short-time Fourier transform in the plain 2 pi convention (no hbar):
//
//   V_g f(x, xi) = \int e^{-2 pi i xi t} f(t) conj(g(t - x)) dt,
//
// evaluated per window shift by FFT. The hbar-world and the 2 pi-world meet
// only inside the Wigner relation check, through the explicit rescalings
// f(t) = psi(t sqrt(2 pi hbar)) and the sqrt(2 / pi hbar) argument map.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "sympcap/grid.hpp"
#include "sympcap/types.hpp"
#include "sympcap/wigner.hpp"

namespace sympcap {

/// Windowed transform on the shared sample grid. The output x-axis holds the
/// window displacements tau dt, tau in [-N/2, N/2); the xi-axis is the
/// centered FFT frequency grid with dxi = 1 / (N dt).
inline PhaseSpaceGrid stft(const SampledWavefunction& f, const SampledWavefunction& g) {
  validate(f, "stft");
  validate(g, "stft");
  if (!same_grid(f, g)) throw ValidationError("stft: grids must be identical");
  const Eigen::Index n = f.size();
  const double dt = f.dx;
  const double dxi = 1.0 / (double(n) * dt);

  PhaseSpaceGrid v;
  v.values.resize(n, n);
  v.x_axis = {-double(n / 2) * dt, dt, n};
  v.p_axis = {-double(n / 2) * dxi, dxi, n};
  v.hbar = f.hbar;

  const std::complex<double> i_unit(0.0, 1.0);
  ComplexVector h(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const Eigen::Index tau = s - n / 2;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index src = j - tau;
      const std::complex<double> window =
          (src >= 0 && src < n) ? std::conj(g.values(src)) : std::complex<double>(0.0, 0.0);
      const double parity = (j % 2 == 0) ? 1.0 : -1.0;  // carries xi_0 = -(N/2) dxi
      h(j) = parity * f.values(j) * window;
    }
    detail::fft_inplace(h);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double xi = v.p_axis.coord(k);
      v.values(s, k) = dt * std::exp(-i_unit * (2.0 * M_PI * xi * f.x0)) * h(k);
    }
  }
  return v;
}

struct StftWignerRelation {
  double max_discrepancy = 0.0;   ///< max | |W| - (2/pi hbar)^{1/2} |V| | over common nodes
  double measured_constant = 0.0;  ///< ratio of grid maxima, |W|_max / rhs_max
};

/// Numerical check of the modulus form of the W(psi, phi) <-> V_{g^v} f
/// rescaling identity. Requires centered grids, x0 = -(N/2) dx, for which
/// the rescaled points land exactly on STFT nodes; phases are not compared.
inline StftWignerRelation stft_wigner_relation_check(const SampledWavefunction& psi,
                                                     const SampledWavefunction& phi) {
  validate(psi, "stft_wigner_relation_check");
  if (!same_grid(psi, phi))
    throw ValidationError("stft_wigner_relation_check: grids must be identical");
  const Eigen::Index n = psi.size();
  if (std::abs(psi.x0 + double(n / 2) * psi.dx) > 1e-9 * double(n) * psi.dx)
    throw ValidationError("stft_wigner_relation_check: grid must be centered (x0 = -N/2 dx)");

  const double root = std::sqrt(2.0 * M_PI * psi.hbar);
  SampledWavefunction f;
  f.values = psi.values;
  f.x0 = psi.x0 / root;
  f.dx = psi.dx / root;
  f.hbar = psi.hbar;

  // g^v(t) = phi(-t sqrt(2 pi hbar)), by index reversal on the centered grid.
  SampledWavefunction g_rev = f;
  g_rev.values.setZero();
  for (Eigen::Index j = 1; j < n; ++j) g_rev.values(j) = phi.values(n - j);

  const PhaseSpaceGrid w = wigner_moyal(psi, phi);
  const PhaseSpaceGrid v = stft(f, g_rev);
  const double scale = std::sqrt(2.0 / (M_PI * psi.hbar));

  StftWignerRelation out;
  double w_max = 0.0, rhs_max = 0.0;
  for (Eigen::Index i = n / 4; i < 3 * n / 4; ++i) {
    const Eigen::Index s = 2 * i - n / 2;  // x_i sqrt(2/pi hbar) = (s - N/2) dt
    for (Eigen::Index k = 0; k < n; ++k) {
      const double lhs = std::abs(w.values(i, k));
      const double rhs = scale * std::abs(v.values(s, k));
      out.max_discrepancy = std::max(out.max_discrepancy, std::abs(lhs - rhs));
      w_max = std::max(w_max, lhs);
      rhs_max = std::max(rhs_max, rhs);
    }
  }
  out.measured_constant = rhs_max > 0 ? w_max / rhs_max : 0.0;
  return out;
}

}  // namespace sympcap
