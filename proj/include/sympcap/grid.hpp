#pragma once

// Sampled wavefunctions on uniform 1-D grids, rectangular phase-space grids,
// and the radix-2 FFT everything downstream is built on. Grid lengths are
// powers of two (>= 16); values outside the sampled window are treated as
// zero, so inputs are expected to decay below ~1e-12 at the window edges for
// the documented tolerances to hold.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "sympcap/types.hpp"

namespace sympcap {

inline bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

struct SampledWavefunction {
  ComplexVector values;
  double x0 = 0.0;  ///< left grid edge
  double dx = 1.0;  ///< spacing, > 0
  double hbar = 1.0;

  Eigen::Index size() const { return values.size(); }
  double coord(Eigen::Index j) const { return x0 + double(j) * dx; }
  /// Rectangle-rule L2 norm.
  double norm() const { return std::sqrt(dx * values.squaredNorm()); }
};

inline void validate(const SampledWavefunction& psi, const char* what) {
  if (!is_pow2(psi.size()) || psi.size() < 16)
    throw ValidationError(std::string(what) + ": grid length must be a power of two >= 16, got " +
                          std::to_string(psi.size()));
  if (!(psi.dx > 0)) throw ValidationError(std::string(what) + ": dx must be positive");
  if (!(psi.hbar > 0)) throw ValidationError(std::string(what) + ": hbar must be positive");
  if (!psi.values.allFinite()) throw ValidationError(std::string(what) + ": non-finite samples");
}

/// Centered grid on [-half_width, half_width) with N samples.
inline SampledWavefunction make_grid(Eigen::Index n, double half_width, double hbar) {
  SampledWavefunction psi;
  psi.values = ComplexVector::Zero(n);
  psi.dx = 2.0 * half_width / double(n);
  psi.x0 = -half_width;
  psi.hbar = hbar;
  validate(psi, "make_grid");
  return psi;
}

inline bool same_grid(const SampledWavefunction& a, const SampledWavefunction& b) {
  const double scale = std::max({1.0, std::abs(a.x0), a.dx});
  return a.size() == b.size() && std::abs(a.x0 - b.x0) <= 1e-12 * scale &&
         std::abs(a.dx - b.dx) <= 1e-12 * a.dx && std::abs(a.hbar - b.hbar) <= 1e-12 * a.hbar;
}

struct Axis {
  double origin = 0.0;
  double step = 1.0;
  Eigen::Index count = 0;
  double coord(Eigen::Index i) const { return origin + double(i) * step; }
};

/// Values on a rectangular (x, p) grid; rows follow x, columns follow p.
struct PhaseSpaceGrid {
  ComplexMatrix values;
  Axis x_axis;
  Axis p_axis;
  double hbar = 1.0;

  double cell_area() const { return x_axis.step * p_axis.step; }
};

inline bool same_grid(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
  auto close = [](double u, double v, double s) { return std::abs(u - v) <= 1e-12 * s; };
  return a.values.rows() == b.values.rows() && a.values.cols() == b.values.cols() &&
         close(a.x_axis.origin, b.x_axis.origin, std::max(1.0, std::abs(a.x_axis.origin))) &&
         close(a.x_axis.step, b.x_axis.step, a.x_axis.step) &&
         close(a.p_axis.origin, b.p_axis.origin, std::max(1.0, std::abs(a.p_axis.origin))) &&
         close(a.p_axis.step, b.p_axis.step, a.p_axis.step);
}

/// Wigner grids tie the axes together: dp = 2 pi hbar / (2 N dx).
inline bool has_wigner_reciprocity(const PhaseSpaceGrid& g) {
  const double expect = 2.0 * M_PI * g.hbar / (2.0 * double(g.values.rows()) * g.x_axis.step);
  return std::abs(g.p_axis.step - expect) <= 1e-12 * expect;
}

namespace detail {

/// In-place radix-2 FFT, X_k = sum_j x_j e^{-2 pi i jk/N} (inverse divides
/// by N and conjugates the kernel). N must be a power of two.
inline void fft_inplace(ComplexVector& x, bool inverse = false) {
  const Eigen::Index n = x.size();
  if (!is_pow2(n)) throw ValidationError("fft: length must be a power of two");
  // Bit-reversal permutation.
  for (Eigen::Index i = 1, rev = 0; i < n; ++i) {
    Eigen::Index bit = n >> 1;
    for (; rev & bit; bit >>= 1) rev ^= bit;
    rev ^= bit;
    if (i < rev) std::swap(x(i), x(rev));
  }
  const double sign = inverse ? 1.0 : -1.0;
  // One twiddle table for the full size keeps every stage exact to 1 ulp.
  ComplexVector twiddle(n / 2);
  for (Eigen::Index j = 0; j < n / 2; ++j)
    twiddle(j) = std::polar(1.0, sign * 2.0 * M_PI * double(j) / double(n));
  for (Eigen::Index len = 2; len <= n; len <<= 1) {
    const Eigen::Index stride = n / len;
    for (Eigen::Index block = 0; block < n; block += len) {
      for (Eigen::Index j = 0; j < len / 2; ++j) {
        const std::complex<double> w = twiddle(j * stride);
        const std::complex<double> u = x(block + j);
        const std::complex<double> t = w * x(block + j + len / 2);
        x(block + j) = u + t;
        x(block + j + len / 2) = u - t;
      }
    }
  }
  if (inverse) x /= double(n);
}

inline ComplexVector fft(ComplexVector x, bool inverse = false) {
  fft_inplace(x, inverse);
  return x;
}

}  // namespace detail

}  // namespace sympcap
