#pragma once

// Discrete Wigner / Wigner-Moyal transforms, the hbar-scaled Fourier
// transform, Heisenberg-Weyl translations, metaplectic generator actions,
// marginals and phase-space averages. Grid transforms are one-dimensional.
//
// Conventions (N samples, spacing dx, left edge x0):
//
//   F psi(p_k) = (2 pi hbar)^{-1/2} dx sum_j e^{-i p_k x_j / hbar} psi(x_j),
//     on the reciprocal grid dp = 2 pi hbar / (N dx), p_0 = -(N/2) dp;
//     the rectangle-rule Parseval identity holds exactly on the grid.
//
//   W(psi, phi)(x_j, p) = (dx / (pi hbar)) sum_m psi(x_j + m dx)
//     conj(phi(x_j - m dx)) e^{-2 i p m dx / hbar},
//     the even/odd correlation scheme with y-spacing 2 dx, evaluated by one
//     length-N FFT per column; hence dp = 2 pi hbar / (2 N dx) and the
//     position marginal identity is exact on the grid.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "sympcap/gaussian.hpp"
#include "sympcap/grid.hpp"
#include "sympcap/types.hpp"

namespace sympcap {

inline SampledWavefunction fourier_transform(const SampledWavefunction& psi) {
  validate(psi, "fourier_transform");
  const Eigen::Index n = psi.size();
  const double dp = 2.0 * M_PI * psi.hbar / (double(n) * psi.dx);
  const double p0 = -double(n / 2) * dp;

  ComplexVector g(n);
  const std::complex<double> i_unit(0.0, 1.0);
  for (Eigen::Index j = 0; j < n; ++j)
    g(j) = psi.values(j) * std::exp(-i_unit * (p0 * double(j) * psi.dx / psi.hbar));
  detail::fft_inplace(g);

  SampledWavefunction out;
  out.values.resize(n);
  const double scale = psi.dx / std::sqrt(2.0 * M_PI * psi.hbar);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pk = p0 + double(k) * dp;
    out.values(k) = scale * std::exp(-i_unit * (pk * psi.x0 / psi.hbar)) * g(k);
  }
  out.x0 = p0;
  out.dx = dp;
  out.hbar = psi.hbar;
  return out;
}

inline PhaseSpaceGrid wigner_moyal(const SampledWavefunction& psi, const SampledWavefunction& phi) {
  validate(psi, "wigner_moyal");
  validate(phi, "wigner_moyal");
  if (!same_grid(psi, phi)) throw ValidationError("wigner_moyal: grids must be identical");
  const Eigen::Index n = psi.size();
  const double dp = M_PI * psi.hbar / (double(n) * psi.dx);

  PhaseSpaceGrid w;
  w.values.resize(n, n);
  w.x_axis = {psi.x0, psi.dx, n};
  w.p_axis = {-double(n / 2) * dp, dp, n};
  w.hbar = psi.hbar;

  const double scale = psi.dx / (M_PI * psi.hbar);
  ComplexVector d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d.setZero();
    for (Eigen::Index m = -(n / 2); m < n / 2; ++m) {
      const Eigen::Index plus = j + m;
      const Eigen::Index minus = j - m;
      if (plus < 0 || plus >= n || minus < 0 || minus >= n) continue;
      const std::complex<double> c = psi.values(plus) * std::conj(phi.values(minus));
      const double parity = (m % 2 == 0) ? 1.0 : -1.0;  // carries p_0 = -(N/2) dp
      d((m + n) % n) = parity * c;
    }
    detail::fft_inplace(d);
    w.values.row(j) = (scale * d).transpose();
  }
  return w;
}

inline PhaseSpaceGrid wigner_transform(const SampledWavefunction& psi) {
  return wigner_moyal(psi, psi);
}

/// The same correlation sum evaluated at one arbitrary momentum (the
/// discrete Wigner transform is a trigonometric polynomial in p).
inline std::complex<double> wigner_point(const SampledWavefunction& psi,
                                         const SampledWavefunction& phi, Eigen::Index j,
                                         double p) {
  validate(psi, "wigner_point");
  if (!same_grid(psi, phi)) throw ValidationError("wigner_point: grids must be identical");
  const Eigen::Index n = psi.size();
  if (j < 0 || j >= n) throw ValidationError("wigner_point: index out of range");
  const std::complex<double> i_unit(0.0, 1.0);
  std::complex<double> acc(0.0, 0.0);
  for (Eigen::Index m = -(n / 2); m < n / 2; ++m) {
    const Eigen::Index plus = j + m;
    const Eigen::Index minus = j - m;
    if (plus < 0 || plus >= n || minus < 0 || minus >= n) continue;
    acc += psi.values(plus) * std::conj(phi.values(minus)) *
           std::exp(-i_unit * (2.0 * p * double(m) * psi.dx / psi.hbar));
  }
  return acc * (psi.dx / (M_PI * psi.hbar));
}

struct Marginals {
  Vector position_density;  ///< integral over p, one entry per x node
  Vector momentum_density;  ///< integral over x, one entry per p node
};

/// Rectangle-rule marginals; the imaginary residue of the grid is dropped.
inline Marginals marginals(const PhaseSpaceGrid& w) {
  Marginals out;
  out.position_density = (w.values.rowwise().sum() * w.p_axis.step).real();
  out.momentum_density = (w.values.colwise().sum() * w.x_axis.step).real().transpose();
  return out;
}

/// (T(z0) psi)(x) = e^{(i/hbar)(p0 x - p0 x0 / 2)} psi(x - x0) with z0 =
/// (x0, p0). The position shift must be an integer number of grid steps.
inline SampledWavefunction heisenberg_weyl_translate(const SampledWavefunction& psi,
                                                     const Eigen::Vector2d& z0) {
  validate(psi, "heisenberg_weyl_translate");
  const double steps = z0(0) / psi.dx;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
    throw ValidationError("heisenberg_weyl_translate: x-shift must be a multiple of dx");
  const Eigen::Index shift = Eigen::Index(rounded);
  const Eigen::Index n = psi.size();
  const std::complex<double> i_unit(0.0, 1.0);

  SampledWavefunction out = psi;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = j - shift;
    const std::complex<double> value =
        (src >= 0 && src < n) ? psi.values(src) : std::complex<double>(0.0, 0.0);
    const double phase = (z0(1) * out.coord(j) - 0.5 * z0(1) * z0(0)) / psi.hbar;
    out.values(j) = std::exp(i_unit * phase) * value;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metaplectic generator actions.

enum class MetaplecticKind { Fourier, Dilation, Chirp };

struct MetaplecticGenerator {
  MetaplecticKind kind = MetaplecticKind::Fourier;
  double parameter = 0.0;  ///< ell for dilation, c for chirp
};

inline MetaplecticGenerator fourier_generator() { return {MetaplecticKind::Fourier, 0.0}; }
inline MetaplecticGenerator dilation_generator(double ell) {
  return {MetaplecticKind::Dilation, ell};
}
inline MetaplecticGenerator chirp_generator(double c) { return {MetaplecticKind::Chirp, c}; }

/// The projected symplectic matrix S with W(S_hat psi)(z) = W psi(S^{-1} z).
inline Eigen::Matrix2d metaplectic_matrix(const MetaplecticGenerator& gen) {
  Eigen::Matrix2d s;
  switch (gen.kind) {
    case MetaplecticKind::Fourier:
      s << 0.0, 1.0, -1.0, 0.0;  // J
      break;
    case MetaplecticKind::Dilation:
      s << 1.0 / gen.parameter, 0.0, 0.0, gen.parameter;
      break;
    case MetaplecticKind::Chirp:
      s << 1.0, 0.0, gen.parameter, 1.0;
      break;
  }
  return s;
}

namespace detail {

/// Evaluate the trigonometric interpolant of the samples at arbitrary x;
/// zero outside the sampled window.
inline std::complex<double> trig_interpolate(const SampledWavefunction& psi,
                                             const ComplexVector& coeffs, double x) {
  const Eigen::Index n = psi.size();
  if (x < psi.x0 - 0.5 * psi.dx || x > psi.x0 + double(n - 1) * psi.dx + 0.5 * psi.dx)
    return {0.0, 0.0};
  const std::complex<double> i_unit(0.0, 1.0);
  const double theta = 2.0 * M_PI * (x - psi.x0) / (double(n) * psi.dx);
  std::complex<double> acc(0.0, 0.0);
  for (Eigen::Index k = -(n / 2); k < n / 2; ++k)
    acc += coeffs((k + n) % n) * std::exp(i_unit * (theta * double(k)));
  return acc;
}

}  // namespace detail

/// Apply the metaplectic operator for one generator:
///   fourier      -> F psi (output lives on the reciprocal grid),
///   dilation(l)  -> sqrt(l) psi(l x), bandlimited resampling, l in [1/4, 4],
///   chirp(c)     -> e^{i c x^2 / (2 hbar)} psi(x).
inline SampledWavefunction metaplectic_apply(const SampledWavefunction& psi,
                                             const MetaplecticGenerator& gen) {
  validate(psi, "metaplectic_apply");
  switch (gen.kind) {
    case MetaplecticKind::Fourier:
      return fourier_transform(psi);
    case MetaplecticKind::Dilation: {
      const double ell = gen.parameter;
      if (!(ell >= 0.25 && ell <= 4.0))
        throw ValidationError("metaplectic_apply: dilation factor must lie in [1/4, 4]");
      const Eigen::Index n = psi.size();
      ComplexVector coeffs = detail::fft(psi.values);
      coeffs /= double(n);
      SampledWavefunction out = psi;
      for (Eigen::Index j = 0; j < n; ++j)
        out.values(j) = std::sqrt(ell) * detail::trig_interpolate(psi, coeffs, ell * psi.coord(j));
      return out;
    }
    case MetaplecticKind::Chirp: {
      const std::complex<double> i_unit(0.0, 1.0);
      SampledWavefunction out = psi;
      for (Eigen::Index j = 0; j < psi.size(); ++j) {
        const double x = psi.coord(j);
        out.values(j) = std::exp(i_unit * (gen.parameter * x * x / (2.0 * psi.hbar))) *
                        psi.values(j);
      }
      return out;
    }
  }
  throw ValidationError("metaplectic_apply: unsupported generator");
}

/// Rectangle-rule value of the real part of the overlap integral
/// \int rho(z) a(z) dz.
inline double phase_space_average(const PhaseSpaceGrid& rho, const PhaseSpaceGrid& a) {
  if (!same_grid(rho, a)) throw ValidationError("phase_space_average: grids must be identical");
  const std::complex<double> total = (rho.values.array() * a.values.array()).sum();
  return total.real() * rho.cell_area();
}

/// Evaluate an analytic Gaussian on a grid (n = 1 only).
inline PhaseSpaceGrid gaussian_to_grid(const GaussianWignerFunction& g, const Axis& x_axis,
                                       const Axis& p_axis) {
  if (g.M.rows() != 2)
    throw ValidationError("gaussian_to_grid: grid evaluation requires one mode");
  PhaseSpaceGrid grid;
  grid.values.resize(x_axis.count, p_axis.count);
  grid.x_axis = x_axis;
  grid.p_axis = p_axis;
  grid.hbar = g.hbar;
  Vector z(2);
  for (Eigen::Index i = 0; i < x_axis.count; ++i) {
    z(0) = x_axis.coord(i);
    for (Eigen::Index k = 0; k < p_axis.count; ++k) {
      z(1) = p_axis.coord(k);
      grid.values(i, k) = g(z);
    }
  }
  return grid;
}

/// Bilinear interpolation of the (real part of the) grid; zero outside the
/// grid hull. Interpolation error is O(step^2 . max |Hessian|), which is the
/// floor for grid-vs-grid covariance checks at off-node points.
inline double bilinear_value(const PhaseSpaceGrid& g, double x, double p) {
  const double fi = (x - g.x_axis.origin) / g.x_axis.step;
  const double fk = (p - g.p_axis.origin) / g.p_axis.step;
  if (fi < 0 || fk < 0 || fi > double(g.x_axis.count - 1) || fk > double(g.p_axis.count - 1))
    return 0.0;
  const Eigen::Index i = std::min(Eigen::Index(fi), g.x_axis.count - 2);
  const Eigen::Index k = std::min(Eigen::Index(fk), g.p_axis.count - 2);
  const double tx = fi - double(i);
  const double tp = fk - double(k);
  const double v00 = g.values(i, k).real(), v10 = g.values(i + 1, k).real();
  const double v01 = g.values(i, k + 1).real(), v11 = g.values(i + 1, k + 1).real();
  return (1 - tx) * (1 - tp) * v00 + tx * (1 - tp) * v10 + (1 - tx) * tp * v01 + tx * tp * v11;
}

/// Max |W(S_hat psi)(z) - W psi(S^{-1} z)| over grid nodes whose preimage
/// S^{-1} z stays inside the reference grid hull, with W psi read off by
/// bilinear interpolation.
inline double metaplectic_covariance_discrepancy(const SampledWavefunction& psi,
                                                 const MetaplecticGenerator& gen) {
  const PhaseSpaceGrid reference = wigner_transform(psi);
  const PhaseSpaceGrid mapped = wigner_transform(metaplectic_apply(psi, gen));
  const Eigen::Matrix2d s_inv = metaplectic_matrix(gen).inverse();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < mapped.x_axis.count; ++i) {
    for (Eigen::Index k = 0; k < mapped.p_axis.count; ++k) {
      const Eigen::Vector2d z(mapped.x_axis.coord(i), mapped.p_axis.coord(k));
      const Eigen::Vector2d pre = s_inv * z;
      const double fi = (pre(0) - reference.x_axis.origin) / reference.x_axis.step;
      const double fk = (pre(1) - reference.p_axis.origin) / reference.p_axis.step;
      if (fi < 0 || fk < 0 || fi > double(reference.x_axis.count - 1) ||
          fk > double(reference.p_axis.count - 1))
        continue;
      const double diff =
          std::abs(mapped.values(i, k).real() - bilinear_value(reference, pre(0), pre(1)));
      worst = std::max(worst, diff);
    }
  }
  return worst;
}

}  // namespace sympcap
