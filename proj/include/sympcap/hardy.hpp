#pragma once

// Hardy's uncertainty principle as computation: classify Gaussian envelope
// pairs (a, b) by the product ab, fit envelopes to sampled states, build
// Hermite witnesses for the sub-critical region, and turn Gaussian majorants
// of phase-space distributions into state / not-a-state verdicts via the
// capacity of the majorant ellipsoid.

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "sympcap/grid.hpp"
#include "sympcap/types.hpp"
#include "sympcap/wigner.hpp"
#include "sympcap/williamson.hpp"

namespace sympcap {

enum class HardyTag { UniqueGaussian, OnlyZero, NonEmpty };

struct HardyVerdict {
  HardyTag tag = HardyTag::NonEmpty;
  double product = 0.0;  ///< ab
};

/// Gaussian pointwise bounds |psi| <= C_X e^{-a x^2 / 2 hbar} and
/// |F psi| <= C_P e^{-b p^2 / 2 hbar}. Constants are positive; a fitted rate
/// may be zero (constant bound) when the state peaks away from the origin,
/// so no Gaussian decay is certified with the tight constant.
struct HardyEnvelope {
  double C_X = 1.0;
  double a = 1.0;
  double C_P = 1.0;
  double b = 1.0;
  double hbar = 1.0;
};

inline HardyVerdict hardy_classify(double a, double b, double tol = 1e-9) {
  if (!(a > 0) || !(b > 0)) throw ValidationError("hardy_classify: rates must be positive");
  HardyVerdict v;
  v.product = a * b;
  if (std::abs(v.product - 1.0) <= tol)
    v.tag = HardyTag::UniqueGaussian;
  else if (v.product > 1.0)
    v.tag = HardyTag::OnlyZero;
  else
    v.tag = HardyTag::NonEmpty;
  return v;
}

/// k-th L2-normalized Hermite function of x sqrt(a / hbar), k <= 12, via the
/// normalized three-term recurrence (bounded terms, no overflow).
inline SampledWavefunction hermite_function(int k, double a, const SampledWavefunction& grid) {
  validate(grid, "hermite_function");
  if (k < 0 || k > 12)
    throw ValidationError("hermite_function: order must lie in [0, 12] (recurrence budget)");
  if (!(a > 0)) throw ValidationError("hermite_function: scale must be positive");
  SampledWavefunction out = grid;
  const double root = std::sqrt(a / grid.hbar);
  const double amp = std::pow(a / grid.hbar, 0.25);  // unit L2 norm after the change of variable
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double u = grid.coord(j) * root;
    double h_prev = 0.0;
    double h = std::exp(-0.5 * u * u) / std::pow(M_PI, 0.25);
    for (int m = 1; m <= k; ++m) {
      const double h_next = u * std::sqrt(2.0 / m) * h - std::sqrt(double(m - 1) / m) * h_prev;
      h_prev = h;
      h = h_next;
    }
    out.values(j) = amp * h;
  }
  return out;
}

/// Tightest Gaussian envelope pair satisfied by |psi| and |F psi| on the
/// grid. Rates come from the log-ratio -2 hbar ln(|psi| / c) / x^2 over
/// points clear of the origin (|x| > 3 dx) and of the amplitude cutoff
/// 1e-9 c; the fit touches the state at its arg-min. The cutoff keeps the
/// rate clear of the double-precision quadrature noise floor of the
/// transformed side (amplitudes near 1e-13 c carry ~1e-3 relative noise,
/// which a lower cutoff would feed straight into the fitted rate).
inline HardyEnvelope envelope_fit_wavefunction(const SampledWavefunction& psi) {
  validate(psi, "envelope_fit_wavefunction");
  const auto fit_side = [](const SampledWavefunction& f, double& c_out) {
    const Vector mags = f.values.cwiseAbs();
    const double c = mags.maxCoeff();
    if (c <= 0) throw ValidationError("envelope_fit_wavefunction: input is identically zero");
    c_out = c;
    double rate = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      const double x = f.coord(j);
      if (std::abs(x) <= 3.0 * f.dx) continue;
      if (mags(j) <= 1e-9 * c) continue;
      rate = std::min(rate, -2.0 * f.hbar * std::log(mags(j) / c) / (x * x));
    }
    if (!std::isfinite(rate))
      throw ValidationError("envelope_fit_wavefunction: no usable samples away from the origin");
    return std::max(rate, 0.0);  // exactly 0 when the state peaks off-origin
  };

  HardyEnvelope env;
  env.hbar = psi.hbar;
  env.a = fit_side(psi, env.C_X);
  env.b = fit_side(fourier_transform(psi), env.C_P);
  return env;
}

struct HardyCheck {
  bool holds = false;
  HardyVerdict verdict;
  double x_violation = 0.0;  ///< worst |psi| - envelope excess (0 when none)
  double p_violation = 0.0;
};

/// Pointwise envelope test (1e-12 slack relative to the constants) plus the
/// trichotomy verdict for the envelope rates.
inline HardyCheck hardy_check_state(const SampledWavefunction& psi, const HardyEnvelope& env) {
  validate(psi, "hardy_check_state");
  if (!(env.C_X > 0) || !(env.C_P > 0) || !(env.a >= 0) || !(env.b >= 0))
    throw ValidationError("hardy_check_state: envelope constants must be positive");
  const auto side = [](const SampledWavefunction& f, double c, double rate) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      const double x = f.coord(j);
      const double bound = c * std::exp(-rate * x * x / (2.0 * f.hbar));
      worst = std::max(worst, std::abs(f.values(j)) - bound);
    }
    return worst;
  };
  HardyCheck out;
  out.x_violation = std::max(0.0, side(psi, env.C_X, env.a));
  out.p_violation = std::max(0.0, side(fourier_transform(psi), env.C_P, env.b));
  out.holds = out.x_violation <= 1e-12 * env.C_X && out.p_violation <= 1e-12 * env.C_P;
  // A degenerate (zero-rate) side certifies no decay: ab = 0 < 1.
  out.verdict = (env.a > 0 && env.b > 0) ? hardy_classify(env.a, env.b, 1e-9)
                                         : HardyVerdict{HardyTag::NonEmpty, 0.0};
  return out;
}

enum class StateVerdict { NotAState, Inconclusive };

struct MajorantCertificate {
  Matrix M;
  double C = 0.0;
  double max_violation = 0.0;  ///< most negative slack of C e^{-Mz.z/hbar} - rho
  double capacity = 0.0;       ///< of B_M : M z . z <= hbar
  StateVerdict verdict = StateVerdict::Inconclusive;
};

namespace detail {

inline double grid_max_real(const PhaseSpaceGrid& rho) {
  return rho.values.real().maxCoeff();
}

/// Certificate with a fixed constant: records the most negative slack of
/// C e^{-M z . z / hbar} - rho and applies the strict capacity test
/// c(B_M) < h/2.
inline MajorantCertificate certify_with(const PhaseSpaceGrid& rho, const Matrix& m, double c) {
  MajorantCertificate cert;
  cert.M = m;
  cert.C = c;
  double violation = 0.0;
  Vector z(2);
  for (Eigen::Index i = 0; i < rho.x_axis.count; ++i) {
    z(0) = rho.x_axis.coord(i);
    for (Eigen::Index k = 0; k < rho.p_axis.count; ++k) {
      z(1) = rho.p_axis.coord(k);
      const double bound = cert.C * std::exp(-z.dot(m * z) / rho.hbar);
      violation = std::min(violation, bound - rho.values(i, k).real());
    }
  }
  cert.max_violation = violation;
  cert.capacity = ellipsoid_capacity({m, rho.hbar});
  const double half_h = M_PI * rho.hbar;
  cert.verdict = cert.capacity < half_h * (1.0 - 1e-9) ? StateVerdict::NotAState
                                                       : StateVerdict::Inconclusive;
  return cert;
}

/// Certificate for a given quadratic form: C is the smallest constant with
/// rho <= C e^{-M z . z / hbar} on the grid (computed in log space).
inline MajorantCertificate certify(const PhaseSpaceGrid& rho, const Matrix& m) {
  double log_c = -std::numeric_limits<double>::infinity();
  Vector z(2);
  for (Eigen::Index i = 0; i < rho.x_axis.count; ++i) {
    z(0) = rho.x_axis.coord(i);
    for (Eigen::Index k = 0; k < rho.p_axis.count; ++k) {
      z(1) = rho.p_axis.coord(k);
      const double value = rho.values(i, k).real();
      if (value <= 0) continue;
      log_c = std::max(log_c, std::log(value) + z.dot(m * z) / rho.hbar);
    }
  }
  const double c = std::exp(log_c);
  if (!std::isfinite(c))
    throw ValidationError(
        "majorant_verdict: the tightest constant for this form overflows double precision "
        "(log C = " +
        std::to_string(log_c) + "); the distribution's tails are not compatible with it");
  return certify_with(rho, m, c);
}

}  // namespace detail

/// Verdict for a supplied majorant form M.
inline MajorantCertificate majorant_verdict(const PhaseSpaceGrid& rho, const Matrix& m) {
  require_square_even(m, "majorant_verdict");
  if (m.rows() != 2) throw ValidationError("majorant_verdict: grid route requires one mode");
  if (!(detail::grid_max_real(rho) > 0))
    throw ValidationError("majorant_verdict: distribution maximum must be positive");
  detail::require_spd(m, "majorant_verdict");
  return detail::certify(rho, m);
}

/// Verdict with an isotropic fit M = lambda* I and C = max rho. lambda* is
/// the rate infimum over points clear of the origin (|z| > 3 spacings) and
/// of the amplitude cutoff 1e-13 max rho; grid noise near the cutoff can
/// only pull the fitted rate down, which weakens the majorant and never
/// produces a spurious rejection.
inline MajorantCertificate majorant_verdict(const PhaseSpaceGrid& rho) {
  const double max_rho = detail::grid_max_real(rho);
  if (!(max_rho > 0))
    throw ValidationError("majorant_verdict: distribution maximum must be positive");
  const double spacing = std::max(rho.x_axis.step, rho.p_axis.step);
  double lambda = std::numeric_limits<double>::infinity();
  Vector z(2);
  for (Eigen::Index i = 0; i < rho.x_axis.count; ++i) {
    z(0) = rho.x_axis.coord(i);
    for (Eigen::Index k = 0; k < rho.p_axis.count; ++k) {
      z(1) = rho.p_axis.coord(k);
      const double r2 = z.squaredNorm();
      const double value = rho.values(i, k).real();
      if (r2 <= 9.0 * spacing * spacing) continue;
      if (value <= 1e-13 * max_rho) continue;
      lambda = std::min(lambda, -rho.hbar * std::log(value / max_rho) / r2);
    }
  }
  if (!std::isfinite(lambda))
    throw ValidationError("majorant_verdict: no usable samples for the isotropic fit");
  return detail::certify_with(rho, lambda * Matrix::Identity(2, 2), max_rho);
}

/// Compactly supported distributions are never Wigner distributions: the
/// explicit certificate M = 2I, C = max(rho) e^{2 R^2 / hbar} applies and
/// its ellipsoid has capacity h/4 < h/2. Rejects inputs with mass outside
/// |z| <= R.
inline MajorantCertificate compact_support_verdict(const PhaseSpaceGrid& rho,
                                                   double support_radius) {
  const double max_rho = detail::grid_max_real(rho);
  if (!(max_rho > 0))
    throw ValidationError("compact_support_verdict: distribution maximum must be positive");
  if (!(support_radius > 0))
    throw ValidationError("compact_support_verdict: support radius must be positive");
  Vector z(2);
  for (Eigen::Index i = 0; i < rho.x_axis.count; ++i) {
    z(0) = rho.x_axis.coord(i);
    for (Eigen::Index k = 0; k < rho.p_axis.count; ++k) {
      z(1) = rho.p_axis.coord(k);
      if (z.norm() <= support_radius) continue;
      if (std::abs(rho.values(i, k).real()) > 1e-14 * max_rho)
        throw ValidationError("compact_support_verdict: mass outside the support at (x, p) = (" +
                              std::to_string(z(0)) + ", " + std::to_string(z(1)) + ")");
    }
  }
  MajorantCertificate cert;
  cert.M = 2.0 * Matrix::Identity(2, 2);
  cert.C = max_rho * std::exp(2.0 * support_radius * support_radius / rho.hbar);
  if (!std::isfinite(cert.C))
    throw ValidationError(
        "compact_support_verdict: certificate constant overflows double precision for this "
        "support radius");
  double violation = 0.0;
  for (Eigen::Index i = 0; i < rho.x_axis.count; ++i) {
    z(0) = rho.x_axis.coord(i);
    for (Eigen::Index k = 0; k < rho.p_axis.count; ++k) {
      z(1) = rho.p_axis.coord(k);
      const double bound = cert.C * std::exp(-2.0 * z.squaredNorm() / rho.hbar);
      violation = std::min(violation, bound - rho.values(i, k).real());
    }
  }
  cert.max_violation = violation;
  cert.capacity = ellipsoid_capacity({cert.M, rho.hbar});
  cert.verdict = StateVerdict::NotAState;
  return cert;
}

}  // namespace sympcap
