#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "helpers.hpp"
#include "sympcap/stft.hpp"
#include "states.hpp"

using namespace sympcap;

namespace {

/// Unit-norm Gaussian window of the 2 pi convention, 2^{1/4} e^{-pi t^2}.
SampledWavefunction pi_gaussian(const SampledWavefunction& grid) {
  SampledWavefunction f = grid;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double t = grid.coord(j);
    f.values(j) = std::pow(2.0, 0.25) * std::exp(-M_PI * t * t);
  }
  return f;
}

SampledWavefunction random_state(std::mt19937_64& rng, const SampledWavefunction& grid) {
  SampledWavefunction psi = grid;
  for (Eigen::Index j = 0; j < psi.size(); ++j)
    psi.values(j) = std::complex<double>(testutil::normal(rng), testutil::normal(rng));
  psi.values /= psi.norm();
  return psi;
}

}  // namespace

TEST_CASE("stft: value at the origin is the inner product") {
  std::mt19937_64 rng(401);
  const auto grid = make_grid(256, 8.0, 1.0);
  const auto f = random_state(rng, grid);
  const auto g = random_state(rng, grid);
  const auto v = stft(f, g);
  std::complex<double> inner(0.0, 0.0);
  for (Eigen::Index j = 0; j < grid.size(); ++j)
    inner += f.values(j) * std::conj(g.values(j));
  inner *= grid.dx;
  CHECK(std::abs(v.values(grid.size() / 2, grid.size() / 2) - inner) <= 1e-8);
}

TEST_CASE("stft: gaussian auto-transform modulus") {
  const auto grid = make_grid(256, 8.0, 1.0);
  const auto f = pi_gaussian(grid);
  const auto v = stft(f, f);
  double worst = 0.0;
  for (Eigen::Index s = 0; s < v.x_axis.count; ++s) {
    const double x = v.x_axis.coord(s);
    for (Eigen::Index k = 0; k < v.p_axis.count; ++k) {
      const double xi = v.p_axis.coord(k);
      const double expected = std::exp(-M_PI * (x * x + xi * xi) / 2.0);
      worst = std::max(worst, std::abs(std::abs(v.values(s, k)) - expected));
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("stft: cauchy-schwarz bound on random pairs") {
  std::mt19937_64 rng(409);
  const auto grid = make_grid(128, 6.0, 1.0);
  for (int it = 0; it < 5; ++it) {
    const auto f = random_state(rng, grid);
    const auto g = random_state(rng, grid);
    const auto v = stft(f, g);
    CHECK(v.values.cwiseAbs().maxCoeff() <= f.norm() * g.norm() + 1e-10);
  }
}

TEST_CASE("stft: grid mismatch rejected") {
  const auto grid = make_grid(128, 6.0, 1.0);
  auto other = make_grid(128, 7.0, 1.0);
  CHECK_THROWS_AS(stft(pi_gaussian(grid), pi_gaussian(other)), ValidationError);
}

TEST_CASE("wigner relation: coherent state confirms the rescaling constants") {
  const double hbar = 1.0;
  const auto grid = make_grid(256, 8.0 * std::sqrt(hbar), hbar);
  const auto psi = testutil::coherent_state(grid);
  const auto rel = stft_wigner_relation_check(psi, psi);
  CHECK(rel.max_discrepancy <= 1e-5);
  CHECK(rel.measured_constant == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("wigner relation: hbar away from one") {
  const double hbar = 0.37;
  const auto grid = make_grid(256, 8.0 * std::sqrt(hbar), hbar);
  const auto psi = testutil::coherent_state(grid);
  const auto rel = stft_wigner_relation_check(psi, psi);
  CHECK(rel.max_discrepancy <= 1e-5 / hbar);  // scales with the Wigner peak 1/(pi hbar)
  CHECK(rel.measured_constant == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("wigner relation: invariant under a global phase") {
  const auto grid = make_grid(256, 8.0, 1.0);
  const auto psi = testutil::coherent_state(grid);
  SampledWavefunction rotated = psi;
  rotated.values *= std::polar(1.0, 0.83);
  const auto base = stft_wigner_relation_check(psi, psi);
  const auto turned = stft_wigner_relation_check(rotated, rotated);
  CHECK(std::abs(base.max_discrepancy - turned.max_discrepancy) <= 1e-12);
}

TEST_CASE("wigner relation: discrepancy is linear in the amplitude") {
  const auto grid = make_grid(256, 8.0, 1.0);
  const auto h1 = [&] {
    SampledWavefunction s = grid;
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      const double x = grid.coord(j);
      s.values(j) = std::sqrt(2.0) * x * std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
    }
    return s;
  }();
  const auto psi = testutil::coherent_state(grid);
  SampledWavefunction doubled = psi;
  doubled.values *= 2.0;
  const auto base = stft_wigner_relation_check(psi, h1);
  const auto scaled = stft_wigner_relation_check(doubled, h1);
  CHECK(std::abs(scaled.max_discrepancy - 2.0 * base.max_discrepancy) <= 1e-12);
}
