// Batch front end: subcommands map one-to-one onto library operations and
// print a machine-readable JSON report. Negative mathematical verdicts are
// successful runs (exit 0); exit 2 flags validation problems, exit 3 flags
// numerical failures.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sympcap/admissibility.hpp"
#include "sympcap/hardy.hpp"
#include "sympcap/io.hpp"
#include "sympcap/stft.hpp"
#include "sympcap/wigner.hpp"
#include "sympcap/williamson.hpp"

namespace {

using sympcap::io::Json;

struct GlobalFlags {
  std::optional<double> hbar;
  std::optional<double> tol;
  std::optional<long long> seed;
  std::string out;
  std::optional<Eigen::Index> grid;
};

std::string verdict_name(sympcap::GaussianVerdict v) {
  switch (v) {
    case sympcap::GaussianVerdict::PureBlob: return "PureBlob";
    case sympcap::GaussianVerdict::AdmissibleMixed: return "AdmissibleMixed";
    case sympcap::GaussianVerdict::NotAState: return "NotAState";
  }
  return "?";
}

std::string verdict_name(sympcap::StateVerdict v) {
  return v == sympcap::StateVerdict::NotAState ? "NotAState" : "Inconclusive";
}

std::string verdict_name(sympcap::HardyTag t) {
  switch (t) {
    case sympcap::HardyTag::UniqueGaussian: return "UniqueGaussian";
    case sympcap::HardyTag::OnlyZero: return "OnlyZero";
    case sympcap::HardyTag::NonEmpty: return "NonEmpty";
  }
  return "?";
}

Json flags_json(const GlobalFlags& g) {
  Json flags = Json::object();
  if (g.hbar) flags["hbar"] = *g.hbar;
  if (g.tol) flags["tol"] = *g.tol;
  if (g.seed) flags["seed"] = *g.seed;
  if (!g.out.empty()) flags["out"] = g.out;
  if (g.grid) flags["grid"] = *g.grid;
  return flags;
}

Json base_report(const std::string& command, const std::vector<std::string>& files,
                 const GlobalFlags& g) {
  Json report = Json::object();
  report["command"] = command;
  Json inputs = Json::object();
  Json file_list = Json::array();
  for (const auto& f : files) file_list.push_back(f);
  inputs["files"] = std::move(file_list);
  inputs["flags"] = flags_json(g);
  report["inputs"] = std::move(inputs);
  report["warnings"] = Json::array();
  return report;
}

void deliver(const Json& report, const GlobalFlags& g) {
  const std::string text = report.dump() + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.out);
    if (!out) throw sympcap::ValidationError("cannot write report to " + g.out);
    out << text;
  }
}

Json bool_grid(const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& checks) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < checks.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < checks.cols(); ++c) row.push_back(bool(checks(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"Phase-space uncertainty toolkit: Williamson forms, symplectic "
               "capacities, admissibility and Hardy-envelope verdicts"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--hbar", g.hbar, "override hbar from input files")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "tolerance override for verdicts")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed echoed into the report (reserved)");
  app.add_option("--out", g.out, "write the report to a file instead of stdout");
  app.add_option("--grid", g.grid, "grid size echoed into the report (reserved)")
      ->check(CLI::PositiveNumber);

  auto add_sub = [&app](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->fallthrough();  // global flags may follow the subcommand arguments
    return sub;
  };

  std::string file_a, file_b, emit_path, matrix_path;
  double opt_a = 0.0, opt_b = 0.0, opt_cx = 0.0, opt_cp = 0.0, opt_radius = 0.0;

  auto* spectrum = add_sub("spectrum", "symplectic spectrum of a PD matrix");
  spectrum->add_option("file", file_a, "matrix JSON")->required();

  auto* williamson = add_sub("williamson", "Williamson normal form");
  williamson->add_option("file", file_a, "matrix JSON")->required();

  auto* capacity = add_sub("capacity", "symplectic capacity of an ellipsoid");
  capacity->add_option("file", file_a, "matrix JSON (optional \"level\", default 1)")->required();

  auto* admissible = add_sub("admissible", "covariance admissibility verdicts");
  admissible->add_option("file", file_a, "covariance matrix JSON")->required();

  auto* classify = add_sub("classify", "classify a phase-space gaussian by its form");
  classify->add_option("file", file_a, "matrix JSON")->required();

  auto* blob = add_sub("blob", "quantum-blob test for the ellipsoid M z . z <= hbar");
  blob->add_option("file", file_a, "matrix JSON")->required();

  auto* wigner = add_sub("wigner", "Wigner transform of a sampled wavefunction");
  wigner->add_option("file", file_a, "wavefunction CSV")->required();
  wigner->add_option("--emit", emit_path, "write the grid CSV (+.meta.json sidecar)");

  auto* marginals_cmd = add_sub("marginals", "position/momentum marginals");
  marginals_cmd->add_option("file", file_a, "wavefunction CSV")->required();

  auto* average = add_sub("average", "phase-space average of a symbol");
  average->add_option("rho", file_a, "distribution grid CSV")->required();
  average->add_option("symbol", file_b, "symbol grid CSV")->required();

  auto* hardy_fit = add_sub("hardy-fit", "fit a Hardy envelope to a wavefunction");
  hardy_fit->add_option("file", file_a, "wavefunction CSV")->required();

  auto* hardy_check = add_sub("hardy-check", "check envelope bounds and classify");
  hardy_check->add_option("file", file_a, "wavefunction CSV")->required();
  hardy_check->add_option("--a", opt_a, "position-side rate")->required();
  hardy_check->add_option("--b", opt_b, "momentum-side rate")->required();
  hardy_check->add_option("--cx", opt_cx, "position-side constant (default max |psi|)");
  hardy_check->add_option("--cp", opt_cp, "momentum-side constant (default max |F psi|)");

  auto* majorant = add_sub("majorant", "gaussian-majorant state verdict");
  majorant->add_option("rho", file_a, "distribution grid CSV")->required();
  majorant->add_option("--matrix", matrix_path, "majorant form JSON (default: isotropic fit)");

  auto* compact = add_sub("compact-support", "compact-support state verdict");
  compact->add_option("rho", file_a, "distribution grid CSV")->required();
  compact->add_option("--radius", opt_radius, "support radius")->required()
      ->check(CLI::PositiveNumber);

  auto* stft_cmd = add_sub("stft", "short-time Fourier transform (2 pi convention)");
  stft_cmd->add_option("signal", file_a, "signal CSV")->required();
  stft_cmd->add_option("window", file_b, "window CSV")->required();
  stft_cmd->add_option("--emit", emit_path, "write the modulus grid CSV");

  auto* relation = add_sub("relation-check", "Wigner vs STFT rescaling identity");
  relation->add_option("psi", file_a, "wavefunction CSV")->required();
  relation->add_option("phi", file_b, "wavefunction CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json report = Json::object();
    report["command"] = "";
    Json err = Json::object();
    err["code"] = "cli";
    err["message"] = std::string(e.what());
    report["error"] = std::move(err);
    std::cout << report.dump() << "\n";
    return 2;
  }

  auto load_state = [&](const std::string& path) {
    sympcap::SampledWavefunction psi = sympcap::io::read_wavefunction_csv(path);
    if (g.hbar) psi.hbar = *g.hbar;
    return psi;
  };
  auto load_grid = [&](const std::string& path) {
    sympcap::PhaseSpaceGrid grid = sympcap::io::read_grid_csv(path);
    if (g.hbar) grid.hbar = *g.hbar;
    return grid;
  };

  if (spectrum->parsed()) {
    const auto mf = sympcap::io::read_matrix_file(file_a);
    Json report = base_report("spectrum", {file_a}, g);
    Json results = Json::object();
    results["n"] = mf.n;
    results["spectrum"] = Json::from_vector(sympcap::symplectic_spectrum(mf.entries));
    report["results"] = std::move(results);
    report["tolerances"] = Json::object();
    deliver(report, g);
  } else if (williamson->parsed()) {
    const auto mf = sympcap::io::read_matrix_file(file_a);
    const auto w = sympcap::williamson_decompose(mf.entries);
    Json report = base_report("williamson", {file_a}, g);
    Json results = Json::object();
    results["S"] = Json::from_matrix(w.S);
    results["spectrum"] = Json::from_vector(w.spectrum);
    results["residual"] = w.residual;
    results["is_symplectic"] = sympcap::is_symplectic(w.S, 1e-9);
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["symplectic_tol"] = 1e-9;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (capacity->parsed()) {
    const auto mf = sympcap::io::read_matrix_file(file_a);
    const sympcap::Ellipsoid e{mf.entries, mf.level};
    Json report = base_report("capacity", {file_a}, g);
    Json results = Json::object();
    results["capacity"] = sympcap::ellipsoid_capacity(e);
    results["level"] = mf.level;
    results["spectrum"] = Json::from_vector(sympcap::symplectic_spectrum(mf.entries));
    report["results"] = std::move(results);
    report["tolerances"] = Json::object();
    deliver(report, g);
  } else if (admissible->parsed()) {
    const auto mf = sympcap::io::read_matrix_file(file_a);
    const sympcap::CovarianceMatrix cov{mf.entries, g.hbar.value_or(mf.hbar)};
    const double tol = g.tol.value_or(1e-9);
    const auto v = sympcap::admissible_capacity(cov, tol);
    Json report = base_report("admissible", {file_a}, g);
    Json results = Json::object();
    results["hermitian_psd"] = v.hermitian_psd;
    results["capacity"] = v.capacity;
    results["capacity_ok"] = v.capacity_ok;
    results["min_symplectic_eigenvalue"] = v.min_symplectic_eigenvalue;
    results["margin"] = v.margin;
    results["equivalent"] = v.equivalent;
    results["half_h"] = M_PI * cov.hbar;
    results["robertson_schrodinger"] = bool_grid(sympcap::robertson_schrodinger_check(cov));
    results["shortest_orbit_action"] = sympcap::shortest_orbit_action(cov);
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["capacity_tol"] = tol;
    tols["hbar"] = cov.hbar;
    tols["psd_tol"] = 1e-10;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (classify->parsed()) {
    const auto mf = sympcap::io::read_matrix_file(file_a);
    const double hbar = g.hbar.value_or(mf.hbar);
    const double tol = g.tol.value_or(1e-8);
    const auto gaussian =
        sympcap::gaussian_wigner(mf.entries, sympcap::Vector::Zero(2 * mf.n), hbar);
    const auto c = sympcap::classify_gaussian(gaussian, tol);
    Json report = base_report("classify", {file_a}, g);
    Json results = Json::object();
    results["verdict"] = verdict_name(c.verdict);
    results["spectrum"] = Json::from_vector(c.spectrum);
    results["capacity"] = c.capacity;
    results["amplitude"] = gaussian.amplitude;
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["classification_tol"] = tol;
    tols["hbar"] = hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (blob->parsed()) {
    const auto mf = sympcap::io::read_matrix_file(file_a);
    const double hbar = g.hbar.value_or(mf.hbar);
    const double tol = g.tol.value_or(1e-8);
    const auto v = sympcap::is_quantum_blob({mf.entries, hbar}, tol);
    Json report = base_report("blob", {file_a}, g);
    Json results = Json::object();
    results["is_blob"] = v.is_blob;
    results["spectrum"] = Json::from_vector(v.spectrum);
    results["witness"] = Json::from_matrix(v.witness);
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["blob_tol"] = tol;
    tols["hbar"] = hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (wigner->parsed()) {
    const auto psi = load_state(file_a);
    const auto w = sympcap::wigner_transform(psi);
    Json report = base_report("wigner", {file_a}, g);
    Json results = Json::object();
    results["mass"] = w.values.real().sum() * w.cell_area();
    results["max_imag_residue"] = w.values.imag().cwiseAbs().maxCoeff();
    results["nx"] = w.x_axis.count;
    results["np"] = w.p_axis.count;
    results["x0"] = w.x_axis.origin;
    results["dx"] = w.x_axis.step;
    results["p0"] = w.p_axis.origin;
    results["dp"] = w.p_axis.step;
    if (!emit_path.empty()) {
      sympcap::io::write_grid_csv(emit_path, w, "re");
      results["emitted"] = emit_path;
    }
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["hbar"] = psi.hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (marginals_cmd->parsed()) {
    const auto psi = load_state(file_a);
    const auto w = sympcap::wigner_transform(psi);
    const auto m = sympcap::marginals(w);
    Json report = base_report("marginals", {file_a}, g);
    Json results = Json::object();
    Json xs = Json::array(), ps = Json::array();
    for (Eigen::Index j = 0; j < w.x_axis.count; ++j) xs.push_back(w.x_axis.coord(j));
    for (Eigen::Index k = 0; k < w.p_axis.count; ++k) ps.push_back(w.p_axis.coord(k));
    results["x"] = std::move(xs);
    results["position_density"] = Json::from_vector(m.position_density);
    results["p"] = std::move(ps);
    results["momentum_density"] = Json::from_vector(m.momentum_density);
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["hbar"] = psi.hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (average->parsed()) {
    const auto rho = load_grid(file_a);
    const auto symbol = load_grid(file_b);
    Json report = base_report("average", {file_a, file_b}, g);
    Json results = Json::object();
    results["value"] = sympcap::phase_space_average(rho, symbol);
    report["results"] = std::move(results);
    report["tolerances"] = Json::object();
    deliver(report, g);
  } else if (hardy_fit->parsed()) {
    const auto psi = load_state(file_a);
    const auto env = sympcap::envelope_fit_wavefunction(psi);
    Json report = base_report("hardy-fit", {file_a}, g);
    Json results = Json::object();
    results["C_X"] = env.C_X;
    results["a"] = env.a;
    results["C_P"] = env.C_P;
    results["b"] = env.b;
    results["product"] = env.a * env.b;
    // The verdict band for *fitted* rates defaults to the fit accuracy
    // (1e-6), not the exact-parameter band of hardy-check.
    const double fit_tol = g.tol.value_or(1e-6);
    results["verdict"] = (env.a > 0 && env.b > 0)
                             ? verdict_name(sympcap::hardy_classify(env.a, env.b, fit_tol).tag)
                             : verdict_name(sympcap::HardyTag::NonEmpty);
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["classification_tol"] = fit_tol;
    tols["hbar"] = psi.hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (hardy_check->parsed()) {
    const auto psi = load_state(file_a);
    sympcap::HardyEnvelope env;
    env.a = opt_a;
    env.b = opt_b;
    env.hbar = psi.hbar;
    env.C_X = hardy_check->count("--cx") ? opt_cx : psi.values.cwiseAbs().maxCoeff();
    env.C_P = hardy_check->count("--cp")
                  ? opt_cp
                  : sympcap::fourier_transform(psi).values.cwiseAbs().maxCoeff();
    const auto check = sympcap::hardy_check_state(psi, env);
    Json report = base_report("hardy-check", {file_a}, g);
    Json results = Json::object();
    results["holds"] = check.holds;
    results["verdict"] = verdict_name(check.verdict.tag);
    results["product"] = check.verdict.product;
    results["x_violation"] = check.x_violation;
    results["p_violation"] = check.p_violation;
    results["C_X"] = env.C_X;
    results["C_P"] = env.C_P;
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["slack"] = 1e-12;
    tols["hbar"] = psi.hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (majorant->parsed()) {
    const auto rho = load_grid(file_a);
    sympcap::MajorantCertificate cert;
    std::vector<std::string> files{file_a};
    if (!matrix_path.empty()) {
      const auto mf = sympcap::io::read_matrix_file(matrix_path);
      files.push_back(matrix_path);
      cert = sympcap::majorant_verdict(rho, mf.entries);
    } else {
      cert = sympcap::majorant_verdict(rho);
    }
    Json report = base_report("majorant", files, g);
    Json results = Json::object();
    results["verdict"] = verdict_name(cert.verdict);
    results["C"] = cert.C;
    results["capacity"] = cert.capacity;
    results["half_h"] = M_PI * rho.hbar;
    results["max_violation"] = cert.max_violation;
    results["M"] = Json::from_matrix(cert.M);
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["capacity_tol"] = 1e-9;
    tols["hbar"] = rho.hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (compact->parsed()) {
    const auto rho = load_grid(file_a);
    const auto cert = sympcap::compact_support_verdict(rho, opt_radius);
    Json report = base_report("compact-support", {file_a}, g);
    Json results = Json::object();
    results["verdict"] = verdict_name(cert.verdict);
    results["C"] = cert.C;
    results["capacity"] = cert.capacity;
    results["half_h"] = M_PI * rho.hbar;
    results["max_violation"] = cert.max_violation;
    results["M"] = Json::from_matrix(cert.M);
    results["support_radius"] = opt_radius;
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["support_tol"] = 1e-14;
    tols["hbar"] = rho.hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  } else if (stft_cmd->parsed()) {
    const auto f = load_state(file_a);
    const auto window = load_state(file_b);
    const auto v = sympcap::stft(f, window);
    Json report = base_report("stft", {file_a, file_b}, g);
    Json results = Json::object();
    results["max_modulus"] = v.values.cwiseAbs().maxCoeff();
    results["frame_bound"] = f.norm() * window.norm();
    results["nx"] = v.x_axis.count;
    results["nxi"] = v.p_axis.count;
    results["x0"] = v.x_axis.origin;
    results["dx"] = v.x_axis.step;
    results["xi0"] = v.p_axis.origin;
    results["dxi"] = v.p_axis.step;
    if (!emit_path.empty()) {
      sympcap::io::write_grid_csv(emit_path, v, "abs");
      results["emitted"] = emit_path;
    }
    report["results"] = std::move(results);
    report["tolerances"] = Json::object();
    deliver(report, g);
  } else if (relation->parsed()) {
    const auto psi = load_state(file_a);
    const auto phi = load_state(file_b);
    const auto rel = sympcap::stft_wigner_relation_check(psi, phi);
    Json report = base_report("relation-check", {file_a, file_b}, g);
    Json results = Json::object();
    results["max_discrepancy"] = rel.max_discrepancy;
    results["measured_constant"] = rel.measured_constant;
    if (std::abs(rel.measured_constant - 1.0) > 1e-6) {
      Json warnings = Json::array();
      warnings.push_back("measured modulus constant deviates from 1 by " +
                         sympcap::io::format_double(rel.measured_constant - 1.0));
      report["warnings"] = std::move(warnings);
    }
    report["results"] = std::move(results);
    Json tols = Json::object();
    tols["hbar"] = psi.hbar;
    report["tolerances"] = std::move(tols);
    deliver(report, g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sympcap::ValidationError& e) {
    Json report = Json::object();
    Json err = Json::object();
    err["code"] = "validation";
    err["message"] = std::string(e.what());
    report["error"] = std::move(err);
    std::cout << report.dump() << "\n";
    return 2;
  } catch (const sympcap::NumericalError& e) {
    Json report = Json::object();
    Json err = Json::object();
    err["code"] = "numerical";
    err["message"] = std::string(e.what());
    report["error"] = std::move(err);
    std::cout << report.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    Json report = Json::object();
    Json err = Json::object();
    err["code"] = "internal";
    err["message"] = std::string(e.what());
    report["error"] = std::move(err);
    std::cout << report.dump() << "\n";
    return 3;
  }
}
