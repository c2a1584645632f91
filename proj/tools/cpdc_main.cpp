// cpdc: command-line driver for the coupled-waveguide PDC simulator.
//
//   cpdc jsa         --config dev.cfg --out-dir out/
//   cpdc pump-scan   --config dev.cfg --out-dir out/ --lambda-min 756 --lambda-max 762 --points 121
//   cpdc phase-scan  --config dev.cfg --out-dir out/ --points 64 [--source ideal|device]
//   cpdc verify      --out-dir out/
//
// Exit codes: 0 ok, 1 runtime/I-O error, 2 config error, 3 warnings under
// --strict, 4 oracle failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "coupledpdc/basis_transforms.hpp"
#include "coupledpdc/config.hpp"
#include "coupledpdc/export.hpp"
#include "coupledpdc/observables.hpp"
#include "coupledpdc/oracles.hpp"
#include "coupledpdc/pdc_state.hpp"
#include "coupledpdc/units.hpp"

namespace fs = std::filesystem;
using namespace cpdc;

namespace {

enum ExitCode { ok = 0, runtime_error = 1, config_error = 2, strict_warning = 3, oracle_failure = 4 };

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  bool strict = false;
};

DeviceConfig load(const CommonOptions& opts) {
  return opts.config_path.empty() ? default_config() : load_config(opts.config_path);
}

fs::path prepare_out_dir(const CommonOptions& opts) {
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  return dir;
}

int finish(const CommonOptions& opts, const fs::path& dir, RunManifest& manifest) {
  manifest.outputs.push_back((dir / "manifest.json").string());
  write_json(dir / "manifest.json", manifest.to_json());
  for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << '\n';
  return (opts.strict && !manifest.warnings.empty()) ? strict_warning : ok;
}

Eigen::ArrayXXd probability_density(const AmplitudeSlice<double>& slice) { return slice.abs2(); }

int run_jsa(const CommonOptions& opts) {
  const DeviceConfig cfg = load(opts);
  const fs::path dir = prepare_out_dir(opts);
  const auto model = dispersion_model(cfg);
  const auto env = pump_envelope(cfg);
  const auto grid = grid_policy(cfg).make_grid(env.central_frequency);
  const auto state = assemble_eigen_state(model, env, cfg.pump_configuration, grid, cfg.length_m);
  const auto wg = eigen_to_waveguide(state);

  RunManifest manifest{"jsa", to_json(cfg), {}, state.warnings, {}};
  const auto emit = [&](const std::string& name, const AmplitudeSlice<double>& slice) {
    const fs::path path = dir / name;
    write_matrix_csv(path, probability_density(slice));
    manifest.outputs.push_back(path.string());
  };
  for (EigenLabel m : eigen_labels)
    for (EigenLabel n : eigen_labels)
      emit(std::string("jsa_") + to_string(m) + to_string(n) + ".csv", state.slice(m, n));
  for (Waveguide j : {Waveguide::one, Waveguide::two})
    for (Waveguide k : {Waveguide::one, Waveguide::two})
      emit("wg_" + std::to_string(int(j) + 1) + std::to_string(int(k) + 1) + ".csv", wg.slice(j, k));

  {
    const fs::path path = dir / "jsa_axes.csv";
    std::ofstream out(path, std::ios::binary);
    out << "index,signal_omega,signal_nm,idler_omega,idler_nm\n";
    const Eigen::Index n = std::max(grid.signal.size(), grid.idler.size());
    for (Eigen::Index k = 0; k < n; ++k) {
      out << k << ',';
      if (k < grid.signal.size())
        out << format_number(grid.signal(k)) << ',' << format_number(omega_to_wavelength_nm(grid.signal(k)));
      else
        out << ',';
      out << ',';
      if (k < grid.idler.size())
        out << format_number(grid.idler(k)) << ',' << format_number(omega_to_wavelength_nm(grid.idler(k)));
      else
        out << ',';
      out << '\n';
    }
    manifest.outputs.push_back(path.string());
  }

  Eigen::Index ps = 0, pi = 0;
  state.slice(EigenLabel::S, EigenLabel::A).abs2().maxCoeff(&ps, &pi);
  const auto rates = coincidence_rates(wg);
  manifest.report = {{"sa_peak_signal_nm", omega_to_wavelength_nm(grid.signal(ps))},
                     {"sa_peak_idler_nm", omega_to_wavelength_nm(grid.idler(pi))},
                     {"norm_constant", state.norm_constant},
                     {"r1", rates.r1},
                     {"r2", rates.r2},
                     {"r12", rates.r12},
                     {"fidelity", rate_fidelity(rates)}};
  return finish(opts, dir, manifest);
}

int run_pump_scan(const CommonOptions& opts, double lambda_min, double lambda_max, int points) {
  const DeviceConfig cfg = load(opts);
  const fs::path dir = prepare_out_dir(opts);
  const auto model = dispersion_model(cfg);

  std::vector<double> wavelengths(points);
  for (int k = 0; k < points; ++k)
    wavelengths[k] = lambda_min + (lambda_max - lambda_min) * static_cast<double>(k) / (points - 1);

  const auto scan =
      pump_scan(model, pump_envelope(cfg), cfg.pump_configuration, grid_policy(cfg), cfg.length_m, wavelengths);
  write_scan_csv(dir / "pump_scan.csv", scan);
  write_json(dir / "pump_scan.json", scan_to_json(scan, cfg));

  RunManifest manifest{"pump-scan", to_json(cfg), {(dir / "pump_scan.csv").string(), (dir / "pump_scan.json").string()},
                       scan.warnings, {}};
  const std::size_t kmin = scan.argmin_r12();
  const auto kbest = static_cast<std::size_t>(std::max_element(scan.fidelity.begin(), scan.fidelity.end()) -
                                              scan.fidelity.begin());
  manifest.report = {{"min_r12_wavelength_nm", scan.parameter[kmin]},
                     {"min_r12", scan.rates[kmin].r12},
                     {"fidelity_at_min_r12", scan.fidelity[kmin]},
                     {"max_fidelity", scan.fidelity[kbest]},
                     {"max_fidelity_wavelength_nm", scan.parameter[kbest]}};
  std::cout << "min r12 at " << format_number(scan.parameter[kmin]) << " nm, fidelity "
            << format_number(scan.fidelity[kmin]) << '\n';
  return finish(opts, dir, manifest);
}

int run_phase_scan(const CommonOptions& opts, int points, const std::string& source) {
  const DeviceConfig cfg = load(opts);
  const fs::path dir = prepare_out_dir(opts);
  const auto model = dispersion_model(cfg);
  const auto env = pump_envelope(cfg);
  const auto grid = grid_policy(cfg).make_grid(env.central_frequency);
  const auto pumping = source == "ideal" ? PumpConfiguration::antisymmetric : cfg.pump_configuration;
  const auto state = assemble_eigen_state(model, env, pumping, grid, cfg.length_m);
  const auto wg = eigen_to_waveguide(state);

  std::vector<double> phases(points);
  for (int k = 0; k < points; ++k) phases[k] = 2.0 * std::numbers::pi * k / points;
  const auto scan = phase_scan(wg, phases);
  const auto noon = scan.r12_trace();
  const auto classical = classical_reference_scan(phases);

  const fs::path csv = dir / "phase_scan.csv";
  {
    std::ofstream out(csv, std::ios::binary);
    out << "phase,noon_rate,classical_rate\n";
    for (int k = 0; k < points; ++k)
      out << format_number(phases[k]) << ',' << format_number(noon[k]) << ',' << format_number(classical[k]) << '\n';
    if (!out) throw std::runtime_error("write failed: " + csv.string());
  }

  RunManifest manifest{"phase-scan", to_json(cfg), {csv.string()}, state.warnings, {}};
  manifest.report = {{"source", source},
                     {"noon_period_rad", dominant_period(noon)},
                     {"classical_period_rad", dominant_period(classical)},
                     {"noon_visibility", visibility(noon)},
                     {"classical_visibility", visibility(classical)},
                     {"noon_harmonics", {harmonic_magnitude(noon, 1), harmonic_magnitude(noon, 2)}},
                     {"classical_harmonics", {harmonic_magnitude(classical, 1), harmonic_magnitude(classical, 2)}}};
  return finish(opts, dir, manifest);
}

int run_verify(const CommonOptions& opts) {
  const fs::path dir = prepare_out_dir(opts);
  const auto reports = run_oracles();
  nlohmann::json doc = nlohmann::json::array();
  bool all = true;
  for (const auto& r : reports) {
    doc.push_back({{"name", r.name}, {"max_abs_error", r.max_abs_error}, {"tolerance", r.tolerance}, {"passed", r.passed}});
    all = all && r.passed;
  }
  write_json(dir / "oracles.json", doc);
  std::cout << doc.dump(2) << '\n';
  return all ? ok : oracle_failure;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Device config file (default: built-in device profile)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", opts.out_dir, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled-waveguide PDC / NOON-state simulator"};
  app.require_subcommand(1);
  CommonOptions opts;
  app.add_flag("--strict", opts.strict, "Exit nonzero when physics-validation warnings are raised");

  auto* jsa = app.add_subcommand("jsa", "Write supermode and waveguide |JSA|^2 matrices");
  add_common(jsa, opts);

  double lambda_min = 756.0, lambda_max = 762.0;
  int scan_points = 121;
  auto* pump = app.add_subcommand("pump-scan", "Coincidence rates versus pump wavelength");
  add_common(pump, opts);
  pump->add_option("--lambda-min", lambda_min, "First pump wavelength, nm")->capture_default_str();
  pump->add_option("--lambda-max", lambda_max, "Last pump wavelength, nm")->capture_default_str();
  pump->add_option("--points", scan_points, "Number of scan points")->check(CLI::Range(2, 1000000))->capture_default_str();

  int phase_points = 64;
  std::string source = "ideal";
  auto* phase = app.add_subcommand("phase-scan", "Two-photon interference fringe versus phase");
  add_common(phase, opts);
  phase->add_option("--points", phase_points, "Samples over [0, 2 pi)")->check(CLI::Range(8, 1000000))->capture_default_str();
  phase->add_option("--source", source, "ideal: central band only; device: configured pumping")
      ->check(CLI::IsMember({"ideal", "device"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the brute-force oracle checks");
  add_common(verify, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*jsa) return run_jsa(opts);
    if (*pump) return run_pump_scan(opts, lambda_min, lambda_max, scan_points);
    if (*phase) return run_phase_scan(opts, phase_points, source);
    if (*verify) return run_verify(opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return runtime_error;
  }
  return ok;
}
