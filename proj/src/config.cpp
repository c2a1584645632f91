#include "coupledpdc/config.hpp"

#include <fstream>
#include <sstream>

#include "coupledpdc/units.hpp"

namespace cpdc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(ConfigErrorCode code, const std::string& key, const std::string& what) {
  throw ConfigError(code, key, key.empty() ? what : "'" + key + "': " + what);
}

const json& require(const json& node, const std::string& parent, const char* name) {
  const std::string key = parent.empty() ? name : parent + "." + name;
  if (!node.is_object()) fail(ConfigErrorCode::invalid_value, parent, "expected an object");
  const auto it = node.find(name);
  if (it == node.end()) fail(ConfigErrorCode::missing_key, key, "missing required key");
  return *it;
}

std::string join(const std::string& parent, const char* name) { return parent.empty() ? name : parent + "." + name; }

double number(const json& node, const std::string& parent, const char* name) {
  const json& v = require(node, parent, name);
  if (!v.is_number()) fail(ConfigErrorCode::invalid_value, join(parent, name), "expected a number");
  return v.get<double>();
}

long integer(const json& node, const std::string& parent, const char* name) {
  const json& v = require(node, parent, name);
  if (!v.is_number_integer()) fail(ConfigErrorCode::invalid_value, join(parent, name), "expected an integer");
  return v.get<long>();
}

BandSection parse_band(const json& node, const std::string& key) {
  BandSection band;
  band.reference_wavelength_nm = number(node, key, "reference_wavelength_nm");
  const json& coeffs = require(node, key, "coefficients");
  if (!coeffs.is_array()) fail(ConfigErrorCode::invalid_value, key + ".coefficients", "expected an array");
  for (const auto& c : coeffs) {
    if (!c.is_number()) fail(ConfigErrorCode::invalid_value, key + ".coefficients", "expected numbers");
    band.coefficients.push_back(c.get<double>());
  }
  return band;
}

json band_to_json(const BandSection& band) {
  return {{"reference_wavelength_nm", band.reference_wavelength_nm}, {"coefficients", band.coefficients}};
}

void check_positive(double value, const std::string& key) {
  if (!(value > 0)) fail(ConfigErrorCode::invalid_value, key, "must be positive, got " + std::to_string(value));
}

void validate_band(const BandSection& band, const std::string& key) {
  check_positive(band.reference_wavelength_nm, key + ".reference_wavelength_nm");
  if (band.coefficients.empty()) fail(ConfigErrorCode::invalid_value, key + ".coefficients", "must not be empty");
  check_positive(band.coefficients.front(), key + ".coefficients[0]");
}

BandPolynomial<double> band_polynomial(const BandSection& band) {
  return {wavelength_nm_to_omega(band.reference_wavelength_nm), band.coefficients};
}

}  // namespace

const char* to_string(PumpConfiguration config) {
  switch (config) {
    case PumpConfiguration::symmetric: return "symmetric";
    case PumpConfiguration::antisymmetric: return "antisymmetric";
    case PumpConfiguration::single_waveguide_1: return "single_waveguide_1";
    case PumpConfiguration::single_waveguide_2: return "single_waveguide_2";
  }
  return "unknown";
}

PumpConfiguration pump_configuration_from_string(const std::string& name) {
  for (auto c : {PumpConfiguration::symmetric, PumpConfiguration::antisymmetric,
                 PumpConfiguration::single_waveguide_1, PumpConfiguration::single_waveguide_2}) {
    if (name == to_string(c)) return c;
  }
  fail(ConfigErrorCode::invalid_value, "pump_configuration", "unknown pump configuration '" + name + "'");
}

DeviceConfig default_config() {
  DeviceConfig cfg;
  // Generated band: n = 2.1383, group index 2.21 at 1519.4 nm.
  cfg.dispersion.generated_band = {1519.4, {8842526.74894176, 7.37176650387916e-09, 7.0e-25}};
  // Pump band: constant term chosen so Delta beta_SA vanishes at 759.7 nm
  // with first-order poling; group index 2.33.
  cfg.dispersion.pump_band = {759.7, {18063558.636870243, 7.772043418116944e-09, 1.75e-25}};
  cfg.dispersion.coupling_C = 358.0;
  cfg.dispersion.grating_period_um = 16.6;
  cfg.dispersion.grating_order = 1;
  cfg.length_m = 0.011;
  cfg.pump = {759.7, 0.2, 1.0};
  cfg.pump_configuration = PumpConfiguration::single_waveguide_1;
  cfg.grid = {401, 401, 50.0};
  return cfg;
}

void validate(const DeviceConfig& cfg) {
  validate_band(cfg.dispersion.pump_band, "dispersion.pump_band");
  validate_band(cfg.dispersion.generated_band, "dispersion.generated_band");
  if (!(cfg.dispersion.coupling_C >= 0))
    fail(ConfigErrorCode::invalid_value, "dispersion.coupling_C", "must be non-negative");
  check_positive(cfg.dispersion.grating_period_um, "dispersion.grating_period_um");
  if (cfg.dispersion.grating_order < 1)
    fail(ConfigErrorCode::invalid_value, "dispersion.grating_order", "must be >= 1");
  check_positive(cfg.length_m, "length_m");
  check_positive(cfg.pump.central_wavelength_nm, "pump.central_wavelength_nm");
  check_positive(cfg.pump.bandwidth_fwhm_nm, "pump.bandwidth_fwhm_nm");
  check_positive(cfg.pump.amplitude_scale, "pump.amplitude_scale");
  if (cfg.grid.points_signal < 2) fail(ConfigErrorCode::invalid_value, "grid.points_signal", "must be >= 2");
  if (cfg.grid.points_idler < 2) fail(ConfigErrorCode::invalid_value, "grid.points_idler", "must be >= 2");
  check_positive(cfg.grid.filter_bandwidth_nm, "grid.filter_bandwidth_nm");
}

DeviceConfig parse_config(const json& doc) {
  DeviceConfig cfg;
  const json& disp = require(doc, "", "dispersion");
  cfg.dispersion.pump_band = parse_band(require(disp, "dispersion", "pump_band"), "dispersion.pump_band");
  cfg.dispersion.generated_band =
      parse_band(require(disp, "dispersion", "generated_band"), "dispersion.generated_band");
  cfg.dispersion.coupling_C = number(disp, "dispersion", "coupling_C");
  cfg.dispersion.grating_period_um = number(disp, "dispersion", "grating_period_um");
  cfg.dispersion.grating_order = static_cast<int>(integer(disp, "dispersion", "grating_order"));

  cfg.length_m = number(doc, "", "length_m");

  const json& pump = require(doc, "", "pump");
  cfg.pump.central_wavelength_nm = number(pump, "pump", "central_wavelength_nm");
  cfg.pump.bandwidth_fwhm_nm = number(pump, "pump", "bandwidth_fwhm_nm");
  if (pump.contains("amplitude_scale")) cfg.pump.amplitude_scale = number(pump, "pump", "amplitude_scale");

  const json& mode = require(doc, "", "pump_configuration");
  if (!mode.is_string()) fail(ConfigErrorCode::invalid_value, "pump_configuration", "expected a string");
  cfg.pump_configuration = pump_configuration_from_string(mode.get<std::string>());

  const json& grid = require(doc, "", "grid");
  cfg.grid.points_signal = integer(grid, "grid", "points_signal");
  cfg.grid.points_idler = integer(grid, "grid", "points_idler");
  cfg.grid.filter_bandwidth_nm = number(grid, "grid", "filter_bandwidth_nm");

  validate(cfg);
  return cfg;
}

DeviceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ConfigErrorCode::io, "", "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    fail(ConfigErrorCode::parse, "", "cannot parse " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const DeviceConfig& cfg) {
  return {
      {"dispersion",
       {{"pump_band", band_to_json(cfg.dispersion.pump_band)},
        {"generated_band", band_to_json(cfg.dispersion.generated_band)},
        {"coupling_C", cfg.dispersion.coupling_C},
        {"grating_period_um", cfg.dispersion.grating_period_um},
        {"grating_order", cfg.dispersion.grating_order}}},
      {"length_m", cfg.length_m},
      {"pump",
       {{"central_wavelength_nm", cfg.pump.central_wavelength_nm},
        {"bandwidth_fwhm_nm", cfg.pump.bandwidth_fwhm_nm},
        {"amplitude_scale", cfg.pump.amplitude_scale}}},
      {"pump_configuration", to_string(cfg.pump_configuration)},
      {"grid",
       {{"points_signal", cfg.grid.points_signal},
        {"points_idler", cfg.grid.points_idler},
        {"filter_bandwidth_nm", cfg.grid.filter_bandwidth_nm}}},
  };
}

DispersionModel<double> dispersion_model(const DeviceConfig& cfg) {
  DispersionModel<double> model;
  model.pump_band = band_polynomial(cfg.dispersion.pump_band);
  model.generated_band = band_polynomial(cfg.dispersion.generated_band);
  model.coupling_C = cfg.dispersion.coupling_C;
  model.grating_period = cfg.dispersion.grating_period_um * 1e-6;
  model.grating_order = cfg.dispersion.grating_order;
  model.validate();
  return model;
}

PumpEnvelope<double> pump_envelope(const DeviceConfig& cfg, double wavelength_nm) {
  const double fwhm = wavelength_width_to_omega_width(cfg.pump.bandwidth_fwhm_nm, cfg.pump.central_wavelength_nm);
  return {wavelength_nm_to_omega(wavelength_nm), fwhm_to_sigma(fwhm), cfg.pump.amplitude_scale};
}

PumpEnvelope<double> pump_envelope(const DeviceConfig& cfg) {
  return pump_envelope(cfg, cfg.pump.central_wavelength_nm);
}

GridPolicy grid_policy(const DeviceConfig& cfg) {
  return {cfg.grid.points_signal, cfg.grid.points_idler, cfg.grid.filter_bandwidth_nm};
}

}  // namespace cpdc
