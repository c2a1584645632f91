#pragma once

// Device configuration file: a JSON tree with the dispersion, geometry, pump
// and spectral-window sections. Wavelengths are given in nm, the grating
// period in um, everything else in SI.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coupledpdc/dispersion.hpp"
#include "coupledpdc/observables.hpp"
#include "coupledpdc/pdc_state.hpp"

namespace cpdc {

enum class ConfigErrorCode { io, parse, missing_key, invalid_value };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorCode code, std::string key, const std::string& message)
      : std::runtime_error(message), code_(code), key_(std::move(key)) {}

  ConfigErrorCode code() const { return code_; }
  const std::string& key() const { return key_; }

 private:
  ConfigErrorCode code_;
  std::string key_;
};

struct BandSection {
  double reference_wavelength_nm = 0;
  std::vector<double> coefficients;

  bool operator==(const BandSection&) const = default;
};

struct DispersionSection {
  BandSection pump_band;
  BandSection generated_band;
  double coupling_C = 0;          // 1/m
  double grating_period_um = 0;
  int grating_order = 1;

  bool operator==(const DispersionSection&) const = default;
};

struct PumpSection {
  double central_wavelength_nm = 0;
  double bandwidth_fwhm_nm = 0;
  double amplitude_scale = 1;

  bool operator==(const PumpSection&) const = default;
};

struct GridSection {
  long points_signal = 401;
  long points_idler = 401;
  double filter_bandwidth_nm = 50;

  bool operator==(const GridSection&) const = default;
};

struct DeviceConfig {
  DispersionSection dispersion;
  double length_m = 0;
  PumpSection pump;
  PumpConfiguration pump_configuration = PumpConfiguration::single_waveguide_1;
  GridSection grid;

  bool operator==(const DeviceConfig&) const = default;
};

/// Coupled PPLN directional coupler: C = 358 1/m, L = 11 mm, 16.6 um poling,
/// degenerate 759.7 nm -> 1519.4 + 1519.4 nm phase matching of the S/A band.
DeviceConfig default_config();

DeviceConfig load_config(const std::filesystem::path& path);
DeviceConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const DeviceConfig& config);
void validate(const DeviceConfig& config);

DispersionModel<double> dispersion_model(const DeviceConfig& config);
/// Envelope centered at `wavelength_nm`; the width is the configured FWHM
/// converted at the configured central wavelength.
PumpEnvelope<double> pump_envelope(const DeviceConfig& config, double wavelength_nm);
PumpEnvelope<double> pump_envelope(const DeviceConfig& config);
GridPolicy grid_policy(const DeviceConfig& config);

const char* to_string(PumpConfiguration config);
PumpConfiguration pump_configuration_from_string(const std::string& name);

}  // namespace cpdc
