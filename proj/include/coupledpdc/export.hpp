#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "coupledpdc/config.hpp"
#include "coupledpdc/observables.hpp"
#include "coupledpdc/pdc_state.hpp"

namespace cpdc {

/// 12 significant digits, '.' separator, independent of the C locale.
std::string format_number(double value);

void write_matrix_csv(const std::filesystem::path& path, const Eigen::ArrayXXd& values);

/// Columns: parameter, r1, r2, r12, fidelity.
void write_scan_csv(const std::filesystem::path& path, const ScanResult& scan);

/// Scan document with the full device configuration echoed.
nlohmann::json scan_to_json(const ScanResult& scan, const DeviceConfig& config);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  nlohmann::json report;

  nlohmann::json to_json() const;
};

std::string tool_version();

}  // namespace cpdc
