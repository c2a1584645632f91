#include "coupledpdc/export.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <stdexcept>

#ifndef COUPLEDPDC_VERSION
#define COUPLEDPDC_VERSION "0.0.0"
#endif

namespace cpdc {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, res.ptr};
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  return out;
}

}  // namespace

void write_matrix_csv(const std::filesystem::path& path, const Eigen::ArrayXXd& values) {
  auto out = open_output(path);
  std::string line;
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) line += ',';
      line += format_number(values(r, c));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_scan_csv(const std::filesystem::path& path, const ScanResult& scan) {
  auto out = open_output(path);
  out << "parameter,r1,r2,r12,fidelity\n";
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const auto& r = scan.rates[k];
    out << format_number(scan.parameter[k]) << ',' << format_number(r.r1) << ',' << format_number(r.r2) << ','
        << format_number(r.r12) << ',' << format_number(scan.fidelity[k]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json scan_to_json(const ScanResult& scan, const DeviceConfig& config) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const auto& r = scan.rates[k];
    nlohmann::json p = {{"parameter", scan.parameter[k]}, {"r1", r.r1},   {"r2", r.r2},
                        {"r12", r.r12},                   {"fidelity", scan.fidelity[k]}};
    if (k < scan.pair_rate.size()) p["pair_rate"] = scan.pair_rate[k];
    points.push_back(std::move(p));
  }
  return {{"parameter_name", scan.parameter_name},
          {"tool_version", tool_version()},
          {"config", to_json(config)},
          {"points", std::move(points)},
          {"warnings", scan.warnings}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json RunManifest::to_json() const {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return {{"command", command}, {"tool_version", tool_version()}, {"timestamp", stamp}, {"config", config},
          {"outputs", outputs}, {"warnings", warnings},           {"report", report}};
}

std::string tool_version() { return COUPLEDPDC_VERSION; }

}  // namespace cpdc
