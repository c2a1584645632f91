#include "coupledpdc/observables.hpp"

#include <algorithm>
#include <exception>
#include <numbers>

#include "coupledpdc/units.hpp"

namespace cpdc {

double rate_fidelity(const CoincidenceRates& rates) {
  const double denominator = rates.r1 + rates.r2 + rates.r12;
  if (denominator == 0.0) throw std::domain_error("fidelity undefined: all coincidence rates are zero");
  return (rates.r1 + rates.r2 - rates.r12) / denominator;
}

CoincidenceRates fiber_splitter_estimate(const CoincidenceRates& rates) {
  // Half of the pairs in one waveguide leave the fiber splitter through the
  // same port and never produce a coincidence.
  const double registered_1 = 0.5 * rates.r1;
  const double registered_2 = 0.5 * rates.r2;
  return {2.0 * registered_1, 2.0 * registered_2, rates.r12};
}

double visibility(std::span<const double> trace) {
  if (trace.empty()) throw std::invalid_argument("visibility of an empty trace");
  const auto [lo, hi] = std::minmax_element(trace.begin(), trace.end());
  if (*lo < 0) throw std::invalid_argument("visibility needs a non-negative trace");
  if (*hi + *lo == 0.0) throw std::domain_error("visibility undefined for an all-zero trace");
  return (*hi - *lo) / (*hi + *lo);
}

std::vector<double> ScanResult::r12_trace() const {
  std::vector<double> out;
  out.reserve(rates.size());
  for (const auto& r : rates) out.push_back(r.r12);
  return out;
}

std::size_t ScanResult::argmin_r12() const {
  const auto trace = r12_trace();
  return static_cast<std::size_t>(std::min_element(trace.begin(), trace.end()) - trace.begin());
}

FrequencyGrid<double> GridPolicy::make_grid(double pump_omega) const {
  if (!(filter_bandwidth_nm > 0)) throw std::invalid_argument("filter bandwidth must be positive");
  const double center = 0.5 * pump_omega;
  const double half = wavelength_width_to_omega_width(0.5 * filter_bandwidth_nm, omega_to_wavelength_nm(center));
  return FrequencyGrid<double>::centered(center, half, points_signal, center, half, points_idler);
}

namespace {

void require_monotonic(std::span<const double> axis) {
  if (axis.empty()) throw std::invalid_argument("scan axis is empty");
  if (axis.size() < 2) return;
  const bool increasing = axis[1] > axis[0];
  for (std::size_t k = 1; k < axis.size(); ++k) {
    if (increasing ? !(axis[k] > axis[k - 1]) : !(axis[k] < axis[k - 1]))
      throw std::invalid_argument("scan axis must be strictly monotonic");
  }
}

}  // namespace

ScanResult pump_scan(const DispersionModel<double>& model, const PumpEnvelope<double>& envelope_template,
                     const ExcitationAmplitudes<double>& weights, const GridPolicy& grid_policy, double length,
                     std::span<const double> wavelengths_nm) {
  require_monotonic(wavelengths_nm);
  const std::size_t n = wavelengths_nm.size();

  ScanResult scan;
  scan.parameter_name = "pump_wavelength_nm";
  scan.parameter.assign(wavelengths_nm.begin(), wavelengths_nm.end());
  scan.rates.resize(n);
  scan.fidelity.resize(n);
  scan.pair_rate.resize(n);
  std::vector<std::vector<std::string>> warnings(n);
  std::vector<std::exception_ptr> errors(n);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    try {
      PumpEnvelope<double> env = envelope_template;
      env.central_frequency = wavelength_nm_to_omega(wavelengths_nm[k]);
      const auto state =
          assemble_eigen_state(model, env, weights, grid_policy.make_grid(env.central_frequency), length);
      const auto rates = coincidence_rates(eigen_to_waveguide(state));
      scan.rates[k] = rates;
      scan.fidelity[k] = rate_fidelity(rates);
      scan.pair_rate[k] = state.norm_constant;
      for (const auto& w : state.warnings)
        warnings[k].push_back("pump " + std::to_string(wavelengths_nm[k]) + " nm: " + w);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& w : warnings) scan.warnings.insert(scan.warnings.end(), w.begin(), w.end());
  return scan;
}

ScanResult pump_scan(const DispersionModel<double>& model, const PumpEnvelope<double>& envelope_template,
                     PumpConfiguration config, const GridPolicy& grid_policy, double length,
                     std::span<const double> wavelengths_nm) {
  return pump_scan(model, envelope_template, excitation_amplitudes<double>(config), grid_policy, length,
                   wavelengths_nm);
}

ScanResult phase_scan(const WaveguideJSA<double>& state, std::span<const double> phases) {
  if (phases.empty()) throw std::invalid_argument("phase scan needs at least one phase");
  const std::size_t n = phases.size();
  ScanResult scan;
  scan.parameter_name = "phase_rad";
  scan.parameter.assign(phases.begin(), phases.end());
  scan.rates.resize(n);
  scan.fidelity.resize(n);

#pragma omp parallel for
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    scan.rates[k] = coincidence_rates(apply_two_mode_unitary(state, splitter_with_phase(phases[k])));
    scan.fidelity[k] = rate_fidelity(scan.rates[k]);
  }
  return scan;
}

std::vector<double> classical_reference_scan(std::span<const double> phases) {
  const double h = 1.0 / std::numbers::sqrt2;
  const Eigen::Vector2cd photon(h, h);
  std::vector<double> out;
  out.reserve(phases.size());
  for (double phi : phases) out.push_back(std::norm((splitter_with_phase(phi).entries() * photon)(0)));
  return out;
}

double harmonic_magnitude(std::span<const double> samples, int harmonic) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  const double n = static_cast<double>(samples.size());
  std::complex<double> acc{0, 0};
  for (std::size_t k = 0; k < samples.size(); ++k)
    acc += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * harmonic * static_cast<double>(k) / n);
  return std::abs(acc) / n;
}

double dominant_period(std::span<const double> samples) {
  if (samples.size() < 4) throw std::invalid_argument("need at least 4 samples to find a period");
  int best = 1;
  double best_mag = -1;
  for (int h = 1; h <= static_cast<int>(samples.size() / 2); ++h) {
    const double mag = harmonic_magnitude(samples, h);
    if (mag > best_mag * (1 + 1e-9)) {
      best = h;
      best_mag = mag;
    }
  }
  return 2.0 * std::numbers::pi / best;
}

double degenerate_phase_matching_wavelength(const DispersionModel<double>& model, EigenLabel m, EigenLabel n,
                                            double lo_nm, double hi_nm) {
  const auto mismatch = [&](double nm) {
    const double half = 0.5 * wavelength_nm_to_omega(nm);
    return delta_beta(model, m, n, half, half);
  };
  double f_lo = mismatch(lo_nm);
  const double f_hi = mismatch(hi_nm);
  if (f_lo * f_hi > 0) throw std::domain_error("no phase-matching root in the wavelength bracket");
  for (int it = 0; it < 200 && hi_nm - lo_nm > 1e-13; ++it) {
    const double mid = 0.5 * (lo_nm + hi_nm);
    const double f_mid = mismatch(mid);
    if ((f_mid <= 0) == (f_lo <= 0)) {
      lo_nm = mid;
      f_lo = f_mid;
    } else {
      hi_nm = mid;
    }
  }
  return 0.5 * (lo_nm + hi_nm);
}

}  // namespace cpdc
