#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coupledpdc/basis_transforms.hpp"
#include "coupledpdc/dispersion.hpp"
#include "coupledpdc/pdc_state.hpp"

namespace cpdc {

/// Two-photon detection probabilities in the waveguide basis.
struct CoincidenceRates {
  double r1 = 0;   // both photons in waveguide 1
  double r2 = 0;   // both photons in waveguide 2
  double r12 = 0;  // one photon in each waveguide, both orderings

  double total() const { return r1 + r2 + r12; }
};

struct RateOptions {
  bool renormalize = false;
  double normalization_tolerance = 1e-9;
};

template <typename Scalar>
CoincidenceRates coincidence_rates(const WaveguideJSA<Scalar>& state, RateOptions options = {}) {
  const Scalar area = state.grid.cell_area();
  const auto mass = [&](Waveguide j, Waveguide k) { return double(state.slice(j, k).abs2().sum() * area); };
  CoincidenceRates rates{mass(Waveguide::one, Waveguide::one), mass(Waveguide::two, Waveguide::two),
                         mass(Waveguide::one, Waveguide::two) + mass(Waveguide::two, Waveguide::one)};
  const double total = rates.total();
  if (std::abs(total - 1.0) > options.normalization_tolerance) {
    if (!options.renormalize || !(total > 0))
      throw std::domain_error("two-photon state is not normalized (total probability " + std::to_string(total) + ")");
    rates.r1 /= total;
    rates.r2 /= total;
    rates.r12 /= total;
  }
  return rates;
}

/// Rate-based NOON fidelity (R1 + R2 - R12) / (R1 + R2 + R12).
double rate_fidelity(const CoincidenceRates& rates);

/// Reproduces the experimental single-waveguide estimator: a fiber 50:50
/// splitter after waveguide j registers only half of the |2,0> pairs as
/// coincidences, which the analysis multiplies back by 2.
CoincidenceRates fiber_splitter_estimate(const CoincidenceRates& rates);

/// (max - min) / (max + min) of a non-negative trace.
double visibility(std::span<const double> trace);

struct ScanResult {
  std::string parameter_name;  // "pump_wavelength_nm" or "phase_rad"
  std::vector<double> parameter;
  std::vector<CoincidenceRates> rates;
  std::vector<double> fidelity;
  std::vector<double> pair_rate;  // relative generation probability (norm constant), pump scans only
  std::vector<std::string> warnings;

  std::size_t size() const { return parameter.size(); }
  std::vector<double> r12_trace() const;
  std::size_t argmin_r12() const;
};

/// Spectral window policy: a square grid centered on the degenerate point
/// omega_p / 2 of the current pump, spanning `filter_bandwidth_nm` around
/// the degenerate wavelength.
struct GridPolicy {
  Eigen::Index points_signal = 401;
  Eigen::Index points_idler = 401;
  double filter_bandwidth_nm = 50.0;

  FrequencyGrid<double> make_grid(double pump_omega) const;
};

/// For each pump wavelength: recenter the envelope, assemble, transform to
/// the waveguide basis, reduce to rates. Points are independent.
ScanResult pump_scan(const DispersionModel<double>& model, const PumpEnvelope<double>& envelope_template,
                     const ExcitationAmplitudes<double>& weights, const GridPolicy& grid_policy, double length,
                     std::span<const double> wavelengths_nm);

ScanResult pump_scan(const DispersionModel<double>& model, const PumpEnvelope<double>& envelope_template,
                     PumpConfiguration config, const GridPolicy& grid_policy, double length,
                     std::span<const double> wavelengths_nm);

/// Two-photon interferometer: splitter_with_phase(phi) on the state, rates per phase.
ScanResult phase_scan(const WaveguideJSA<double>& state, std::span<const double> phases);

/// Single photon in (b1 + b2)/sqrt2 through the same interferometer;
/// returns the output-port-1 probability per phase.
std::vector<double> classical_reference_scan(std::span<const double> phases);

/// |DFT| at harmonic k of samples taken uniformly over one 2 pi period.
double harmonic_magnitude(std::span<const double> samples, int harmonic);

/// Period 2 pi / k of the dominant non-DC harmonic.
double dominant_period(std::span<const double> samples);

/// Pump wavelength (nm) where Delta beta_MN vanishes at the degenerate
/// point omega_s = omega_i = omega_p / 2. Bisection on [lo_nm, hi_nm].
double degenerate_phase_matching_wavelength(const DispersionModel<double>& model, EigenLabel m, EigenLabel n,
                                            double lo_nm, double hi_nm);

}  // namespace cpdc
