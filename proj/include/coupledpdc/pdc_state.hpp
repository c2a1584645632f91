#pragma once

// Two-photon joint spectral amplitude of the coupled PDC source in the
// supermode basis. Four slices (SS, SA, AS, AA) on a uniform (omega_s, omega_i)
// grid, each pump envelope x phase-matching x excitation weight.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "coupledpdc/dispersion.hpp"

namespace cpdc {

template <typename Scalar>
using Axis = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// One |amplitude| slice, rows = signal index, cols = idler index.
template <typename Scalar>
using AmplitudeSlice = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Four slices indexed [2 * first + second] over a two-mode label pair.
template <typename Scalar>
using PairTensor = std::array<AmplitudeSlice<Scalar>, 4>;

template <typename Scalar>
struct FrequencyGrid {
  Axis<Scalar> signal;  // rad/s
  Axis<Scalar> idler;   // rad/s

  static FrequencyGrid centered(Scalar signal_center, Scalar signal_half_span, Eigen::Index signal_points,
                                Scalar idler_center, Scalar idler_half_span, Eigen::Index idler_points) {
    if (signal_points < 2 || idler_points < 2) throw std::invalid_argument("frequency grid needs >= 2 points per axis");
    FrequencyGrid grid;
    grid.signal = Axis<Scalar>::LinSpaced(signal_points, signal_center - signal_half_span,
                                          signal_center + signal_half_span);
    grid.idler =
        Axis<Scalar>::LinSpaced(idler_points, idler_center - idler_half_span, idler_center + idler_half_span);
    grid.validate();
    return grid;
  }

  Scalar signal_step() const { return (signal(signal.size() - 1) - signal(0)) / Scalar(signal.size() - 1); }
  Scalar idler_step() const { return (idler(idler.size() - 1) - idler(0)) / Scalar(idler.size() - 1); }
  Scalar cell_area() const { return signal_step() * idler_step(); }

  bool is_square() const { return signal.size() == idler.size() && (signal == idler).all(); }

  void validate() const {
    check_axis(signal, "signal");
    check_axis(idler, "idler");
  }

 private:
  static void check_axis(const Axis<Scalar>& axis, const char* name) {
    if (axis.size() < 2) throw std::invalid_argument(std::string(name) + " axis needs >= 2 points");
    if (!(axis(0) > Scalar(0))) throw std::invalid_argument(std::string(name) + " axis must be positive");
    const Scalar step = (axis(axis.size() - 1) - axis(0)) / Scalar(axis.size() - 1);
    if (!(step > Scalar(0))) throw std::invalid_argument(std::string(name) + " axis must be strictly increasing");
    for (Eigen::Index k = 1; k < axis.size(); ++k) {
      const Scalar d = axis(k) - axis(k - 1);
      // Spacing is compared relative to the absolute frequency: LinSpaced
      // rounding is ~1 ulp of omega, not of the step.
      if (!(d > Scalar(0)) || std::abs(d - step) > Scalar(1e-12) * std::abs(axis(k)) + Scalar(1e-12) * step)
        throw std::invalid_argument(std::string(name) + " axis must be uniformly spaced");
    }
  }
};

template <typename Scalar>
struct PumpEnvelope {
  Scalar central_frequency{};  // rad/s
  Scalar spectral_std{};       // rad/s
  Scalar amplitude_scale{1};
};

enum class PumpConfiguration { symmetric, antisymmetric, single_waveguide_1, single_waveguide_2 };

template <typename Scalar>
struct ExcitationAmplitudes {
  std::complex<Scalar> gamma;  // symmetric supermode
  std::complex<Scalar> delta;  // antisymmetric supermode
};

/// sinc(x) e^{-ix} with x = delta_beta * length / 2.
template <typename Scalar>
std::complex<Scalar> phase_matching(Scalar delta_beta, Scalar length) {
  if (!(length > Scalar(0))) throw std::invalid_argument("interaction length must be positive");
  const Scalar x = delta_beta * length / Scalar(2);
  const Scalar sinc = std::abs(x) < Scalar(1e-4) ? Scalar(1) - x * x / Scalar(6) : std::sin(x) / x;
  return std::polar(sinc, -x);
}

template <typename Scalar>
std::complex<Scalar> pump_alpha(const PumpEnvelope<Scalar>& env, Scalar omega_s, Scalar omega_i) {
  const Scalar detuning = omega_s + omega_i - env.central_frequency;
  return {env.amplitude_scale * std::exp(-detuning * detuning / (Scalar(2) * env.spectral_std * env.spectral_std)),
          Scalar(0)};
}

template <typename Scalar = double>
ExcitationAmplitudes<Scalar> excitation_amplitudes(PumpConfiguration config) {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  switch (config) {
    case PumpConfiguration::symmetric: return {{1, 0}, {0, 0}};
    case PumpConfiguration::antisymmetric: return {{0, 0}, {1, 0}};
    case PumpConfiguration::single_waveguide_1: return {{h, 0}, {h, 0}};
    case PumpConfiguration::single_waveguide_2: return {{h, 0}, {-h, 0}};
  }
  throw std::invalid_argument("unknown pump configuration");
}

template <typename Scalar>
struct EigenJSA {
  FrequencyGrid<Scalar> grid;
  PairTensor<Scalar> amplitudes;
  Scalar norm_constant{};  // sum |amp|^2 dws dwi before normalization
  std::vector<std::string> warnings;

  const AmplitudeSlice<Scalar>& slice(EigenLabel m, EigenLabel n) const {
    return amplitudes[2 * static_cast<int>(m) + static_cast<int>(n)];
  }
  AmplitudeSlice<Scalar>& slice(EigenLabel m, EigenLabel n) {
    return amplitudes[2 * static_cast<int>(m) + static_cast<int>(n)];
  }
};

/// sum |amp|^2 dws dwi over all four slices (midpoint rule on the uniform grid).
template <typename Scalar>
Scalar total_probability(const PairTensor<Scalar>& tensor, const FrequencyGrid<Scalar>& grid) {
  Scalar sum{0};
  for (const auto& s : tensor) sum += s.abs2().sum();
  return sum * grid.cell_area();
}

/// Envelope value at the lowest/highest pump-frequency corners of the grid
/// relative to its peak; below 1e-6 the pump support is fully covered.
template <typename Scalar>
Scalar envelope_edge_ratio(const PumpEnvelope<Scalar>& env, const FrequencyGrid<Scalar>& grid) {
  const Scalar lo = std::abs(pump_alpha(env, grid.signal(0), grid.idler(0)));
  const Scalar hi = std::abs(pump_alpha(env, grid.signal(grid.signal.size() - 1), grid.idler(grid.idler.size() - 1)));
  return std::max(lo, hi) / env.amplitude_scale;
}

template <typename Scalar>
EigenJSA<Scalar> assemble_eigen_state(const DispersionModel<Scalar>& model, const PumpEnvelope<Scalar>& env,
                                      const ExcitationAmplitudes<Scalar>& weights,
                                      const FrequencyGrid<Scalar>& grid, Scalar length) {
  model.validate();
  grid.validate();
  if (!(env.spectral_std > Scalar(0))) throw std::invalid_argument("pump spectral_std must be positive");
  if (!(length > Scalar(0))) throw std::invalid_argument("interaction length must be positive");

  EigenJSA<Scalar> state;
  state.grid = grid;
  const Eigen::Index ns = grid.signal.size();
  const Eigen::Index ni = grid.idler.size();
  for (auto& s : state.amplitudes) s.resize(ns, ni);

  const std::complex<Scalar> w[4] = {weights.gamma, weights.delta, weights.delta, weights.gamma};
  // Points this far below the envelope peak contribute < 1e-40 to any probability.
  const Scalar negligible = Scalar(1e-20) * std::abs(env.amplitude_scale);

#pragma omp parallel for
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index s = 0; s < ns; ++s) {
      const Scalar ws = grid.signal(s);
      const Scalar wi = grid.idler(i);
      const std::complex<Scalar> alpha = pump_alpha(env, ws, wi);
      if (std::abs(alpha) <= negligible) {
        for (auto& slice : state.amplitudes) slice(s, i) = std::complex<Scalar>(0);
        continue;
      }
      for (EigenLabel m : eigen_labels) {
        for (EigenLabel n : eigen_labels) {
          const int idx = 2 * static_cast<int>(m) + static_cast<int>(n);
          if (w[idx] == std::complex<Scalar>(0)) {
            state.amplitudes[idx](s, i) = std::complex<Scalar>(0);
            continue;
          }
          state.amplitudes[idx](s, i) = w[idx] * alpha * phase_matching(delta_beta(model, m, n, ws, wi), length);
        }
      }
    }
  }

  state.norm_constant = total_probability(state.amplitudes, grid);
  if (!(state.norm_constant > Scalar(0)))
    throw std::domain_error("two-photon amplitude vanishes on the grid; cannot normalize");
  const Scalar scale = Scalar(1) / std::sqrt(state.norm_constant);
  for (auto& s : state.amplitudes) s *= scale;

  const Scalar edge = envelope_edge_ratio(env, grid);
  if (edge >= Scalar(1e-6))
    state.warnings.push_back("pump envelope truncated by grid: edge/peak = " + std::to_string(double(edge)));
  return state;
}

template <typename Scalar>
EigenJSA<Scalar> assemble_eigen_state(const DispersionModel<Scalar>& model, const PumpEnvelope<Scalar>& env,
                                      PumpConfiguration config, const FrequencyGrid<Scalar>& grid, Scalar length) {
  return assemble_eigen_state(model, env, excitation_amplitudes<Scalar>(config), grid, length);
}

}  // namespace cpdc
