#pragma once

// Propagation constants of the coupled two-waveguide system.
//
// Each band is a polynomial in the detuning from a reference frequency,
//   beta(omega) = sum_k c_k (omega - omega_ref)^k,
// in m^-1. The generated (telecom) band is split by the evanescent coupling
// into a symmetric and an antisymmetric supermode, beta_S/A = beta0 -/+ C.
// The pump band is not affected by the coupling.

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpdc {

enum class EigenLabel { S, A };
enum class Band { pump, generated };

inline constexpr EigenLabel eigen_labels[] = {EigenLabel::S, EigenLabel::A};

inline const char* to_string(EigenLabel label) { return label == EigenLabel::S ? "S" : "A"; }

template <typename Scalar>
struct BandPolynomial {
  Scalar reference_frequency{};  // rad/s
  std::vector<Scalar> coefficients;  // c0 [1/m], c1 [s/m], c2 [s^2/m], ...

  void validate() const {
    if (coefficients.empty()) throw std::invalid_argument("band polynomial has no coefficients");
    if (!(coefficients.front() > Scalar(0)))
      throw std::invalid_argument("band polynomial constant term must be positive");
    if (!(reference_frequency > Scalar(0)))
      throw std::invalid_argument("band reference frequency must be positive");
  }

  /// Horner evaluation in (omega - omega_ref).
  Scalar operator()(Scalar omega) const {
    const Scalar x = omega - reference_frequency;
    Scalar acc{0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

template <typename Scalar>
struct DispersionModel {
  BandPolynomial<Scalar> pump_band;
  BandPolynomial<Scalar> generated_band;
  Scalar coupling_C{};      // 1/m
  Scalar grating_period{};  // m
  int grating_order = 1;

  void validate() const {
    pump_band.validate();
    generated_band.validate();
    if (!(coupling_C >= Scalar(0))) throw std::invalid_argument("coupling_C must be non-negative");
    if (!(grating_period > Scalar(0))) throw std::invalid_argument("grating_period must be positive");
    if (grating_order < 1) throw std::invalid_argument("grating_order must be >= 1");
  }

  Scalar grating_vector() const {
    return Scalar(grating_order) * Scalar(2) * std::numbers::pi_v<Scalar> / grating_period;
  }
};

namespace detail {
template <typename Scalar>
void require_positive_frequency(Scalar omega) {
  if (!(omega > Scalar(0)))
    throw std::domain_error("angular frequency must be positive, got " + std::to_string(double(omega)));
}
}  // namespace detail

template <typename Scalar>
Scalar beta_uncoupled(const DispersionModel<Scalar>& model, Band band, Scalar omega) {
  detail::require_positive_frequency(omega);
  return band == Band::pump ? model.pump_band(omega) : model.generated_band(omega);
}

/// Shift of a supermode's propagation constant relative to the uncoupled one.
template <typename Scalar>
Scalar eigen_offset(const DispersionModel<Scalar>& model, EigenLabel mode) {
  return mode == EigenLabel::S ? -model.coupling_C : model.coupling_C;
}

template <typename Scalar>
Scalar beta_eigen(const DispersionModel<Scalar>& model, EigenLabel mode, Scalar omega) {
  return beta_uncoupled(model, Band::generated, omega) + eigen_offset(model, mode);
}

/// Mismatch of the uncoupled system including the poling grating vector,
/// with omega_p = omega_s + omega_i. Symmetric in (omega_s, omega_i) bit for bit.
template <typename Scalar>
Scalar material_mismatch(const DispersionModel<Scalar>& model, Scalar omega_s, Scalar omega_i) {
  detail::require_positive_frequency(omega_s);
  detail::require_positive_frequency(omega_i);
  const Scalar generated = model.generated_band(omega_s) + model.generated_band(omega_i);
  return model.pump_band(omega_s + omega_i) - generated - model.grating_vector();
}

/// Delta beta_MN = beta_p(omega_s + omega_i) - beta_M(omega_s) - beta_N(omega_i) - m 2 pi / Lambda.
///
/// The supermode offsets are added after the large terms cancel, so band
/// separations come out as exactly +-2C and Delta beta_SA == Delta beta_AS.
template <typename Scalar>
Scalar delta_beta(const DispersionModel<Scalar>& model, EigenLabel m, EigenLabel n, Scalar omega_s,
                  Scalar omega_i) {
  const Scalar offset = eigen_offset(model, m) + eigen_offset(model, n);
  return material_mismatch(model, omega_s, omega_i) - offset;
}

}  // namespace cpdc
