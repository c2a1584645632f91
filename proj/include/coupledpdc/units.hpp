#pragma once

#include <cmath>
#include <numbers>

namespace cpdc {

/// Speed of light in vacuum, m/s (exact).
inline constexpr double speed_of_light = 299792458.0;

// Wavelength <-> angular frequency conversions. Used only at the I/O boundary;
// everything behind it works in rad/s.

template <typename Scalar>
Scalar wavelength_nm_to_omega(Scalar wavelength_nm) {
  return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(speed_of_light) / (wavelength_nm * Scalar(1e-9));
}

template <typename Scalar>
Scalar omega_to_wavelength_nm(Scalar omega) {
  return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(speed_of_light) / omega * Scalar(1e9);
}

/// Linearized width conversion: a wavelength interval of `width_nm` around
/// `center_nm` expressed as an angular-frequency interval.
template <typename Scalar>
Scalar wavelength_width_to_omega_width(Scalar width_nm, Scalar center_nm) {
  const Scalar center = center_nm * Scalar(1e-9);
  return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(speed_of_light) * width_nm * Scalar(1e-9) / (center * center);
}

/// Gaussian standard deviation from a full width at half maximum.
template <typename Scalar>
Scalar fwhm_to_sigma(Scalar fwhm) {
  return fwhm / (Scalar(2) * std::sqrt(Scalar(2) * std::log(Scalar(2))));
}

}  // namespace cpdc
