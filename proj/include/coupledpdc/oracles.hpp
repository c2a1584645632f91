#pragma once

// Brute-force routes that check the closed-form core independently:
// quadrature of the phase-matching integral, and Fock-space evolution of a
// two-photon state through a two-mode unitary via permanents.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coupledpdc/basis_transforms.hpp"

namespace cpdc {

struct OracleReport {
  std::string name;
  double max_abs_error = 0;
  double tolerance = 0;
  bool passed = false;
};

/// (1/L) int_0^L exp(-i delta_beta z) dz by the midpoint rule.
template <typename Scalar>
std::complex<Scalar> phi_numeric(Scalar delta_beta, Scalar length, long steps) {
  if (steps < 1000) throw std::invalid_argument("phi_numeric needs at least 1000 steps");
  if (!(length > Scalar(0))) throw std::invalid_argument("interaction length must be positive");
  const Scalar h = length / Scalar(steps);
  std::complex<Scalar> sum{0, 0};
  for (long k = 0; k < steps; ++k) {
    const Scalar z = (Scalar(k) + Scalar(0.5)) * h;
    sum += std::polar(Scalar(1), -delta_beta * z);
  }
  return sum / Scalar(steps);
}

namespace detail {
template <typename Scalar>
std::complex<Scalar> permanent2(const std::complex<Scalar>& a, const std::complex<Scalar>& b,
                                const std::complex<Scalar>& c, const std::complex<Scalar>& d) {
  return a * d + b * c;
}
}  // namespace detail

/// Two-photon amplitudes at a single frequency point, A_pq for c_p^dag c_q^dag,
/// pushed through `u` in the Fock basis {|2,0>, |1,1>, |0,2>}:
///   <n|U|m> = Perm(U[n, m]) / sqrt(prod n_j! prod m_p!)
/// where U[n, m] repeats row j n_j times and column p m_p times. Returns the
/// exchange-symmetric tensor of the output state.
template <typename Scalar>
Matrix2c<Scalar> fock_two_photon_oracle(const Matrix2c<Scalar>& input, const Matrix2c<Scalar>& u) {
  if (!is_unitary(u)) throw std::invalid_argument("fock oracle requires a unitary");
  using C = std::complex<Scalar>;
  const Scalar sqrt2 = std::sqrt(Scalar(2));

  // Creation-operator polynomial -> normalized Fock amplitudes.
  const std::array<C, 3> in_fock = {input(0, 0) * sqrt2, input(0, 1) + input(1, 0), input(1, 1) * sqrt2};
  const std::array<std::array<int, 2>, 3> occupation = {{{0, 0}, {0, 1}, {1, 1}}};  // mode of each photon
  const std::array<Scalar, 3> factorials = {Scalar(2), Scalar(1), Scalar(2)};        // prod n!

  std::array<C, 3> out_fock{};
  for (int n = 0; n < 3; ++n) {
    for (int m = 0; m < 3; ++m) {
      const auto& rows = occupation[n];
      const auto& cols = occupation[m];
      const C per = detail::permanent2(u(rows[0], cols[0]), u(rows[0], cols[1]), u(rows[1], cols[0]),
                                       u(rows[1], cols[1]));
      out_fock[n] += per / std::sqrt(factorials[n] * factorials[m]) * in_fock[m];
    }
  }

  Matrix2c<Scalar> out;
  out(0, 0) = out_fock[0] / sqrt2;
  out(1, 1) = out_fock[2] / sqrt2;
  out(0, 1) = out(1, 0) = out_fock[1] / Scalar(2);
  return out;
}

template <typename Scalar>
Matrix2c<Scalar> fock_two_photon_oracle(const Matrix2c<Scalar>& input, const TwoModeUnitary<Scalar>& u) {
  return fock_two_photon_oracle(input, u.entries());
}

/// Runs every oracle comparison with a fixed seed. Reports are in a stable order.
std::vector<OracleReport> run_oracles(std::uint64_t seed = 20150801);

}  // namespace cpdc
