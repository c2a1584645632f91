#include "coupledpdc/oracles.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "coupledpdc/pdc_state.hpp"

namespace cpdc {

namespace {

OracleReport report(std::string name, double max_abs_error, double tolerance) {
  return {std::move(name), max_abs_error, tolerance, max_abs_error <= tolerance};
}

Matrix2c<double> random_tensor(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix2c<double> a;
  for (int k = 0; k < 4; ++k) a(k / 2, k % 2) = {normal(rng), normal(rng)};
  return a;
}

// Random element of U(2), not Haar distributed.
Matrix2c<double> random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double theta = 0.25 * angle(rng);
  const double a = angle(rng), b = angle(rng), c = angle(rng), d = angle(rng);
  Matrix2c<double> u;
  u << std::polar(std::cos(theta), a), std::polar(std::sin(theta), b), -std::polar(std::sin(theta), c - b + a),
      std::polar(std::cos(theta), c);
  return std::polar(1.0, d) * u;
}

// Single-point route through the production tensor contraction, symmetrized.
Matrix2c<double> contract_point(const Matrix2c<double>& input, const Matrix2c<double>& u) {
  PairTensor<double> tensor;
  for (int k = 0; k < 4; ++k) tensor[k] = AmplitudeSlice<double>::Constant(1, 1, input(k / 2, k % 2));
  const auto out = transform_pairs(tensor, u);
  Matrix2c<double> m;
  m(0, 0) = out[0](0, 0);
  m(1, 1) = out[3](0, 0);
  m(0, 1) = m(1, 0) = 0.5 * (out[1](0, 0) + out[2](0, 0));
  return m;
}

}  // namespace

std::vector<OracleReport> run_oracles(std::uint64_t seed) {
  std::vector<OracleReport> reports;
  std::mt19937_64 rng(seed);
  constexpr double length = 0.011;

  {
    std::uniform_real_distribution<double> mismatch(-1e4, 1e4);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const double db = mismatch(rng);
      worst = std::max(worst, std::abs(phi_numeric(db, length, 100000) - phase_matching(db, length)));
    }
    reports.push_back(report("phase_matching_vs_quadrature", worst, 1e-9));
  }
  {
    const double err = std::abs(phi_numeric(0.0, length, 100000) - std::complex<double>(1, 0));
    reports.push_back(report("phase_matching_zero_mismatch", err, 1e-15));
  }
  {
    const double first_zero = 2.0 * std::numbers::pi / length;
    reports.push_back(report("phase_matching_first_zero", std::abs(phi_numeric(first_zero, length, 100000)), 1e-8));
  }
  {
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const auto input = random_tensor(rng);
      const auto u = random_unitary(rng);
      worst = std::max(worst, (fock_two_photon_oracle(input, u) - contract_point(input, u)).cwiseAbs().maxCoeff());
    }
    reports.push_back(report("two_mode_unitary_vs_fock", worst, 1e-12));
  }
  {
    // Supermode -> waveguide change of basis is itself a two-mode unitary.
    const auto t = supermode_to_waveguide_matrix<double>();
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const auto input = random_tensor(rng);
      worst = std::max(worst, (fock_two_photon_oracle(input, t) - contract_point(input, t)).cwiseAbs().maxCoeff());
    }
    reports.push_back(report("supermode_transform_vs_fock", worst, 1e-12));
  }
  {
    // One photon per port of a balanced splitter, identical spectra.
    Matrix2c<double> one_per_port;
    one_per_port << 0, 0.5, 0.5, 0;
    const auto out = fock_two_photon_oracle(one_per_port, splitter_with_phase(0.0));
    const auto contracted = contract_point(one_per_port, splitter_with_phase(0.0).entries());
    reports.push_back(report("hong_ou_mandel_cross_port",
                             std::max(std::abs(out(0, 1)), std::abs(contracted(0, 1))), 1e-15));
  }
  {
    // Eigenbasis state with one photon in each supermode: no cross-waveguide term.
    Matrix2c<double> sa;
    sa << 0, 1, 1, 0;
    const auto out = fock_two_photon_oracle(sa, supermode_to_waveguide_matrix<double>());
    reports.push_back(report("supermode_hom_cancellation", std::abs(out(0, 1)), 1e-15));
  }
  return reports;
}

}  // namespace cpdc
