#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "coupledpdc/config.hpp"
#include "coupledpdc/observables.hpp"
#include "coupledpdc/oracles.hpp"
#include "coupledpdc/units.hpp"

using namespace cpdc;
using cd = std::complex<double>;

namespace {

const FrequencyGrid<double> kGrid = FrequencyGrid<double>::centered(1.24e15, 2e12, 15, 1.24e15, 2e12, 15);

// Real, exchange-symmetric spectrum normalized so sum |g|^2 dA = 1.
AmplitudeSlice<double> unit_spectrum() {
  AmplitudeSlice<double> g(15, 15);
  for (Eigen::Index s = 0; s < 15; ++s)
    for (Eigen::Index i = 0; i < 15; ++i) g(s, i) = std::exp(-0.05 * ((s - 7) * (s - 7) + (i - 7) * (i - 7)));
  return g / std::sqrt(g.abs2().sum() * kGrid.cell_area());
}

WaveguideJSA<double> ideal_noon() {
  const auto g = unit_spectrum();
  const double h = 1 / std::sqrt(2.0);
  return {kGrid, {h * g, AmplitudeSlice<double>::Zero(15, 15), AmplitudeSlice<double>::Zero(15, 15), -h * g}};
}

std::vector<double> uniform_phases(int n) {
  std::vector<double> p(n);
  for (int k = 0; k < n; ++k) p[k] = 2 * std::numbers::pi * k / n;
  return p;
}

struct Device {
  DeviceConfig cfg = default_config();
  DispersionModel<double> model = dispersion_model(cfg);
  GridPolicy policy{101, 101, 50.0};
};

}  // namespace

TEST_CASE("coincidence rates of reference states") {
  const auto noon = coincidence_rates(ideal_noon());
  CHECK(noon.r1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(noon.r2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(noon.r12 == 0.0);

  EigenJSA<double> ss{kGrid, {unit_spectrum(), AmplitudeSlice<double>::Zero(15, 15),
                              AmplitudeSlice<double>::Zero(15, 15), AmplitudeSlice<double>::Zero(15, 15)}, 1.0, {}};
  const auto r = coincidence_rates(eigen_to_waveguide(ss));
  CHECK(r.r1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.r2 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.r12 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.total() - 1) < 1e-9);
}

TEST_CASE("unnormalized input is rejected unless renormalization is requested") {
  auto st = ideal_noon();
  for (auto& s : st.amplitudes) s *= 2.0;
  CHECK_THROWS_AS(coincidence_rates(st), std::domain_error);
  const auto r = coincidence_rates(st, RateOptions{.renormalize = true});
  CHECK(r.r1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.total() - 1) < 1e-12);
}

TEST_CASE("rate fidelity") {
  CHECK(rate_fidelity({0.5, 0.5, 0.0}) == 1.0);
  CHECK(rate_fidelity({0.2, 0.2, 0.2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rate_fidelity({0.46, 0.46, 0.08}) == doctest::Approx(0.84).epsilon(1e-14));
  CHECK_THROWS_AS(rate_fidelity({0, 0, 0}), std::domain_error);

  // Strictly decreasing in r12 at fixed r1 + r2.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double singles = u(rng) + 1e-3;
    const double a = u(rng), b = a + 1e-3 + u(rng);
    CHECK(rate_fidelity({0.3 * singles, 0.7 * singles, a}) > rate_fidelity({0.3 * singles, 0.7 * singles, b}));
  }
}

TEST_CASE("fiber splitter estimator recovers the single-waveguide rates") {
  const CoincidenceRates r{0.41, 0.47, 0.12};
  const auto est = fiber_splitter_estimate(r);
  CHECK(est.r1 == r.r1);
  CHECK(est.r2 == r.r2);
  CHECK(est.r12 == r.r12);
}

TEST_CASE("visibility") {
  const std::vector<double> step{0.0, 1.0};
  CHECK(visibility(step) == 1.0);
  const std::vector<double> flat(7, 0.3);
  CHECK(visibility(flat) == 0.0);
  const std::vector<double> zero(4, 0.0);
  CHECK_THROWS_AS(visibility(zero), std::domain_error);
  CHECK_THROWS_AS(visibility(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(visibility(std::vector<double>{-0.1, 0.5}), std::invalid_argument);
}

TEST_CASE("ideal NOON fringe: closed form, period pi, unit visibility") {
  const auto phases = uniform_phases(64);
  const auto scan = phase_scan(ideal_noon(), phases);
  const auto r12 = scan.r12_trace();
  for (std::size_t k = 0; k < phases.size(); ++k) {
    // b1b1 - b2b2 through diag(1, e^{i phi}) then [[1,i],[i,1]]/sqrt2.
    CHECK(std::abs(r12[k] - 0.5 * (1 - std::cos(2 * phases[k]))) < 1e-12);
    CHECK(std::abs(scan.rates[k].total() - 1) < 1e-9);
  }
  for (std::size_t k = 0; k < 32; ++k) CHECK(std::abs(r12[k] - r12[k + 32]) < 1e-9);
  CHECK(std::abs(visibility(r12) - 1.0) < 1e-9);
  CHECK(dominant_period(r12) == doctest::Approx(std::numbers::pi));

  // Fock-space cross-check at a single frequency point.
  const double phi = phases[5];
  Matrix2c<double> point;
  point << 1 / std::sqrt(2.0), 0, 0, -1 / std::sqrt(2.0);
  const auto out = fock_two_photon_oracle(point, splitter_with_phase(phi));
  CHECK(2 * std::norm(out(0, 1)) == doctest::Approx(r12[5]).epsilon(1e-12));
}

TEST_CASE("any state fringes with period 2 pi") {
  const auto cfg = default_config();
  const auto env = pump_envelope(cfg);
  const auto grid = GridPolicy{41, 41, 50}.make_grid(env.central_frequency);
  const auto wg = eigen_to_waveguide(
      assemble_eigen_state(dispersion_model(cfg), env, PumpConfiguration::single_waveguide_1, grid, cfg.length_m));
  const std::vector<double> a{0.1, 1.3, 2.9};
  const std::vector<double> b{0.1 + 2 * std::numbers::pi, 1.3 + 2 * std::numbers::pi, 2.9 + 2 * std::numbers::pi};
  const auto ra = phase_scan(wg, a).r12_trace();
  const auto rb = phase_scan(wg, b).r12_trace();
  for (int k = 0; k < 3; ++k) CHECK(std::abs(ra[k] - rb[k]) < 1e-12);
}

TEST_CASE("classical single-photon reference has period 2 pi") {
  const auto phases = uniform_phases(64);
  const auto c = classical_reference_scan(phases);
  for (std::size_t k = 0; k < phases.size(); ++k) CHECK(c[k] == doctest::Approx(0.5 * (1 - std::sin(phases[k]))).epsilon(1e-12));
  CHECK(dominant_period(c) == doctest::Approx(2 * std::numbers::pi));
  CHECK(visibility(c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eight samples separate the first and second harmonics") {
  const auto phases = uniform_phases(8);
  const auto noon = phase_scan(ideal_noon(), phases).r12_trace();
  const auto classical = classical_reference_scan(phases);
  CHECK(harmonic_magnitude(noon, 2) > 0.2);
  CHECK(harmonic_magnitude(noon, 1) < 1e-12);
  CHECK(harmonic_magnitude(classical, 1) > 0.2);
  CHECK(harmonic_magnitude(classical, 2) < 1e-12);
  CHECK(dominant_period(noon) == doctest::Approx(std::numbers::pi));
  CHECK(dominant_period(classical) == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("degenerate phase-matching wavelengths of the three bands") {
  const auto model = dispersion_model(default_config());
  const double sa = degenerate_phase_matching_wavelength(model, EigenLabel::S, EigenLabel::A, 755, 765);
  const double ss = degenerate_phase_matching_wavelength(model, EigenLabel::S, EigenLabel::S, 755, 765);
  const double aa = degenerate_phase_matching_wavelength(model, EigenLabel::A, EigenLabel::A, 755, 765);
  CHECK(sa == doctest::Approx(759.7).epsilon(1e-9));
  CHECK(aa < sa);
  CHECK(ss > sa);
  CHECK(ss - sa == doctest::Approx(sa - aa).epsilon(1e-2));
  CHECK(ss - aa < 6.0);
  CHECK_THROWS_AS(degenerate_phase_matching_wavelength(model, EigenLabel::S, EigenLabel::A, 700, 710),
                  std::domain_error);
}

TEST_CASE("pump scan: pointwise independence and axis checks") {
  Device d;
  const std::vector<double> fwd{759.0, 759.5, 759.7, 760.4};
  const std::vector<double> rev(fwd.rbegin(), fwd.rend());
  const auto env = pump_envelope(d.cfg);
  const auto a = pump_scan(d.model, env, PumpConfiguration::single_waveguide_1, d.policy, d.cfg.length_m, fwd);
  const auto b = pump_scan(d.model, env, PumpConfiguration::single_waveguide_1, d.policy, d.cfg.length_m, rev);
  for (std::size_t k = 0; k < fwd.size(); ++k) {
    const auto& x = a.rates[k];
    const auto& y = b.rates[fwd.size() - 1 - k];
    CHECK(x.r1 == y.r1);
    CHECK(x.r2 == y.r2);
    CHECK(x.r12 == y.r12);
    CHECK(std::abs(x.total() - 1) < 1e-9);
  }
  const std::vector<double> bad{759.0, 759.0};
  CHECK_THROWS_AS(pump_scan(d.model, env, PumpConfiguration::symmetric, d.policy, d.cfg.length_m, bad),
                  std::invalid_argument);
  CHECK_THROWS_AS(pump_scan(d.model, env, PumpConfiguration::symmetric, d.policy, d.cfg.length_m, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("pump scan selection rules") {
  Device d;
  const auto env = pump_envelope(d.cfg);
  const std::vector<double> at_sa{759.7};

  const auto single = pump_scan(d.model, env, PumpConfiguration::single_waveguide_1, d.policy, d.cfg.length_m, at_sa);
  CHECK(single.rates[0].r12 < 0.1);
  CHECK(single.fidelity[0] > 0.8);

  const auto sym = pump_scan(d.model, env, PumpConfiguration::symmetric, d.policy, d.cfg.length_m, at_sa);
  CHECK(sym.rates[0].r12 >= 0.45);

  const std::vector<double> sweep{758.5, 759.2, 759.7, 760.2, 761.0};
  const auto anti = pump_scan(d.model, env, PumpConfiguration::antisymmetric, d.policy, d.cfg.length_m, sweep);
  for (const auto& r : anti.rates) CHECK(r.r12 <= 1e-12);

  auto uncoupled = d.model;
  uncoupled.coupling_C = 0;
  // Without coupling every pair stays in the waveguide(s) it was born in.
  const auto flat = pump_scan(uncoupled, env, PumpConfiguration::single_waveguide_1, d.policy, d.cfg.length_m, at_sa);
  CHECK(flat.rates[0].r1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(flat.rates[0].r12 <= 1e-12);
  const auto flat_sym = pump_scan(uncoupled, env, PumpConfiguration::symmetric, d.policy, d.cfg.length_m, at_sa);
  CHECK(flat_sym.rates[0].r1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(flat_sym.rates[0].r2 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(flat_sym.rates[0].r12 <= 1e-12);
}
