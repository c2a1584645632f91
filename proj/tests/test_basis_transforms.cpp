#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "coupledpdc/basis_transforms.hpp"
#include "coupledpdc/config.hpp"

using namespace cpdc;
using cd = std::complex<double>;

namespace {

const FrequencyGrid<double> kGrid = FrequencyGrid<double>::centered(1.24e15, 2e12, 17, 1.24e15, 2e12, 17);

// Smooth, exchange-symmetric test spectrum f(s, i) = f(i, s).
AmplitudeSlice<double> symmetric_spectrum(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  AmplitudeSlice<double> f(17, 17);
  for (Eigen::Index s = 0; s < 17; ++s)
    for (Eigen::Index i = 0; i <= s; ++i) f(s, i) = f(i, s) = cd(normal(rng), normal(rng));
  return f;
}

EigenJSA<double> eigen_state(AmplitudeSlice<double> ss, AmplitudeSlice<double> sa, AmplitudeSlice<double> as,
                             AmplitudeSlice<double> aa) {
  EigenJSA<double> st;
  st.grid = kGrid;
  st.amplitudes = {std::move(ss), std::move(sa), std::move(as), std::move(aa)};
  return st;
}

AmplitudeSlice<double> zeros() { return AmplitudeSlice<double>::Zero(17, 17); }

PairTensor<double> random_exchange_symmetric_tensor(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  PairTensor<double> t;
  for (auto& s : t) s = zeros();
  for (Eigen::Index s = 0; s < 17; ++s) {
    for (Eigen::Index i = 0; i < 17; ++i) {
      t[0](s, i) = t[0](i, s) = cd(normal(rng), normal(rng));
      t[3](s, i) = t[3](i, s) = cd(normal(rng), normal(rng));
      t[1](s, i) = t[2](i, s) = cd(normal(rng), normal(rng));
    }
  }
  return t;
}

Matrix2c<double> random_unitary(std::mt19937_64& rng) {
  // QR of a complex Gaussian matrix.
  std::normal_distribution<double> normal;
  Matrix2c<double> z;
  for (int k = 0; k < 4; ++k) z(k / 2, k % 2) = cd(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix2c<double>> qr(z);
  return qr.householderQ() * Matrix2c<double>::Identity();
}

double peak(const PairTensor<double>& t) {
  double m = 0;
  for (const auto& s : t) m = std::max(m, s.abs().maxCoeff());
  return m;
}

}  // namespace

TEST_CASE("one photon per supermode: cross-waveguide terms vanish exactly") {
  std::mt19937_64 rng(1);
  const auto f = symmetric_spectrum(rng);
  const auto wg = eigen_to_waveguide(eigen_state(zeros(), f, f, zeros()));
  CHECK(wg.slice(Waveguide::one, Waveguide::two).abs().maxCoeff() == 0.0);
  CHECK(wg.slice(Waveguide::two, Waveguide::one).abs().maxCoeff() == 0.0);
  CHECK((wg.slice(Waveguide::one, Waveguide::one) == -wg.slice(Waveguide::two, Waveguide::two)).all());
  CHECK((wg.slice(Waveguide::one, Waveguide::one) - f).abs().maxCoeff() < 1e-15 * f.abs().maxCoeff());
}

TEST_CASE("both photons in S spread evenly over the four waveguide pairs") {
  std::mt19937_64 rng(2);
  const auto f = symmetric_spectrum(rng);
  const auto wg = eigen_to_waveguide(eigen_state(f, zeros(), zeros(), zeros()));
  for (const auto& s : wg.amplitudes) CHECK((s - 0.5 * f).abs().maxCoeff() < 1e-15 * f.abs().maxCoeff());
}

TEST_CASE("zero in, zero out") {
  const auto wg = eigen_to_waveguide(eigen_state(zeros(), zeros(), zeros(), zeros()));
  CHECK(peak(wg.amplitudes) == 0.0);
}

TEST_CASE("supermode transform is an involution") {
  std::mt19937_64 rng(3);
  const auto t = random_exchange_symmetric_tensor(rng);
  const auto m = supermode_to_waveguide_matrix<double>();
  const auto back = transform_pairs(transform_pairs(t, m), m);
  for (int k = 0; k < 4; ++k) CHECK((back[k] - t[k]).abs().maxCoeff() <= 1e-12 * peak(t));
}

TEST_CASE("transforms preserve probability and exchange symmetry") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_exchange_symmetric_tensor(rng);
    const double before = total_probability(t, kGrid);
    WaveguideJSA<double> st{kGrid, t};
    const auto out = apply_two_mode_unitary(st, TwoModeUnitary<double>(random_unitary(rng)));
    CHECK(std::abs(total_probability(out.amplitudes, kGrid) - before) <= 1e-9 * before);
    const auto wg = eigen_to_waveguide(eigen_state(t[0], t[1], t[2], t[3]));
    CHECK(std::abs(total_probability(wg.amplitudes, kGrid) - before) <= 1e-9 * before);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK((out.amplitudes[2 * j + k] - out.amplitudes[2 * k + j].transpose()).abs().maxCoeff() <=
              1e-12 * peak(t));
  }
}

TEST_CASE("identity leaves the state unchanged") {
  std::mt19937_64 rng(5);
  const WaveguideJSA<double> st{kGrid, random_exchange_symmetric_tensor(rng)};
  const auto out = apply_two_mode_unitary(st, TwoModeUnitary<double>::identity());
  for (int k = 0; k < 4; ++k) CHECK((out.amplitudes[k] == st.amplitudes[k]).all());
}

TEST_CASE("phase on path 2 doubles on the |0,2> term") {
  std::mt19937_64 rng(6);
  const auto g = symmetric_spectrum(rng);
  const double h = 1 / std::sqrt(2.0);
  const WaveguideJSA<double> noon{kGrid, {h * g, zeros(), zeros(), -h * g}};
  const double phi = 0.37;
  Matrix2c<double> p = Matrix2c<double>::Identity();
  p(1, 1) = std::polar(1.0, phi);
  const auto out = apply_two_mode_unitary(noon, TwoModeUnitary<double>(p));
  const AmplitudeSlice<double> expected = noon.slice(Waveguide::two, Waveguide::two) * std::polar(1.0, 2 * phi);
  CHECK((out.slice(Waveguide::two, Waveguide::two) - expected).abs().maxCoeff() < 1e-15 * g.abs().maxCoeff());
  CHECK((out.slice(Waveguide::one, Waveguide::one) == noon.slice(Waveguide::one, Waveguide::one)).all());
}

TEST_CASE("Hong-Ou-Mandel: one photon per input port of a balanced splitter") {
  std::mt19937_64 rng(7);
  const auto f = symmetric_spectrum(rng);
  // Exchange-symmetric form of b1^dag(ws) b2^dag(wi) with identical spectra.
  const WaveguideJSA<double> in{kGrid, {zeros(), 0.5 * f, 0.5 * f, zeros()}};
  const auto out = apply_two_mode_unitary(in, splitter_with_phase(0.0));
  const double scale = f.abs().maxCoeff();
  CHECK(out.slice(Waveguide::one, Waveguide::two).abs().maxCoeff() <= 1e-15 * scale);
  CHECK(out.slice(Waveguide::two, Waveguide::one).abs().maxCoeff() <= 1e-15 * scale);
}

TEST_CASE("splitter with phase") {
  const double h = 1 / std::sqrt(2.0);
  const cd i{0, 1};
  Matrix2c<double> expect0;
  expect0 << h, i * h, i * h, h;
  CHECK((splitter_with_phase(0.0).entries() - expect0).cwiseAbs().maxCoeff() < 1e-16);
  Matrix2c<double> expect_pi;
  expect_pi << h, -i * h, i * h, -h;
  CHECK((splitter_with_phase(std::numbers::pi).entries() - expect_pi).cwiseAbs().maxCoeff() < 1e-15);
  for (double phi = -7; phi < 7; phi += 0.13) CHECK(is_unitary(splitter_with_phase(phi).entries()));
}

TEST_CASE("non-unitary transforms are rejected") {
  Matrix2c<double> m;
  m << 1, 1, 0, 1;
  CHECK_THROWS_AS(TwoModeUnitary<double>{m}, std::invalid_argument);
  CHECK_THROWS_AS(TwoModeUnitary<double>{Matrix2c<double>::Identity() * 1.001}, std::invalid_argument);
}

TEST_CASE("assembled device state keeps exchange symmetry in the waveguide basis") {
  const auto cfg = default_config();
  const auto env = pump_envelope(cfg);
  const auto grid = GridPolicy{61, 61, 50}.make_grid(env.central_frequency);
  const auto st = assemble_eigen_state(dispersion_model(cfg), env, PumpConfiguration::single_waveguide_1, grid,
                                       cfg.length_m);
  const auto wg = eigen_to_waveguide(st);
  const double scale = peak(wg.amplitudes);
  CHECK((wg.slice(Waveguide::one, Waveguide::two) - wg.slice(Waveguide::two, Waveguide::one).transpose())
            .abs()
            .maxCoeff() <= 1e-15 * scale);
  CHECK(std::abs(total_probability(wg.amplitudes, grid) - 1.0) <= 1e-9);
}
