#pragma once

// Linear two-mode optics acting on two-photon amplitudes.
//
// A two-photon state sum_{p,q} A_pq(ws, wi) c_p^dag(ws) c_q^dag(wi) |0> maps
// under c_p^dag -> sum_j U_jp d_j^dag to A'_jk = sum_{p,q} U_jp U_kq A_pq,
// applied independently at every grid point. Tensors are kept in the
// exchange-symmetric form A_pq(ws, wi) = A_qp(wi, ws), which every transform
// here preserves.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "coupledpdc/pdc_state.hpp"

namespace cpdc {

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

enum class Waveguide { one, two };

template <typename Scalar>
bool is_unitary(const Matrix2c<Scalar>& u, Scalar tolerance = Scalar(1e-12)) {
  return ((u * u.adjoint()) - Matrix2c<Scalar>::Identity()).cwiseAbs().maxCoeff() <= tolerance;
}

template <typename Scalar>
class TwoModeUnitary {
 public:
  explicit TwoModeUnitary(const Matrix2c<Scalar>& entries) : entries_(entries) {
    if (!is_unitary(entries_)) throw std::invalid_argument("two-mode transform is not unitary");
  }

  static TwoModeUnitary identity() { return TwoModeUnitary(Matrix2c<Scalar>::Identity()); }

  const Matrix2c<Scalar>& entries() const { return entries_; }
  std::complex<Scalar> operator()(int row, int col) const { return entries_(row, col); }

  TwoModeUnitary operator*(const TwoModeUnitary& rhs) const { return TwoModeUnitary(entries_ * rhs.entries_); }

 private:
  Matrix2c<Scalar> entries_;
};

template <typename Scalar>
struct WaveguideJSA {
  FrequencyGrid<Scalar> grid;
  PairTensor<Scalar> amplitudes;

  const AmplitudeSlice<Scalar>& slice(Waveguide j, Waveguide k) const {
    return amplitudes[2 * static_cast<int>(j) + static_cast<int>(k)];
  }
  AmplitudeSlice<Scalar>& slice(Waveguide j, Waveguide k) {
    return amplitudes[2 * static_cast<int>(j) + static_cast<int>(k)];
  }
};

/// A'_jk = sum_{p,q} M_jp M_kq A_pq, slice-wise.
template <typename Scalar>
PairTensor<Scalar> transform_pairs(const PairTensor<Scalar>& in, const Matrix2c<Scalar>& m) {
  PairTensor<Scalar> out;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      auto& dst = out[2 * j + k];
      dst = AmplitudeSlice<Scalar>::Zero(in[0].rows(), in[0].cols());
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          const std::complex<Scalar> c = m(j, p) * m(k, q);
          if (c != std::complex<Scalar>(0)) dst += c * in[2 * p + q];
        }
      }
    }
  }
  return out;
}

/// Columns are supermodes (S, A), rows are waveguides (1, 2):
/// a_S^dag = (b_1^dag + b_2^dag)/sqrt2, a_A^dag = (b_1^dag - b_2^dag)/sqrt2.
/// Real symmetric and its own inverse.
template <typename Scalar>
Matrix2c<Scalar> supermode_to_waveguide_matrix() {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  Matrix2c<Scalar> t;
  t << h, h, h, -h;
  return t;
}

template <typename Scalar>
WaveguideJSA<Scalar> eigen_to_waveguide(const EigenJSA<Scalar>& state) {
  return {state.grid, transform_pairs(state.amplitudes, supermode_to_waveguide_matrix<Scalar>())};
}

template <typename Scalar>
WaveguideJSA<Scalar> apply_two_mode_unitary(const WaveguideJSA<Scalar>& state, const TwoModeUnitary<Scalar>& u) {
  return {state.grid, transform_pairs(state.amplitudes, u.entries())};
}

/// Phase plate diag(1, e^{i phi}) on path 2 followed by the symmetric 50:50
/// splitter [[1, i], [i, 1]] / sqrt2.
template <typename Scalar>
TwoModeUnitary<Scalar> splitter_with_phase(Scalar phi) {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  const std::complex<Scalar> i{0, 1};
  Matrix2c<Scalar> splitter;
  splitter << h, i * h, i * h, h;
  Matrix2c<Scalar> phase = Matrix2c<Scalar>::Identity();
  phase(1, 1) = std::polar(Scalar(1), phi);
  return TwoModeUnitary<Scalar>(splitter * phase);
}

}  // namespace cpdc
