#include "rotowave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace rotowave {

Eigen::ArrayXd fft_wavenumbers(int n, double length) {
  Eigen::ArrayXd k(n);
  const double base = 2 * std::numbers::pi / length;
  for (int idx = 0; idx < n; ++idx) {
    const int m = idx <= n / 2 ? idx : idx - n;
    k(idx) = base * m;
  }
  return k;
}

Spectral2D::Spectral2D(const Grid& grid)
    : grid_(grid), k1_(fft_wavenumbers(grid.n1, grid.L1)), k3_(fft_wavenumbers(grid.n3, grid.L3)) {
  grid_.validate();
  const std::complex<double> i{0, 1};
  Eigen::ArrayXd d1 = k1_;
  Eigen::ArrayXd d3 = k3_;
  d1(grid_.n1 / 2) = 0;
  d3(grid_.n3 / 2) = 0;
  ik1_ = (i * d1.cast<std::complex<double>>()).replicate(1, grid_.n3);
  ik3_ = (i * d3.cast<std::complex<double>>()).transpose().replicate(grid_.n1, 1);
  kk1_ = (-k1_.square()).replicate(1, grid_.n3);
  kk3_ = (-k3_.square()).transpose().replicate(grid_.n1, 1);
  k_max_ = std::sqrt((kk1_ + kk3_).abs().maxCoeff());
}

void Spectral2D::transform_columns(ComplexField& data, bool forward) {
  const auto n = static_cast<int>(data.rows());
  buf_out_.resize(n);
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    std::complex<double>* col = data.col(j).data();
    if (forward)
      fft_.fwd(buf_out_.data(), col, n);
    else
      fft_.inv(buf_out_.data(), col, n);
    std::copy_n(buf_out_.data(), n, col);
  }
}

// Rows are strided in column-major storage, so they go through the transpose.
void Spectral2D::transform_rows(ComplexField& data, bool forward) {
  transposed_ = data.transpose();
  transform_columns(transposed_, forward);
  data = transposed_.transpose();
}

ComplexField Spectral2D::forward(const RealField& field) {
  ComplexField data = field.cast<std::complex<double>>();
  transform_columns(data, true);
  transform_rows(data, true);
  return data;
}

ComplexField Spectral2D::inverse(const ComplexField& coefficients) {
  ComplexField data = coefficients;
  transform_rows(data, false);
  transform_columns(data, false);
  return data;
}

RealField Spectral2D::inverse_real(const ComplexField& coefficients, double reference_norm) {
  const ComplexField data = inverse(coefficients);
  const double imag_norm = data.imag().matrix().norm();
  if (imag_norm > 0)
    max_leakage_ = std::max(max_leakage_, reference_norm > 0 ? imag_norm / reference_norm : imag_norm);
  return data.real();
}

std::pair<ComplexField, ComplexField> Spectral2D::forward_pair(const RealField& a, const RealField& b) {
  ComplexField z(a.rows(), a.cols());
  z.real() = a;
  z.imag() = b;
  transform_columns(z, true);
  transform_rows(z, true);

  const Eigen::Index n1 = z.rows(), n3 = z.cols();
  ComplexField fa(n1, n3), fb(n1, n3);
  for (Eigen::Index j = 0; j < n3; ++j) {
    const Eigen::Index jr = (n3 - j) % n3;
    for (Eigen::Index i = 0; i < n1; ++i) {
      const std::complex<double> zk = z(i, j);
      const std::complex<double> zr = std::conj(z((n1 - i) % n1, jr));
      fa(i, j) = 0.5 * (zk + zr);
      fb(i, j) = std::complex<double>(0, -0.5) * (zk - zr);
    }
  }
  return {std::move(fa), std::move(fb)};
}

std::pair<RealField, RealField> Spectral2D::inverse_pair(const ComplexField& a, const ComplexField& b) {
  ComplexField data = a + std::complex<double>(0, 1) * b;
  transform_rows(data, false);
  transform_columns(data, false);
  return {data.real(), data.imag()};
}

RealField Spectral2D::derivative(const RealField& field, Axis axis) {
  return inverse_real(forward(field) * derivative_multiplier(axis), k_max_ * field.matrix().norm());
}

RealField Spectral2D::second_derivative(const RealField& field, Axis axis) {
  return inverse_real(forward(field) * second_derivative_multiplier(axis).cast<std::complex<double>>(),
                      k_max_ * k_max_ * field.matrix().norm());
}

RealField Spectral2D::laplacian(const RealField& field) {
  return inverse_real(forward(field) * (kk1_ + kk3_).cast<std::complex<double>>(),
                      k_max_ * k_max_ * field.matrix().norm());
}

}  // namespace rotowave
