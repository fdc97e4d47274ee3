#pragma once

#include <utility>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "rotowave/grid.hpp"

namespace rotowave {

using RealField = Eigen::ArrayXXd;      ///< n1 x n3, row index along x1
using ComplexField = Eigen::ArrayXXcd;  ///< Fourier coefficients, same layout

enum class Axis { x1, x3 };

/// Fourier pseudo-spectral derivatives on a periodic grid.
///
/// First derivatives drop the Nyquist coefficient so that real fields stay
/// real and d/dx stays skew-adjoint; second derivatives keep it.
/// Holds FFT plans, so one instance belongs to one thread at a time.
class Spectral2D {
 public:
  explicit Spectral2D(const Grid& grid);

  const Grid& grid() const { return grid_; }

  ComplexField forward(const RealField& field);
  ComplexField inverse(const ComplexField& coefficients);

  /// Real part of the inverse transform. The discarded imaginary part is
  /// tracked relative to reference_norm (typically k_max^order times the
  /// norm of the differentiated field).
  RealField inverse_real(const ComplexField& coefficients, double reference_norm);

  /// Spectra of two real fields from one complex transform of a + i b.
  std::pair<ComplexField, ComplexField> forward_pair(const RealField& a, const RealField& b);
  /// Two real fields from Hermitian spectra A and B via one inverse of A + i B.
  /// Leakage is not tracked here since the imaginary part carries b.
  std::pair<RealField, RealField> inverse_pair(const ComplexField& a, const ComplexField& b);

  /// Largest resolved |k| on the grid.
  double max_wavenumber() const { return k_max_; }

  /// Multipliers i*k (Nyquist zeroed) per axis.
  const ComplexField& derivative_multiplier(Axis axis) const {
    return axis == Axis::x1 ? ik1_ : ik3_;
  }
  /// Multipliers -k^2 per axis.
  const RealField& second_derivative_multiplier(Axis axis) const {
    return axis == Axis::x1 ? kk1_ : kk3_;
  }

  RealField derivative(const RealField& field, Axis axis);
  RealField laplacian(const RealField& field);
  RealField second_derivative(const RealField& field, Axis axis);

  double max_imaginary_leakage() const { return max_leakage_; }
  void reset_leakage() { max_leakage_ = 0; }

 private:
  void transform_columns(ComplexField& data, bool forward);
  void transform_rows(ComplexField& data, bool forward);

  Grid grid_;
  Eigen::ArrayXd k1_;  // angular wavenumbers in FFT order, Nyquist kept
  Eigen::ArrayXd k3_;
  ComplexField ik1_, ik3_;
  RealField kk1_, kk3_;
  double k_max_;
  Eigen::FFT<double> fft_;
  ComplexField transposed_;
  Eigen::VectorXcd buf_out_;
  double max_leakage_ = 0;
};

/// Angular wavenumbers 2 pi m / L in FFT order, m = 0, 1, ..., n/2, -n/2+1, ..., -1.
Eigen::ArrayXd fft_wavenumbers(int n, double length);

}  // namespace rotowave
