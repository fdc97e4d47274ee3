#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "rotowave/dispersion.hpp"

namespace rotowave {

/// Field order used by every 4-vector in the library.
enum class Field { v1 = 0, v2 = 1, v3 = 2, p = 3 };

template <typename Scalar>
using FieldVector = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using ComplexFieldVector = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

/// Plane-wave eigenmode of the linearized system, pressure amplitude fixed to 1.
template <typename Scalar = double>
struct PlaneWaveMode {
  WaveVector<Scalar> kvec;
  Scalar gamma{0};
  ComplexFieldVector<Scalar> amplitudes = ComplexFieldVector<Scalar>::Zero();
};

/// Builds the eigenmode on the requested branch.
///
/// Substituting exp(i(k.x + gamma t)) into the four momentum/continuity
/// equations gives A_v3 = -k3/gamma, A_v1 = -gamma k1/(gamma^2 - alpha^2) and
/// A_v2 = i alpha A_v1/gamma with A_p = 1; the remaining continuity equation
/// holds because gamma is a root of the dispersion relation.
template <typename Scalar>
PlaneWaveMode<Scalar> build_eigenmode(const FluidParams<Scalar>& params,
                                      const WaveVector<Scalar>& kvec, Branch branch) {
  using std::abs;
  using std::max;
  using Complex = std::complex<Scalar>;
  const Scalar gamma = frequency_branches(params, kvec)[branch];
  const Scalar shifted = (gamma - params.alpha) * (gamma + params.alpha);
  const Scalar scale = max(Scalar(1), gamma * gamma);
  if (gamma <= Scalar(1e-12) * max(Scalar(1), params.alpha))
    throw PolarizationSingularity("build_eigenmode: gamma == 0");
  if (abs(shifted) <= Scalar(1e-12) * scale)
    throw PolarizationSingularity("build_eigenmode: gamma == alpha");

  const Complex i{0, 1};
  PlaneWaveMode<Scalar> mode{kvec, gamma, {}};
  const Complex a_v1 = -gamma * kvec.k1 / shifted;
  mode.amplitudes << a_v1, i * params.alpha * a_v1 / gamma, -kvec.k3 / gamma, Complex(1);
  return mode;
}

/// Complex residuals of the four modal equations (v1, v2, v3 momentum, continuity).
template <typename Scalar>
ComplexFieldVector<Scalar> modal_residuals(const FluidParams<Scalar>& params,
                                           const PlaneWaveMode<Scalar>& mode) {
  using Complex = std::complex<Scalar>;
  const Complex ig{0, mode.gamma};
  const Complex ik1{0, mode.kvec.k1};
  const Complex ik3{0, mode.kvec.k3};
  const auto& a = mode.amplitudes;
  const Scalar alpha = params.alpha;
  ComplexFieldVector<Scalar> r;
  r << ig * a(0) - alpha * a(1) + ik1 * a(3),
       ig * a(1) + alpha * a(0),
       ig * a(2) + ik3 * a(3),
       ig / (params.c * params.c) * a(3) + ik1 * a(0) + ik3 * a(2);
  return r;
}

template <typename Scalar>
std::complex<Scalar> mode_phase(const PlaneWaveMode<Scalar>& mode, const Vector2<Scalar>& point,
                                Scalar t) {
  return std::polar(Scalar(1), mode.kvec.k1 * point.x() + mode.kvec.k3 * point.y() + mode.gamma * t);
}

/// Physical (real-part) fields of the mode at (x1, x3) and time t.
template <typename Scalar>
FieldVector<Scalar> evaluate_mode(const PlaneWaveMode<Scalar>& mode, const Vector2<Scalar>& point,
                                  Scalar t) {
  return (mode.amplitudes * mode_phase(mode, point, t)).real();
}

/// Analytic time derivative of evaluate_mode.
template <typename Scalar>
FieldVector<Scalar> evaluate_mode_rate(const PlaneWaveMode<Scalar>& mode,
                                       const Vector2<Scalar>& point, Scalar t) {
  const std::complex<Scalar> ig{0, mode.gamma};
  return (mode.amplitudes * (ig * mode_phase(mode, point, t))).real();
}

/// Nonlinearity parameter v0 / |v_ph|; the linear model needs it small.
template <typename Scalar>
Scalar linearity_parameter(Scalar v0, Scalar vph_magnitude) {
  if (!(vph_magnitude > Scalar(0)))
    throw std::invalid_argument("linearity_parameter: phase speed must be > 0");
  return v0 / vph_magnitude;
}

inline constexpr double kLinearityWarningThreshold = 0.1;

}  // namespace rotowave
