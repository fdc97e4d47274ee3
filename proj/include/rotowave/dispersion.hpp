#pragma once

// Analytic dispersion theory of small-amplitude waves in a uniformly rotating
// compressible fluid, restricted to motion independent of x2.
//
// With rotation rate alpha about x3 and sound speed c, plane waves
// exp(i(k.x + gamma t)) exist iff
//
//   F(gamma) = gamma^4 - gamma^2 alpha^2 - c^2 gamma^2 k^2 + c^2 alpha^2 k3^2 = 0.
//
// F is a quadratic in X = gamma^2 whose two non-negative roots are the inertial
// (lower) and acoustic (upper) branches. Everything in this header is a pure
// function templated on the scalar type, so the same code runs in double or in
// long double when extra headroom is needed.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rotowave/errors.hpp"

namespace rotowave {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Velocity in the (x1, x3) plane.
template <typename Scalar>
using Velocity2 = Vector2<Scalar>;

template <typename Scalar = double>
struct FluidParams {
  Scalar alpha{0};  ///< rotation rate (twice the angular velocity)
  Scalar c{1};      ///< sound speed
  static constexpr Scalar rho0{1};

  void validate() const {
    using std::isfinite;
    if (!(alpha >= Scalar(0)) || !isfinite(alpha))
      throw std::invalid_argument("FluidParams: alpha must be finite and >= 0");
    if (!(c > Scalar(0)) || !isfinite(c))
      throw std::invalid_argument("FluidParams: c must be finite and > 0");
  }

  template <typename Other>
  FluidParams<Other> cast() const {
    return {static_cast<Other>(alpha), static_cast<Other>(c)};
  }
};

template <typename Scalar = double>
struct WaveVector {
  Scalar k1{0};  ///< component along x1
  Scalar k3{0};  ///< component along the rotation axis x3

  /// theta measured from x3; theta = pi/2 gives an exactly perpendicular vector.
  static WaveVector from_polar(Scalar magnitude, Scalar theta) {
    using std::cos;
    using std::sin;
    if (theta == std::numbers::pi_v<Scalar> / 2) return {magnitude, Scalar(0)};
    return {magnitude * sin(theta), magnitude * cos(theta)};
  }

  Scalar norm() const {
    using std::hypot;
    return hypot(k1, k3);
  }
  Scalar squared_norm() const { return k1 * k1 + k3 * k3; }

  /// Angle to the x3 axis folded into [0, pi/2]; only cos^2 enters the
  /// dispersion relation, so the fold is exact.
  Scalar angle() const {
    using std::abs;
    using std::atan2;
    return atan2(abs(k1), abs(k3));
  }

  Vector2<Scalar> vector() const { return {k1, k3}; }

  template <typename Other>
  WaveVector<Other> cast() const {
    return {static_cast<Other>(k1), static_cast<Other>(k3)};
  }
};

enum class Branch { minus, plus };

inline std::string_view to_string(Branch b) { return b == Branch::minus ? "minus" : "plus"; }

template <typename Scalar = double>
struct DispersionBranches {
  Scalar gamma_minus{0};  ///< inertial branch, 0 <= gamma_minus <= alpha |cos theta|
  Scalar gamma_plus{0};   ///< acoustic branch, gamma_plus >= max(alpha, c k)

  Scalar operator[](Branch b) const { return b == Branch::minus ? gamma_minus : gamma_plus; }
};

enum class RegimeTag { Propagating, Forbidden, EvanescentPerpendicular, AxialAnyFrequency };

inline std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::Propagating: return "Propagating";
    case RegimeTag::Forbidden: return "Forbidden";
    case RegimeTag::EvanescentPerpendicular: return "EvanescentPerpendicular";
    case RegimeTag::AxialAnyFrequency: return "AxialAnyFrequency";
  }
  return "Unknown";
}

template <typename Scalar = double>
struct PropagationRegime {
  RegimeTag tag{RegimeTag::Propagating};
  std::optional<Scalar> decay_rate;  ///< only for EvanescentPerpendicular, > 0
};

/// Result of inverting the dispersion relation for k at fixed (gamma, theta).
template <typename Scalar = double>
struct WavenumberSolution {
  PropagationRegime<Scalar> regime;
  std::optional<Scalar> k;  ///< absent for Forbidden and EvanescentPerpendicular
};

namespace detail {

template <typename Scalar>
void require_angle(Scalar theta) {
  if (!(theta >= Scalar(0)) || theta > std::numbers::pi_v<Scalar> / 2)
    throw std::invalid_argument("theta must lie in [0, pi/2]");
}

template <typename Scalar>
bool is_perpendicular(Scalar theta) {
  return theta >= std::numbers::pi_v<Scalar> / 2;
}

}  // namespace detail

/// F(gamma) for the wave vector; zero exactly on a dispersion branch.
template <typename Scalar>
Scalar dispersion_residual(const FluidParams<Scalar>& params, const WaveVector<Scalar>& kvec,
                           Scalar gamma) {
  const Scalar g2 = gamma * gamma;
  const Scalar a2 = params.alpha * params.alpha;
  const Scalar c2 = params.c * params.c;
  return g2 * g2 - g2 * a2 - c2 * g2 * kvec.squared_norm() + c2 * a2 * kvec.k3 * kvec.k3;
}

/// Discriminant of the quadratic in gamma^2, written as a sum of squares:
/// (alpha^2 + c^2 k^2)^2 - 4 c^2 alpha^2 k3^2 = (alpha^2 - c^2 k^2)^2 + 4 c^2 alpha^2 k1^2.
template <typename Scalar>
Scalar dispersion_discriminant(const FluidParams<Scalar>& params, const WaveVector<Scalar>& kvec) {
  const Scalar ck = params.c * kvec.norm();
  const Scalar diff = (params.alpha - ck) * (params.alpha + ck);
  const Scalar cross = Scalar(2) * params.c * params.alpha * kvec.k1;
  return diff * diff + cross * cross;
}

template <typename Scalar>
DispersionBranches<Scalar> frequency_branches(const FluidParams<Scalar>& params,
                                              const WaveVector<Scalar>& kvec) {
  using std::abs;
  using std::sqrt;
  const Scalar k = kvec.norm();
  if (!(k > Scalar(0))) throw DegenerateWaveVector("frequency_branches: zero wave vector");

  const Scalar alpha = params.alpha;
  const Scalar ck = params.c * k;

  // Axial: roots are exactly alpha^2 and (c k)^2.
  if (kvec.k1 == Scalar(0)) return {std::min(alpha, ck), std::max(alpha, ck)};
  // Perpendicular: product of roots vanishes.
  if (kvec.k3 == Scalar(0)) return {Scalar(0), sqrt(alpha * alpha + ck * ck)};

  const Scalar sum = alpha * alpha + ck * ck;
  const Scalar product_root = params.c * alpha * abs(kvec.k3);  // sqrt of product of roots
  const Scalar upper = (sum + sqrt(dispersion_discriminant(params, kvec))) / Scalar(2);
  const Scalar lower = product_root * (product_root / upper);
  return {sqrt(lower), sqrt(upper)};
}

/// 2 gamma^2 - alpha^2 - c^2 k^2, evaluated as a sum of two differences so that
/// the axial and perpendicular limits keep full relative accuracy.
template <typename Scalar>
Scalar group_velocity_denominator(const FluidParams<Scalar>& params,
                                  const WaveVector<Scalar>& kvec, Scalar gamma) {
  const Scalar ck = params.c * kvec.norm();
  return (gamma - params.alpha) * (gamma + params.alpha) + (gamma - ck) * (gamma + ck);
}

template <typename Scalar>
Velocity2<Scalar> group_velocity(const FluidParams<Scalar>& params, const WaveVector<Scalar>& kvec,
                                 Scalar gamma) {
  using std::abs;
  using std::max;
  const Scalar den = group_velocity_denominator(params, kvec, gamma);
  if (abs(den) < Scalar(1e-12) * max(Scalar(1), gamma * gamma))
    throw DegenerateGroupVelocity("group_velocity: branch crossing (2 gamma^2 - alpha^2 - c^2 k^2 = 0)");

  const Scalar c2 = params.c * params.c;
  if (gamma == Scalar(0)) {
    // gamma = 0 lies on a branch only for alpha = 0 (flat branch, zero slope)
    // or k3 = 0, where the inertial branch behaves like |k3| and has no gradient.
    if (params.alpha == Scalar(0)) return Velocity2<Scalar>::Zero();
    throw DegenerateGroupVelocity("group_velocity: inertial branch is not differentiable at k3 = 0");
  }
  const Scalar shifted = (gamma - params.alpha) * (gamma + params.alpha);
  return {gamma * c2 * kvec.k1 / den, c2 * shifted * kvec.k3 / (gamma * den)};
}

template <typename Scalar>
Velocity2<Scalar> phase_velocity(const WaveVector<Scalar>& kvec, Scalar gamma) {
  const Scalar k2 = kvec.squared_norm();
  if (!(k2 > Scalar(0))) throw DegenerateWaveVector("phase_velocity: zero wave vector");
  return kvec.vector() * (gamma / k2);
}

template <typename Scalar>
PropagationRegime<Scalar> classify_regime(const FluidParams<Scalar>& params, Scalar gamma,
                                          Scalar theta) {
  using std::abs;
  using std::cos;
  using std::sqrt;
  detail::require_angle(theta);
  gamma = abs(gamma);
  const Scalar alpha = params.alpha;

  if (theta == Scalar(0)) return {RegimeTag::AxialAnyFrequency, std::nullopt};
  if (detail::is_perpendicular(theta)) {
    if (gamma < alpha)
      return {RegimeTag::EvanescentPerpendicular,
              sqrt((alpha - gamma) * (alpha + gamma)) / params.c};
    return {RegimeTag::Propagating, std::nullopt};
  }
  if (alpha * cos(theta) < gamma && gamma < alpha) return {RegimeTag::Forbidden, std::nullopt};
  return {RegimeTag::Propagating, std::nullopt};
}

template <typename Scalar>
WavenumberSolution<Scalar> wavenumber_from_frequency(const FluidParams<Scalar>& params,
                                                     Scalar gamma, Scalar theta) {
  using std::cos;
  using std::sqrt;
  if (!(gamma >= Scalar(0)))
    throw std::invalid_argument("wavenumber_from_frequency: gamma must be >= 0");
  const auto regime = classify_regime(params, gamma, theta);

  switch (regime.tag) {
    case RegimeTag::Forbidden:
    case RegimeTag::EvanescentPerpendicular:
      return {regime, std::nullopt};
    case RegimeTag::AxialAnyFrequency:
      return {regime, gamma / params.c};
    case RegimeTag::Propagating:
      break;
  }

  const Scalar alpha = params.alpha;
  if (alpha == Scalar(0)) return {regime, gamma / params.c};

  const Scalar axial = detail::is_perpendicular(theta) ? Scalar(0) : alpha * cos(theta);
  const Scalar num = (alpha - gamma) * (alpha + gamma);
  const Scalar den = (axial - gamma) * (axial + gamma);
  if (den == Scalar(0)) return {regime, std::numeric_limits<Scalar>::infinity()};
  return {regime, gamma / params.c * sqrt(num / den)};
}

/// Angle between the group velocity and the rotation axis, in (-pi/2, pi/2).
template <typename Scalar>
Scalar group_angle(const FluidParams<Scalar>& params, const WaveVector<Scalar>& kvec,
                   Scalar gamma) {
  using std::atan;
  if (kvec.k3 == Scalar(0)) throw FormulaSingularity("group_angle: k3 == 0");
  const Scalar shifted = (gamma - params.alpha) * (gamma + params.alpha);
  if (shifted == Scalar(0)) throw FormulaSingularity("group_angle: gamma == alpha");
  return atan(gamma * gamma / shifted * (kvec.k1 / kvec.k3));
}

/// Whether the point lies strictly inside the cone |x3| > sqrt(alpha^2 - gamma^2)/gamma |x1|
/// that bounds group-velocity directions at frequency gamma.
/// For gamma >= alpha every direction is admissible.
template <typename Scalar>
bool inside_characteristic_cone(const FluidParams<Scalar>& params, Scalar gamma,
                                const Vector2<Scalar>& point) {
  using std::abs;
  using std::sqrt;
  gamma = abs(gamma);
  if (gamma == Scalar(0)) throw FormulaSingularity("inside_characteristic_cone: gamma == 0");
  if (gamma >= params.alpha) return true;
  const Scalar slope = sqrt((params.alpha - gamma) * (params.alpha + gamma)) / gamma;
  return abs(point.y()) > slope * abs(point.x());
}

}  // namespace rotowave
