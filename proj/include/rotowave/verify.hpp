#pragma once

// Independent cross-checks between the closed-form dispersion theory, the
// simulator and the fourth-order operator
//
//   L[u] = d2/dt2 [ (1/c^2) d2u/dt2 - lap u + (alpha^2/c^2) u ] - alpha^2 d2u/dx3^2
//
// that every field of the linearized system satisfies.

#include <span>
#include <vector>

#include "rotowave/dispersion.hpp"
#include "rotowave/simulator.hpp"

namespace rotowave::verify {

/// Non-negative roots of the dispersion residual found by dense sampling of
/// [0, alpha + c k + 1] and bisection; independent of the quadratic solve.
/// Always returns two roots (a double root is reported twice), sorted.
std::vector<double> quartic_roots_bruteforce(const FluidParams<double>& params,
                                             const WaveVector<double>& kvec,
                                             int samples = 100000);

/// Once-Richardson-extrapolated central differences of frequency_branches.
Velocity2<double> finite_difference_group_velocity(const FluidParams<double>& params,
                                                   const WaveVector<double>& kvec, Branch branch,
                                                   double step = 1e-5);

struct FrequencyEstimate {
  double peak_frequency = 0;  ///< radians per unit time
  double resolution = 0;      ///< 2 pi / (N dt)
  double amplitude = 0;       ///< estimated sinusoid amplitude at the peak
};

/// Hann-windowed DFT peak with log-parabolic interpolation.
FrequencyEstimate extract_frequency(std::span<const double> series, double dt);

/// Normalized L2 norm of the discrete operator applied to one field over a
/// stack of equally spaced snapshots (time derivatives by centered 5- and
/// 3-point stencils, space derivatives spectrally). Second order in the spacing.
double operator_residual(const FluidParams<double>& params, const Grid& grid,
                         std::span<const FieldState> snapshots, Field field);

}  // namespace rotowave::verify
