#pragma once

// Pseudo-spectral integration of the linearized rotating-fluid system
//
//   dv1/dt =  alpha v2 - dp/dx1
//   dv2/dt = -alpha v1
//   dv3/dt = -dp/dx3
//   dp/dt  = -c^2 (dv1/dx1 + dv3/dx3)
//
// on a doubly periodic (x1, x3) box with classical RK4 time stepping.

#include <Eigen/Core>

#include <array>
#include <optional>
#include <vector>

#include "rotowave/dispersion.hpp"
#include "rotowave/grid.hpp"
#include "rotowave/planewave.hpp"
#include "rotowave/spectral.hpp"

namespace rotowave {

struct FieldState {
  RealField v1, v2, v3, p;
  double t = 0;

  static FieldState zeros(const Grid& grid, double t = 0);

  RealField& field(Field f);
  const RealField& field(Field f) const;

  bool all_finite() const;
  /// Euclidean norm over all four fields.
  double norm() const;
  /// Pointwise fields at grid index (i, j), ordered (v1, v2, v3, p).
  FieldVector<double> at(int i, int j) const;

  FieldState& operator+=(const FieldState& other);
  FieldState& operator*=(double s);
};

/// this + s * other for the fields; t is taken from base.
FieldState axpy(const FieldState& base, double s, const FieldState& other);

struct ProbeIndex {
  int i = 0;
  int j = 0;
};

struct SimConfig {
  FluidParams<double> params;
  Grid grid;
  double dt = 0;
  int n_steps = 1;
  int record_every = 10;
  ProbeIndex probe;

  void validate() const;
};

struct ProbeSample {
  double t = 0;
  FieldVector<double> values = FieldVector<double>::Zero();
};

struct EnergySample {
  double t = 0;
  double energy = 0;
};

struct RunRecord {
  std::vector<FieldState> snapshots;
  std::vector<ProbeSample> probe;
  std::vector<EnergySample> energy;
};

/// Largest acoustic-branch frequency over the resolved wavenumbers of the grid.
double max_grid_frequency(const FluidParams<double>& params, const Grid& grid);
/// RK4 is stable on the imaginary axis up to 2*sqrt(2); this keeps a margin.
double stability_limit(const FluidParams<double>& params, const Grid& grid);
/// 0.1 * 2 pi / gamma_max, i.e. ten steps per period of the fastest mode.
double default_time_step(const FluidParams<double>& params, const Grid& grid);

/// Samples a (scaled) eigenmode on the grid at time t.
FieldState sample_mode(const Grid& grid, const PlaneWaveMode<double>& mode, double amplitude = 1.0,
                       double t = 0);

/// Stateful integrator: owns the FFT plans for one grid.
class Integrator {
 public:
  explicit Integrator(SimConfig config);

  const SimConfig& config() const { return config_; }

  FieldState rhs(const FieldState& state);
  FieldState step(const FieldState& state);
  RunRecord run(const FieldState& initial);

  /// Largest relative imaginary residue seen in inverse transforms so far.
  double max_imaginary_leakage() const { return spectral_.max_imaginary_leakage(); }

 private:
  SimConfig config_;
  Spectral2D spectral_;
  double limit_;
};

FieldState rhs(const FluidParams<double>& params, const Grid& grid, const FieldState& state);
FieldState step(const SimConfig& config, const FieldState& state);
RunRecord run(const SimConfig& config, const FieldState& initial);

/// Discrete integral of (|v|^2 + p^2/c^2)/2 over the box.
double total_energy(const FluidParams<double>& params, const Grid& grid, const FieldState& state);

}  // namespace rotowave
