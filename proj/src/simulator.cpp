#include "rotowave/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rotowave/errors.hpp"

namespace rotowave {

FieldState FieldState::zeros(const Grid& grid, double t) {
  const RealField z = RealField::Zero(grid.n1, grid.n3);
  return {z, z, z, z, t};
}

RealField& FieldState::field(Field f) {
  switch (f) {
    case Field::v1: return v1;
    case Field::v2: return v2;
    case Field::v3: return v3;
    case Field::p: break;
  }
  return p;
}

const RealField& FieldState::field(Field f) const {
  return const_cast<FieldState&>(*this).field(f);
}

bool FieldState::all_finite() const {
  return v1.allFinite() && v2.allFinite() && v3.allFinite() && p.allFinite();
}

double FieldState::norm() const {
  return std::sqrt(v1.square().sum() + v2.square().sum() + v3.square().sum() + p.square().sum());
}

FieldVector<double> FieldState::at(int i, int j) const {
  return {v1(i, j), v2(i, j), v3(i, j), p(i, j)};
}

FieldState& FieldState::operator+=(const FieldState& other) {
  v1 += other.v1;
  v2 += other.v2;
  v3 += other.v3;
  p += other.p;
  return *this;
}

FieldState& FieldState::operator*=(double s) {
  v1 *= s;
  v2 *= s;
  v3 *= s;
  p *= s;
  return *this;
}

FieldState axpy(const FieldState& base, double s, const FieldState& other) {
  return {base.v1 + s * other.v1, base.v2 + s * other.v2, base.v3 + s * other.v3,
          base.p + s * other.p, base.t};
}

void SimConfig::validate() const {
  params.validate();
  grid.validate();
  if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("SimConfig: dt must be > 0");
  if (n_steps < 0) throw std::invalid_argument("SimConfig: n_steps must be >= 0");
  if (record_every < 1) throw std::invalid_argument("SimConfig: record_every must be >= 1");
  if (probe.i < 0 || probe.i >= grid.n1 || probe.j < 0 || probe.j >= grid.n3)
    throw std::invalid_argument("SimConfig: probe index outside the grid");
}

double max_grid_frequency(const FluidParams<double>& params, const Grid& grid) {
  double gamma_max = params.alpha;
  for (int m1 = 0; m1 <= grid.n1 / 2; ++m1) {
    for (int m3 = 0; m3 <= grid.n3 / 2; ++m3) {
      if (m1 == 0 && m3 == 0) continue;
      gamma_max = std::max(gamma_max, frequency_branches(params, grid.wave_vector(m1, m3)).gamma_plus);
    }
  }
  return gamma_max;
}

double stability_limit(const FluidParams<double>& params, const Grid& grid) {
  return 2.5 / max_grid_frequency(params, grid);
}

double default_time_step(const FluidParams<double>& params, const Grid& grid) {
  return 0.1 * 2 * std::numbers::pi / max_grid_frequency(params, grid);
}

FieldState sample_mode(const Grid& grid, const PlaneWaveMode<double>& mode, double amplitude,
                       double t) {
  FieldState state = FieldState::zeros(grid, t);
  for (int j = 0; j < grid.n3; ++j) {
    for (int i = 0; i < grid.n1; ++i) {
      const FieldVector<double> u = amplitude * evaluate_mode(mode, {grid.x1(i), grid.x3(j)}, t);
      state.v1(i, j) = u(0);
      state.v2(i, j) = u(1);
      state.v3(i, j) = u(2);
      state.p(i, j) = u(3);
    }
  }
  return state;
}

namespace {

SimConfig validated(SimConfig config) {
  config.validate();
  return config;
}

}  // namespace

Integrator::Integrator(SimConfig config)
    : config_(validated(std::move(config))),
      spectral_(config_.grid),
      limit_(stability_limit(config_.params, config_.grid)) {}

FieldState Integrator::rhs(const FieldState& state) {
  const Grid& grid = config_.grid;
  if (state.p.rows() != grid.n1 || state.p.cols() != grid.n3 || state.v1.rows() != grid.n1 ||
      state.v1.cols() != grid.n3 || state.v2.rows() != grid.n1 || state.v2.cols() != grid.n3 ||
      state.v3.rows() != grid.n1 || state.v3.cols() != grid.n3)
    throw std::invalid_argument("rhs: field shape does not match the grid");
  if (!state.all_finite()) throw NonFiniteField("rhs: non-finite field value");

  const double alpha = config_.params.alpha;
  const double c2 = config_.params.c * config_.params.c;
  const ComplexField& ik1 = spectral_.derivative_multiplier(Axis::x1);
  const ComplexField& ik3 = spectral_.derivative_multiplier(Axis::x3);

  const double v_scale = spectral_.max_wavenumber() * (state.v1.matrix().norm() + state.v3.matrix().norm());

  const ComplexField p_hat = spectral_.forward(state.p);
  const auto [v1_hat, v3_hat] = spectral_.forward_pair(state.v1, state.v3);
  const RealField div = spectral_.inverse_real(ik1 * v1_hat + ik3 * v3_hat, v_scale);
  const auto [dp1, dp3] = spectral_.inverse_pair(ik1 * p_hat, ik3 * p_hat);

  return {alpha * state.v2 - dp1, -alpha * state.v1, -dp3, -c2 * div, state.t};
}

FieldState Integrator::step(const FieldState& state) {
  const double dt = config_.dt;
  if (dt > limit_) {
    std::ostringstream msg;
    msg << "step: dt = " << dt << " exceeds the RK4 stability limit " << limit_;
    throw StabilityError(msg.str());
  }

  const FieldState k1 = rhs(state);
  const FieldState k2 = rhs(axpy(state, dt / 2, k1));
  const FieldState k3 = rhs(axpy(state, dt / 2, k2));
  const FieldState k4 = rhs(axpy(state, dt, k3));

  FieldState incr = k2;
  incr += k3;
  incr *= 2;
  incr += k1;
  incr += k4;
  FieldState next = axpy(state, dt / 6, incr);
  next.t = state.t + dt;
  return next;
}

RunRecord Integrator::run(const FieldState& initial) {
  if (config_.n_steps > 0 && config_.dt > limit_) {
    std::ostringstream msg;
    msg << "run: dt = " << config_.dt << " exceeds the RK4 stability limit " << limit_;
    throw StabilityError(msg.str());
  }

  RunRecord record;
  const auto& probe = config_.probe;
  auto observe = [&](const FieldState& s, int n) {
    if (n % config_.record_every == 0) record.snapshots.push_back(s);
    record.probe.push_back({s.t, s.at(probe.i, probe.j)});
    record.energy.push_back({s.t, total_energy(config_.params, config_.grid, s)});
  };

  FieldState state = initial;
  observe(state, 0);
  for (int n = 1; n <= config_.n_steps; ++n) {
    state = step(state);
    state.t = initial.t + n * config_.dt;
    observe(state, n);
  }
  return record;
}

namespace {

SimConfig rhs_config(const FluidParams<double>& params, const Grid& grid) {
  SimConfig config;
  config.params = params;
  config.grid = grid;
  config.dt = default_time_step(params, grid);
  return config;
}

}  // namespace

FieldState rhs(const FluidParams<double>& params, const Grid& grid, const FieldState& state) {
  Integrator integrator(rhs_config(params, grid));
  return integrator.rhs(state);
}

FieldState step(const SimConfig& config, const FieldState& state) {
  Integrator integrator(config);
  return integrator.step(state);
}

RunRecord run(const SimConfig& config, const FieldState& initial) {
  Integrator integrator(config);
  return integrator.run(initial);
}

double total_energy(const FluidParams<double>& params, const Grid& grid, const FieldState& state) {
  const double kinetic = state.v1.square().sum() + state.v2.square().sum() + state.v3.square().sum();
  const double potential = state.p.square().sum() / (params.c * params.c);
  return 0.5 * grid.cell_area() * (kinetic + potential);
}

}  // namespace rotowave
