#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "rotowave/errors.hpp"
#include "rotowave/simulator.hpp"

using namespace rotowave;

namespace {

constexpr double kPi = std::numbers::pi;

FieldState uniform(const Grid& g, double v1, double v2, double v3, double p) {
  FieldState s = FieldState::zeros(g);
  s.v1.setConstant(v1);
  s.v2.setConstant(v2);
  s.v3.setConstant(v3);
  s.p.setConstant(p);
  return s;
}

double max_abs(const FieldState& s) {
  return std::max({s.v1.abs().maxCoeff(), s.v2.abs().maxCoeff(), s.v3.abs().maxCoeff(), s.p.abs().maxCoeff()});
}

FieldState difference(const FieldState& a, const FieldState& b) { return axpy(a, -1.0, b); }

SimConfig config_for(const FluidParams<double>& params, const Grid& grid, double dt, int n_steps) {
  SimConfig c;
  c.params = params;
  c.grid = grid;
  c.dt = dt;
  c.n_steps = n_steps;
  return c;
}

}  // namespace

TEST(Rhs, UniformStateRotatesInertially) {
  const Grid g{16, 16};
  const auto t = rhs(FluidParams<double>{1.5, 1}, g, uniform(g, 0.3, -0.7, 2.0, 5.0));
  EXPECT_LE((t.v1 - 1.5 * -0.7).abs().maxCoeff(), 1e-14);
  EXPECT_LE((t.v2 + 1.5 * 0.3).abs().maxCoeff(), 1e-14);
  EXPECT_LE(t.v3.abs().maxCoeff(), 1e-14);
  EXPECT_LE(t.p.abs().maxCoeff(), 1e-14);
}

TEST(Rhs, EigenmodeTendencyIsAnalyticRate) {
  const FluidParams<double> params{2, 1};
  const Grid g{32, 32};
  for (Branch b : {Branch::minus, Branch::plus}) {
    const auto mode = build_eigenmode(params, g.wave_vector(1, 2), b);
    const double t = 0.37;
    const auto tendency = rhs(params, g, sample_mode(g, mode, 1.0, t));
    FieldState exact = FieldState::zeros(g, t);
    for (int j = 0; j < g.n3; ++j)
      for (int i = 0; i < g.n1; ++i) {
        const auto r = evaluate_mode_rate(mode, Vector2<double>(g.x1(i), g.x3(j)), t);
        exact.v1(i, j) = r(0);
        exact.v2(i, j) = r(1);
        exact.v3(i, j) = r(2);
        exact.p(i, j) = r(3);
      }
    EXPECT_LE(difference(tendency, exact).norm(), 1e-10 * exact.norm());
  }
}

TEST(Rhs, TransverseVelocityDecouplesWithoutRotation) {
  const Grid g{16, 16};
  FieldState s = FieldState::zeros(g);
  for (int j = 0; j < g.n3; ++j)
    for (int i = 0; i < g.n1; ++i) s.v2(i, j) = std::sin(g.x1(i)) + std::cos(2 * g.x3(j));
  EXPECT_EQ(max_abs(rhs(FluidParams<double>{0, 1}, g, s)), 0.0);
}

TEST(Rhs, RejectsBadInput) {
  const Grid g{16, 16};
  FieldState s = FieldState::zeros(g);
  s.p(3, 4) = std::nan("");
  EXPECT_THROW(rhs(FluidParams<double>{1, 1}, g, s), NonFiniteField);
  EXPECT_THROW(rhs(FluidParams<double>{1, 1}, g, FieldState::zeros(Grid{8, 16})), std::invalid_argument);
}

TEST(Step, ZeroIsFixedPoint) {
  const Grid g{16, 16};
  const FluidParams<double> params{1, 1};
  const auto next = step(config_for(params, g, default_time_step(params, g), 1), FieldState::zeros(g));
  EXPECT_EQ(max_abs(next), 0.0);
}

TEST(Step, UniformRotationToFifthOrder) {
  const Grid g{8, 8};
  const FluidParams<double> params{1, 1};
  for (double dt : {0.1, 0.05}) {
    const auto next = step(config_for(params, g, dt, 1), uniform(g, 1, 0, 0, 0));
    // RK4 local error for the rotation is dt^5/120 in the leading term.
    EXPECT_LE((next.v1 - std::cos(dt)).abs().maxCoeff(), dt * dt * dt * dt * dt / 60);
    EXPECT_LE((next.v2 + std::sin(dt)).abs().maxCoeff(), dt * dt * dt * dt * dt / 60);
    EXPECT_DOUBLE_EQ(next.t, dt);
  }
}

TEST(Step, StabilityBoundEnforced) {
  const Grid g{16, 16};
  const FluidParams<double> params{1, 1};
  const double limit = stability_limit(params, g);
  EXPECT_DOUBLE_EQ(limit, 2.5 / max_grid_frequency(params, g));
  EXPECT_THROW(step(config_for(params, g, 1.01 * limit, 1), FieldState::zeros(g)), StabilityError);
  EXPECT_NO_THROW(step(config_for(params, g, limit, 1), FieldState::zeros(g)));
  EXPECT_LT(default_time_step(params, g), limit);
}

TEST(Step, MaxGridFrequencyIsCornerAcousticBranch) {
  const Grid g{16, 32, 2 * kPi, 4 * kPi};
  const FluidParams<double> params{3, 2};
  // Largest |k| on the grid is (8, 8); gamma_plus^2 <= alpha^2 + c^2 k^2 with equality at theta = pi/2.
  const double gmax = max_grid_frequency(params, g);
  EXPECT_DOUBLE_EQ(gmax, frequency_branches(params, WaveVector<double>{8, 8}).gamma_plus);
}

TEST(Run, EigenmodeReturnsAfterOnePeriod) {
  const FluidParams<double> params{2, 1};
  const Grid g{32, 32};
  for (Branch b : {Branch::minus, Branch::plus}) {
    const auto mode = build_eigenmode(params, g.wave_vector(1, 1), b);
    const double period = 2 * kPi / mode.gamma;
    auto cfg = config_for(params, g, period / 200, 200);
    cfg.record_every = 200;
    const auto initial = sample_mode(g, mode);
    const auto record = run(cfg, initial);
    ASSERT_EQ(record.snapshots.size(), 2u);
    EXPECT_LE(difference(record.snapshots.back(), initial).norm(), 1e-6 * initial.norm());
    const double e0 = record.energy.front().energy;
    for (const auto& e : record.energy) EXPECT_LE(std::abs(e.energy - e0), 1e-8 * e0);
  }
}

TEST(Run, ZeroStepsRecordsInitialStateOnly) {
  const Grid g{16, 16};
  const FluidParams<double> params{1, 1};
  const auto record = run(config_for(params, g, default_time_step(params, g), 0), uniform(g, 1, 2, 3, 4));
  ASSERT_EQ(record.snapshots.size(), 1u);
  ASSERT_EQ(record.probe.size(), 1u);
  ASSERT_EQ(record.energy.size(), 1u);
  EXPECT_EQ(record.probe[0].values, FieldVector<double>(1, 2, 3, 4));
}

TEST(Run, CadenceAndTimes) {
  const Grid g{16, 16};
  const FluidParams<double> params{1, 1};
  auto cfg = config_for(params, g, 0.01, 25);
  cfg.record_every = 10;
  cfg.probe = {3, 5};
  const auto record = run(cfg, FieldState::zeros(g, 1.0));
  ASSERT_EQ(record.snapshots.size(), 3u);  // steps 0, 10, 20
  EXPECT_DOUBLE_EQ(record.snapshots[2].t, 1.2);
  ASSERT_EQ(record.probe.size(), 26u);
  EXPECT_DOUBLE_EQ(record.probe.back().t, 1.25);
}

TEST(Run, Deterministic) {
  const FluidParams<double> params{2, 1};
  const Grid g{16, 16};
  const auto mode = build_eigenmode(params, g.wave_vector(2, 1), Branch::plus);
  const auto cfg = config_for(params, g, default_time_step(params, g), 50);
  const auto a = run(cfg, sample_mode(g, mode, 0.3));
  const auto b = run(cfg, sample_mode(g, mode, 0.3));
  ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
  for (std::size_t n = 0; n < a.snapshots.size(); ++n) {
    EXPECT_TRUE((a.snapshots[n].v1 == b.snapshots[n].v1).all());
    EXPECT_TRUE((a.snapshots[n].p == b.snapshots[n].p).all());
  }
  for (std::size_t n = 0; n < a.probe.size(); ++n) EXPECT_EQ(a.probe[n].values, b.probe[n].values);
}

TEST(Run, TransverseVelocityConstantWithoutRotation) {
  const FluidParams<double> params{0, 1};
  const Grid g{32, 32};
  rotowave::testing::Gen gen(401);
  FieldState s = FieldState::zeros(g);
  for (int m1 = -2; m1 <= 2; ++m1)
    for (int m3 = -2; m3 <= 2; ++m3) {
      const auto k = g.wave_vector(m1, m3);
      const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1), c = gen.uniform(-1, 1);
      for (int j = 0; j < g.n3; ++j)
        for (int i = 0; i < g.n1; ++i) {
          const double ph = k.k1 * g.x1(i) + k.k3 * g.x3(j);
          s.v2(i, j) += a * std::cos(ph);
          s.p(i, j) += b * std::sin(ph);
          s.v1(i, j) += c * std::cos(ph);
        }
    }
  auto cfg = config_for(params, g, default_time_step(params, g), 300);
  cfg.record_every = 100;
  Integrator integrator(cfg);
  const auto record = integrator.run(s);
  for (const auto& snap : record.snapshots) EXPECT_LE((snap.v2 - s.v2).abs().maxCoeff(), 1e-12);
  EXPECT_GT((record.snapshots.back().p - s.p).abs().maxCoeff(), 1e-2);
  EXPECT_LE(integrator.max_imaginary_leakage(), 1e-11);
}

TEST(Run, ClassicalWaveWithoutRotation) {
  // alpha = 0: pressure obeys the 2D wave equation, a standing wave cos(k.x) cos(c k t).
  const FluidParams<double> params{0, 1.5};
  const Grid g{16, 16};
  FieldState s = FieldState::zeros(g);
  for (int j = 0; j < g.n3; ++j)
    for (int i = 0; i < g.n1; ++i) s.p(i, j) = std::cos(g.x1(i) + 2 * g.x3(j));
  const double omega = 1.5 * std::sqrt(5.0);
  const double dt = 2 * kPi / omega / 400;
  auto cfg = config_for(params, g, dt, 100);
  cfg.record_every = 100;
  const auto record = run(cfg, s);
  const double t = record.snapshots.back().t;
  EXPECT_LE((record.snapshots.back().p - s.p * std::cos(omega * t)).abs().maxCoeff(), 1e-8);
}

TEST(Energy, QuadraticForm) {
  const Grid g{16, 16, 2.0, 3.0};
  const FluidParams<double> params{1, 2};
  EXPECT_EQ(total_energy(params, g, FieldState::zeros(g)), 0.0);
  const auto s = uniform(g, 1, 0, 0, 2);
  // 0.5 * area * (1 + 4/4)
  EXPECT_DOUBLE_EQ(total_energy(params, g, s), 6.0);
  auto doubled = s;
  doubled *= 2;
  EXPECT_DOUBLE_EQ(total_energy(params, g, doubled), 4 * total_energy(params, g, s));
}

TEST(SimConfigType, Validation) {
  const Grid g{16, 16};
  auto cfg = config_for(FluidParams<double>{1, 1}, g, 0.01, 1);
  EXPECT_NO_THROW(cfg.validate());
  cfg.dt = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.dt = 0.01;
  cfg.probe = {16, 0};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.probe = {0, 0};
  cfg.record_every = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
