#include "rotowave/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rotowave/dispersion.hpp"
#include "rotowave/planewave.hpp"
#include "rotowave/simulator.hpp"
#include "rotowave/verify.hpp"

namespace rotowave::verify {

namespace {

constexpr double kPi = std::numbers::pi;

struct Instance {
  FluidParams<double> params;
  WaveVector<double> kvec;
};

/// alpha in [0, 10], c in [0.1, 10], |k| in (0, 100], direction uniform on the circle.
class InstanceSampler {
 public:
  explicit InstanceSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  FluidParams<double> params() { return {uniform(0, 10), uniform(0.1, 10)}; }
  double magnitude() { return 100 * (1 - uniform(0, 1)); }
  double sign() { return uniform(0, 1) < 0.5 ? -1.0 : 1.0; }

  Instance next() {
    const auto p = params();
    const double k = magnitude();
    const double phi = uniform(0, 2 * kPi);
    return {p, {k * std::sin(phi), k * std::cos(phi)}};
  }

 private:
  std::mt19937_64 rng_;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

CheckResult finish(std::string name, double measured, double tolerance, bool passed,
                   std::string detail, const Stopwatch& clock) {
  return {std::move(name), passed, measured, tolerance, std::move(detail), clock.seconds()};
}

// Grid shared by the simulator checks: L3 = sqrt(3) L1 puts theta in
// {0, pi/6, pi/3, pi/2} on small mode indices.
Grid angle_grid() { return {32, 32, 2 * kPi, 2 * kPi * std::sqrt(3.0)}; }

FluidParams<double> eigenmode_params() { return {2.0, 1.0}; }
Grid eigenmode_grid() { return {32, 32, 2 * kPi, 2 * kPi}; }

double relative_state_error(const FieldState& a, const FieldState& b) {
  FieldState diff = axpy(a, -1, b);
  return diff.norm() / b.norm();
}

}  // namespace

std::optional<Scope> parse_scope(std::string_view text) {
  if (text == "dispersion") return Scope::dispersion;
  if (text == "simulator") return Scope::simulator;
  if (text == "all") return Scope::all;
  return std::nullopt;
}

std::string_view to_string(Scope scope) {
  switch (scope) {
    case Scope::dispersion: return "dispersion";
    case Scope::simulator: return "simulator";
    case Scope::all: break;
  }
  return "all";
}

// 1. Both branches satisfy |F| <= 1e-10 max(1, gamma^4) on 1e4 random instances.
//
// The solve and the residual run in long double: in binary64 the rounding of
// gamma_minus alone moves F by about 2 gamma^2 (alpha^2 + c^2 k^2) u, which
// exceeds the bound when c k is large and gamma_minus is O(1). The binary64
// figures are reported in the detail line.
CheckResult check_dispersion_residual(const SuiteOptions& options) {
  Stopwatch clock;
  InstanceSampler sampler(options.seed);
  constexpr int kInstances = 10000;
  constexpr double kTol = 1e-10;
  long double worst = 0;
  double worst_binary64 = 0;
  int binary64_over = 0;
  for (int n = 0; n < kInstances; ++n) {
    const Instance inst = sampler.next();
    const auto params = inst.params.cast<long double>();
    const auto kvec = inst.kvec.cast<long double>();
    const auto branches = frequency_branches(params, kvec);
    for (long double gamma : {branches.gamma_minus, branches.gamma_plus}) {
      const long double r = dispersion_residual(params, kvec, gamma) + options.residual_perturbation;
      worst = std::max(worst, std::abs(r) / std::max(1.0L, gamma * gamma * gamma * gamma));
    }
    const auto b64 = frequency_branches(inst.params, inst.kvec);
    for (double gamma : {b64.gamma_minus, b64.gamma_plus}) {
      const double r = std::abs(dispersion_residual(inst.params, inst.kvec, gamma)) /
                       std::max(1.0, std::pow(gamma, 4));
      worst_binary64 = std::max(worst_binary64, r);
      if (r > kTol) ++binary64_over;
    }
  }
  const double secs = clock.seconds();
  const double measured = static_cast<double>(worst);
  std::string detail = "long double solve; binary64 worst " + fmt(worst_binary64) + " (" +
                       std::to_string(binary64_over) + " of " + std::to_string(2 * kInstances) +
                       " roots above tolerance)";
  return finish("dispersion_residual", measured, kTol, measured <= kTol && secs < 1.0, detail, clock);
}

// 2. Closed-form branches agree with the sampling/bisection oracle.
CheckResult check_oracle_equivalence(const SuiteOptions& options) {
  Stopwatch clock;
  InstanceSampler sampler(options.seed + 1);
  constexpr double kTol = 1e-9;
  double worst = 0;
  int wrong_count = 0;
  for (int n = 0; n < 1000; ++n) {
    const Instance inst = sampler.next();
    const auto branches = frequency_branches(inst.params, inst.kvec);
    const auto roots = quartic_roots_bruteforce(inst.params, inst.kvec);
    if (roots.size() != 2) {
      ++wrong_count;
      continue;
    }
    worst = std::max({worst, std::abs(roots[0] - branches.gamma_minus),
                      std::abs(roots[1] - branches.gamma_plus)});
  }
  const double secs = clock.seconds();
  const bool ok = worst <= kTol && wrong_count == 0 && secs < 10.0;
  return finish("oracle_equivalence", worst, kTol, ok,
                std::to_string(wrong_count) + " instances with a root count other than 2",
                clock);
}

// 3. alpha = 1, theta = pi/3: no branch frequency inside (0.5, 1) for k in (0, 100].
CheckResult check_forbidden_zone(const SuiteOptions&) {
  Stopwatch clock;
  const FluidParams<double> params{1.0, 1.0};
  const double theta = kPi / 3;
  const double lo = 0.5 + 1e-6;
  const double hi = 1.0 - 1e-6;
  constexpr int kSamples = 100000;
  int inside = 0;
  double closest = 1.0;  // distance from [0.5, 1], in frequency
  for (int i = 1; i <= kSamples; ++i) {
    const auto kvec = WaveVector<double>::from_polar(100.0 * i / kSamples, theta);
    const auto branches = frequency_branches(params, kvec);
    for (double gamma : {branches.gamma_minus, branches.gamma_plus}) {
      if (gamma > lo && gamma < hi) ++inside;
      const double outside = gamma <= 0.5 ? 0.5 - gamma : (gamma >= 1.0 ? gamma - 1.0 : 0.0);
      closest = std::min(closest, outside);
    }
  }
  return finish("forbidden_zone", inside, 0, inside == 0,
                "closest branch frequency to the zone edges: " + fmt(closest), clock);
}

// 4. alpha = 0: gamma_plus = c k and v_g = v_ph.
CheckResult check_rest_fluid_reduction(const SuiteOptions& options) {
  Stopwatch clock;
  InstanceSampler sampler(options.seed + 4);
  constexpr double kTol = 1e-12;
  double worst_gamma = 0;
  double worst_velocity = 0;
  for (int n = 0; n < 1000; ++n) {
    Instance inst = sampler.next();
    inst.params.alpha = 0;
    const double ck = inst.params.c * inst.kvec.norm();
    const double gamma = frequency_branches(inst.params, inst.kvec).gamma_plus;
    worst_gamma = std::max(worst_gamma, std::abs(gamma - ck) / ck);
    const auto vg = group_velocity(inst.params, inst.kvec, gamma);
    const auto vph = phase_velocity(inst.kvec, gamma);
    worst_velocity = std::max(worst_velocity, (vg - vph).cwiseAbs().maxCoeff() / inst.params.c);
  }
  const double measured = std::max(worst_gamma, worst_velocity);
  return finish("rest_fluid_reduction", measured, kTol, measured <= kTol,
                "gamma_plus vs c k: " + fmt(worst_gamma) + ", v_g vs v_ph (per unit c): " +
                    fmt(worst_velocity),
                clock);
}

// 5. theta = 0: v_g = v_ph on the acoustic branch gamma = c k.
CheckResult check_axial_reduction(const SuiteOptions& options) {
  Stopwatch clock;
  InstanceSampler sampler(options.seed + 5);
  constexpr double kTol = 1e-12;
  double worst = 0;
  int used = 0;
  while (used < 1000) {
    const auto params = sampler.params();
    const WaveVector<double> kvec{0.0, sampler.sign() * sampler.magnitude()};
    const double ck = params.c * kvec.norm();
    if (std::abs(ck - params.alpha) <= 1e-9 * std::max(ck, params.alpha)) continue;  // branch crossing
    const auto branches = frequency_branches(params, kvec);
    const double gamma = ck < params.alpha ? branches.gamma_minus : branches.gamma_plus;
    const auto vg = group_velocity(params, kvec, gamma);
    const auto vph = phase_velocity(kvec, gamma);
    worst = std::max(worst, (vg - vph).cwiseAbs().maxCoeff() / params.c);
    ++used;
  }
  return finish("axial_reduction", worst, kTol, worst <= kTol, "acoustic branch gamma = c k", clock);
}

// 6. theta = pi/2, gamma > alpha: |v_g| |v_ph| = c^2 and |v_g| < |v_ph|.
CheckResult check_perpendicular_normal_dispersion(const SuiteOptions& options) {
  Stopwatch clock;
  InstanceSampler sampler(options.seed + 6);
  constexpr double kTol = 1e-10;
  double worst = 0;
  int not_slower = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto params = sampler.params();
    const WaveVector<double> kvec{sampler.sign() * sampler.magnitude(), 0.0};
    const double gamma = frequency_branches(params, kvec).gamma_plus;
    const double vg = group_velocity(params, kvec, gamma).norm();
    const double vph = phase_velocity(kvec, gamma).norm();
    worst = std::max(worst, std::abs(vg * vph / (params.c * params.c) - 1));
    if (!(vg < vph)) ++not_slower;
  }
  return finish("perpendicular_normal_dispersion", worst, kTol, worst <= kTol && not_slower == 0,
                std::to_string(not_slower) + " instances with |v_g| >= |v_ph|", clock);
}

// 7. Closed-form group velocity vs Richardson-extrapolated central differences.
CheckResult check_group_velocity_gradient(const SuiteOptions& options) {
  Stopwatch clock;
  InstanceSampler sampler(options.seed + 7);
  constexpr double kTol = 1e-6;
  double worst = 0;
  int used = 0;
  int rejected = 0;
  while (used < 1000) {
    const Instance inst = sampler.next();
    const Branch branch = used % 2 == 0 ? Branch::plus : Branch::minus;
    const double k = inst.kvec.norm();
    const double ck = inst.params.c * k;
    const double sum = inst.params.alpha * inst.params.alpha + ck * ck;
    // Nondegenerate: away from the branch crossing, the inertial kink at
    // k3 = 0, the flat inertial branch at alpha = 0, and tiny |k|.
    if ((branch == Branch::minus && inst.params.alpha == 0) || k < 1e-2 ||
        std::abs(inst.kvec.k3) < 1e-2 * k ||
        std::sqrt(dispersion_discriminant(inst.params, inst.kvec)) < 1e-3 * sum) {
      ++rejected;
      continue;
    }
    const double gamma = frequency_branches(inst.params, inst.kvec)[branch];
    const auto vg = group_velocity(inst.params, inst.kvec, gamma);
    const auto fd = finite_difference_group_velocity(inst.params, inst.kvec, branch);
    worst = std::max(worst, (fd - vg).norm() / vg.norm());
    ++used;
  }
  return finish("group_velocity_gradient", worst, kTol, worst <= kTol,
                "relative error in the vector norm; " + std::to_string(rejected) +
                    " near-degenerate draws skipped",
                clock);
}

// 8. 2 gamma^2 - alpha^2 - c^2 k^2 = +sqrt(D) on the acoustic branch, -sqrt(D) on the inertial one.
CheckResult check_denominator_identity(const SuiteOptions& options) {
  Stopwatch clock;
  InstanceSampler sampler(options.seed + 8);
  constexpr double kTol = 1e-10;
  double worst_plus = 0;
  double worst_minus = 0;
  for (int n = 0; n < 1000; ++n) {
    const Instance inst = sampler.next();
    const double a2 = inst.params.alpha * inst.params.alpha;
    const double c2k2 = inst.params.c * inst.params.c * inst.kvec.squared_norm();
    const double root_d = std::sqrt(dispersion_discriminant(inst.params, inst.kvec));
    const auto br = frequency_branches(inst.params, inst.kvec);
    const double den_plus = 2 * br.gamma_plus * br.gamma_plus - a2 - c2k2;
    const double den_minus = 2 * br.gamma_minus * br.gamma_minus - a2 - c2k2;
    worst_plus = std::max(worst_plus, std::abs(den_plus - root_d) / root_d);
    worst_minus = std::max(worst_minus, std::abs(den_minus + root_d) / root_d);
  }
  const double measured = std::max(worst_plus, worst_minus);
  return finish("denominator_identity", measured, kTol, measured <= kTol,
                "acoustic " + fmt(worst_plus) + ", inertial " + fmt(worst_minus), clock);
}

// 9. Simulated probe frequency matches the analytic branch.
CheckResult check_end_to_end_dispersion(const SuiteOptions&) {
  Stopwatch clock;
  const FluidParams<double> params = eigenmode_params();
  const Grid grid = angle_grid();
  struct Case {
    int m1, m3;
  };
  // theta = 0, pi/6, pi/3, pi/2 (two wave vectors each).
  const Case cases[] = {{0, 1}, {0, 2}, {1, 3}, {2, 6}, {1, 1}, {2, 2}, {1, 0}, {2, 0}};

  double worst = 0;
  int runs = 0;
  std::ostringstream detail;
  for (const auto& cs : cases) {
    const auto kvec = grid.wave_vector(cs.m1, cs.m3);
    for (Branch branch : {Branch::minus, Branch::plus}) {
      PlaneWaveMode<double> mode;
      try {
        mode = build_eigenmode(params, kvec, branch);
      } catch (const PolarizationSingularity&) {
        continue;  // gamma = 0 or gamma = alpha: no pressure-normalized mode
      }
      SimConfig config;
      config.params = params;
      config.grid = grid;
      config.dt = default_time_step(params, grid);
      const double periods = 16;
      config.n_steps = std::max(1024, static_cast<int>(std::ceil(periods * 2 * kPi / mode.gamma / config.dt)));
      config.record_every = config.n_steps;

      const RunRecord record = run(config, sample_mode(grid, mode));
      std::vector<double> pressure;
      pressure.reserve(record.probe.size());
      for (const auto& s : record.probe) pressure.push_back(s.values(3));
      const auto estimate = extract_frequency(pressure, config.dt);
      const double allowed = std::max(1e-3 * mode.gamma, estimate.resolution);
      const double err = std::abs(estimate.peak_frequency - mode.gamma) / allowed;
      worst = std::max(worst, err);
      ++runs;
      detail << "(" << cs.m1 << "," << cs.m3 << "," << to_string(branch) << ") gamma=" << fmt(mode.gamma, 8)
             << " peak=" << fmt(estimate.peak_frequency, 8) << "; ";
    }
  }
  const double secs = clock.seconds();
  detail << runs << " runs";
  return finish("end_to_end_dispersion", worst, 1.0, worst <= 1.0 && secs < 30.0, detail.str(), clock);
}

// 10. Relative energy drift over 1e3 RK4 steps at the default dt.
CheckResult check_energy_conservation(const SuiteOptions& options) {
  Stopwatch clock;
  const FluidParams<double> params{1.0, 1.0};
  const Grid grid{64, 64, 2 * kPi, 2 * kPi};
  constexpr int kBand = 1;  // |m1|, |m3| <= kBand

  std::mt19937_64 rng(options.seed + 10);
  std::normal_distribution<double> normal;
  FieldState state = FieldState::zeros(grid);
  for (Field f : {Field::v1, Field::v2, Field::v3, Field::p}) {
    RealField& u = state.field(f);
    for (int m1 = -kBand; m1 <= kBand; ++m1) {
      for (int m3 = -kBand; m3 <= kBand; ++m3) {
        const double a = normal(rng), b = normal(rng);
        const auto kv = grid.wave_vector(m1, m3);
        for (int j = 0; j < grid.n3; ++j)
          for (int i = 0; i < grid.n1; ++i) {
            const double phase = kv.k1 * grid.x1(i) + kv.k3 * grid.x3(j);
            u(i, j) += a * std::cos(phase) + b * std::sin(phase);
          }
      }
    }
  }

  SimConfig config;
  config.params = params;
  config.grid = grid;
  config.dt = default_time_step(params, grid);
  config.n_steps = 1000;
  Integrator integrator(config);
  const double e0 = total_energy(params, grid, state);
  double drift = 0;
  for (int n = 0; n < config.n_steps; ++n) {
    state = integrator.step(state);
    drift = std::max(drift, std::abs(total_energy(params, grid, state) - e0) / e0);
  }
  constexpr double kTol = 1e-8;
  return finish("energy_conservation", drift, kTol, drift <= kTol,
                "64x64 grid, modes |m| <= 1, dt = " + fmt(config.dt), clock);
}

// 11. The discrete fourth-order operator residual of every field is second order in the spacing.
CheckResult check_operator_residual(const SuiteOptions&) {
  Stopwatch clock;
  const FluidParams<double> params = eigenmode_params();
  const Grid grid = eigenmode_grid();
  const auto mode = build_eigenmode(params, WaveVector<double>{1.0, 1.0}, Branch::plus);

  SimConfig config;
  config.params = params;
  config.grid = grid;
  config.dt = default_time_step(params, grid);
  config.record_every = 2;
  config.n_steps = 2 * static_cast<int>(std::ceil(2 * kPi / mode.gamma / config.dt));
  const RunRecord record = run(config, sample_mode(grid, mode));

  std::vector<FieldState> coarse;
  for (std::size_t n = 0; n < record.snapshots.size(); n += 2) coarse.push_back(record.snapshots[n]);

  double worst = 0;
  std::ostringstream detail;
  bool ok = true;
  for (Field f : {Field::p, Field::v1, Field::v2, Field::v3}) {
    const double fine = operator_residual(params, grid, record.snapshots, f);
    const double wide = operator_residual(params, grid, coarse, f);
    const double ratio = wide / fine;
    ok = ok && ratio >= 3.5 && ratio <= 4.5;
    worst = std::max(worst, std::abs(ratio - 4));
    static constexpr const char* names[] = {"v1", "v2", "v3", "p"};
    detail << names[static_cast<int>(f)] << ": " << fmt(wide) << " -> " << fmt(fine) << " (x" << fmt(ratio, 4)
           << "); ";
  }
  detail << "measured is max |ratio - 4|";
  return finish("operator_residual", worst, 0.5, ok, detail.str(), clock);
}

// 12. Per-period eigenmode error shrinks as dt^4.
CheckResult check_integrator_order(const SuiteOptions&) {
  Stopwatch clock;
  const FluidParams<double> params = eigenmode_params();
  const Grid grid = eigenmode_grid();
  const auto mode = build_eigenmode(params, WaveVector<double>{1.0, 1.0}, Branch::plus);
  const FieldState initial = sample_mode(grid, mode);
  const double period = 2 * kPi / mode.gamma;

  std::vector<double> log_dt, log_err;
  std::ostringstream detail;
  for (int steps : {32, 64, 128, 256}) {
    SimConfig config;
    config.params = params;
    config.grid = grid;
    config.dt = period / steps;
    config.n_steps = steps;
    Integrator integrator(config);
    FieldState state = initial;
    for (int n = 0; n < steps; ++n) state = integrator.step(state);
    const double err = relative_state_error(state, initial);
    log_dt.push_back(std::log(config.dt));
    log_err.push_back(std::log(err));
    detail << "T/" << steps << ": " << fmt(err) << "; ";
  }
  const auto n = static_cast<double>(log_dt.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < log_dt.size(); ++i) {
    mx += log_dt[i] / n;
    my += log_err[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < log_dt.size(); ++i) {
    sxy += (log_dt[i] - mx) * (log_err[i] - my);
    sxx += (log_dt[i] - mx) * (log_dt[i] - mx);
  }
  const double slope = sxy / sxx;
  detail << "least-squares slope";
  return finish("integrator_order", slope, 0.2, std::abs(slope - 4) <= 0.2, detail.str(), clock);
}

std::vector<CheckResult> run_acceptance(Scope scope, const SuiteOptions& options) {
  std::vector<CheckResult> results;
  if (scope != Scope::simulator) {
    results.push_back(check_dispersion_residual(options));
    results.push_back(check_oracle_equivalence(options));
    results.push_back(check_forbidden_zone(options));
    results.push_back(check_rest_fluid_reduction(options));
    results.push_back(check_axial_reduction(options));
    results.push_back(check_perpendicular_normal_dispersion(options));
    results.push_back(check_group_velocity_gradient(options));
    results.push_back(check_denominator_identity(options));
  }
  if (scope != Scope::dispersion) {
    results.push_back(check_end_to_end_dispersion(options));
    results.push_back(check_energy_conservation(options));
    results.push_back(check_operator_residual(options));
    results.push_back(check_integrator_order(options));
  }
  return results;
}

}  // namespace rotowave::verify
