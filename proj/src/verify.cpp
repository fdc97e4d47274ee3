#include "rotowave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "rotowave/errors.hpp"
#include "rotowave/spectral.hpp"

namespace rotowave::verify {

namespace {

constexpr double kBisectionWidth = 1e-13;

template <typename F>
double bisect(F&& f, double lo, double hi) {
  double f_lo = f(lo);
  for (int iter = 0; iter < 200 && hi - lo > kBisectionWidth; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <typename F>
double golden_minimum(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  for (int iter = 0; iter < 300 && hi - lo > kBisectionWidth; ++iter) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> quartic_roots_bruteforce(const FluidParams<double>& params,
                                             const WaveVector<double>& kvec, int samples) {
  if (!(kvec.norm() > 0)) throw DegenerateWaveVector("quartic_roots_bruteforce: zero wave vector");
  if (samples < 16) throw std::invalid_argument("quartic_roots_bruteforce: too few samples");

  auto residual = [&](double gamma) { return dispersion_residual(params, kvec, gamma); };
  const double upper = params.alpha + params.c * kvec.norm() + 1;
  const double h = upper / samples;
  std::vector<double> values(samples + 1);
  for (int i = 0; i <= samples; ++i) values[i] = residual(i * h);

  std::vector<double> roots;
  if (values[0] == 0) roots.push_back(0);

  for (int i = 0; i < samples; ++i) {
    const double fa = values[i];
    const double fb = values[i + 1];
    if (fb == 0) {
      roots.push_back((i + 1) * h);
      // Touching zero: a double root.
      if (i + 2 <= samples && fa != 0 && (fa < 0) == (values[i + 2] < 0) && values[i + 2] != 0)
        roots.push_back((i + 1) * h);
    } else if (fa != 0 && (fa < 0) != (fb < 0)) {
      roots.push_back(bisect(residual, i * h, (i + 1) * h));
    }
  }

  // Both roots inside one sampling cell, or a double root: the samples never
  // change sign, but the residual has a local minimum at or below zero.
  auto probe_minimum = [&](double lo, double hi) {
    const double m = golden_minimum(residual, lo, hi);
    const double fm = residual(m);
    const double tol = 1e-10 * std::max(1.0, std::pow(m, 4));
    if (fm < 0) {
      if (residual(lo) == 0)
        roots.push_back(lo);
      else
        roots.push_back(bisect(residual, lo, m));
      roots.push_back(bisect(residual, m, hi));
    } else if (fm <= tol) {
      roots.push_back(m);
      roots.push_back(m);
    }
  };

  if (values[0] >= 0 && values[1] >= values[0] && roots.size() < 2) {
    if (values[0] == 0 && !roots.empty()) roots.clear();
    probe_minimum(0, h);
  }
  for (int i = 1; i < samples && roots.size() < 2; ++i) {
    if (values[i] > 0 && values[i - 1] >= values[i] && values[i + 1] >= values[i])
      probe_minimum((i - 1) * h, (i + 1) * h);
  }

  std::sort(roots.begin(), roots.end());
  return roots;
}

Velocity2<double> finite_difference_group_velocity(const FluidParams<double>& params,
                                                   const WaveVector<double>& kvec, Branch branch,
                                                   double step) {
  const double k = kvec.norm();
  if (!(k > 2 * step)) throw DegenerateGroupVelocity("finite_difference_group_velocity: |k| within the stencil");
  if (branch == Branch::minus && params.alpha > 0 && std::abs(kvec.k3) <= 2 * step)
    throw DegenerateGroupVelocity("finite_difference_group_velocity: inertial branch kink (k3 = 0) within the stencil");

  // sqrt(D) moves by about 2 c^2 k per unit step in k; closer than a few stencil
  // widths to a crossing the branches are not smooth on the stencil scale.
  const double near_crossing = 10 * 2 * params.c * params.c * (k + step) * step;
  auto gamma_at = [&](double k1, double k3) {
    const WaveVector<double> kv{k1, k3};
    const double ck = params.c * kv.norm();
    const double sum = params.alpha * params.alpha + ck * ck;
    if (std::sqrt(dispersion_discriminant(params, kv)) <= std::max(1e-8 * sum, near_crossing))
      throw DegenerateGroupVelocity("finite_difference_group_velocity: branch crossing within the stencil");
    return frequency_branches(params, kv)[branch];
  };
  auto central = [&](double h) -> Velocity2<double> {
    return {(gamma_at(kvec.k1 + h, kvec.k3) - gamma_at(kvec.k1 - h, kvec.k3)) / (2 * h),
            (gamma_at(kvec.k1, kvec.k3 + h) - gamma_at(kvec.k1, kvec.k3 - h)) / (2 * h)};
  };
  return (4 * central(step / 2) - central(step)) / 3;
}

FrequencyEstimate extract_frequency(std::span<const double> series, double dt) {
  const auto n = static_cast<Eigen::Index>(series.size());
  if (n < 64) throw std::invalid_argument("extract_frequency: need at least 64 samples");
  if (!(dt > 0)) throw std::invalid_argument("extract_frequency: dt must be > 0");
  if (std::all_of(series.begin(), series.end(), [](double x) { return x == 0; }))
    throw std::invalid_argument("extract_frequency: all-zero series");

  Eigen::VectorXd windowed(n);
  double window_sum = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = 0.5 * (1 - std::cos(2 * std::numbers::pi * i / n));
    windowed(i) = w * series[i];
    window_sum += w;
  }
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum;
  fft.fwd(spectrum, windowed);

  const Eigen::Index half = n / 2;
  Eigen::Index peak = 0;
  for (Eigen::Index i = 1; i <= half; ++i)
    if (std::abs(spectrum(i)) > std::abs(spectrum(peak))) peak = i;

  // Real input: |X(-1)| = |X(1)| and |X(N/2+1)| = |X(N/2-1)|.
  const double left = std::abs(spectrum(peak == 0 ? 1 : peak - 1));
  const double centre = std::abs(spectrum(peak));
  const double right = std::abs(spectrum(peak == half ? half - 1 : peak + 1));

  double offset = 0;
  double log_peak = std::log(centre);
  if (left > 0 && right > 0) {
    const double la = std::log(left), lb = std::log(centre), lc = std::log(right);
    const double curvature = la - 2 * lb + lc;
    if (curvature < 0) {
      offset = std::clamp(0.5 * (la - lc) / curvature, -0.5, 0.5);
      log_peak = lb - 0.25 * (la - lc) * offset;
    }
  }

  FrequencyEstimate estimate;
  estimate.resolution = 2 * std::numbers::pi / (n * dt);
  estimate.peak_frequency = std::max(0.0, (peak + offset) * estimate.resolution);
  estimate.amplitude = std::exp(log_peak) * (peak == 0 ? 1.0 : 2.0) / window_sum;
  return estimate;
}

double operator_residual(const FluidParams<double>& params, const Grid& grid,
                         std::span<const FieldState> snapshots, Field field) {
  params.validate();
  const auto count = snapshots.size();
  if (count < 5) throw std::invalid_argument("operator_residual: need at least 5 snapshots");
  const double tau = snapshots[1].t - snapshots[0].t;
  if (!(tau > 0)) throw std::invalid_argument("operator_residual: snapshots must be time-ordered");
  for (std::size_t n = 1; n < count; ++n) {
    if (std::abs(snapshots[n].t - snapshots[n - 1].t - tau) > 1e-6 * tau)
      throw std::invalid_argument("operator_residual: snapshots must be equally spaced");
  }

  Spectral2D spectral(grid);
  const double a2 = params.alpha * params.alpha;
  const double inv_c2 = 1 / (params.c * params.c);
  const double tau2 = tau * tau;
  const double tau4 = tau2 * tau2;

  double residual_sq = 0;
  double field_sq = 0;
  for (std::size_t n = 2; n + 2 < count; ++n) {
    const RealField& um2 = snapshots[n - 2].field(field);
    const RealField& um1 = snapshots[n - 1].field(field);
    const RealField& u0 = snapshots[n].field(field);
    const RealField& up1 = snapshots[n + 1].field(field);
    const RealField& up2 = snapshots[n + 2].field(field);

    const RealField u_tttt = (um2 - 4 * um1 + 6 * u0 - 4 * up1 + up2) / tau4;
    const RealField u_tt = (um1 - 2 * u0 + up1) / tau2;
    const RealField op = inv_c2 * u_tttt - spectral.laplacian(u_tt) + a2 * inv_c2 * u_tt -
                         a2 * spectral.second_derivative(u0, Axis::x3);
    residual_sq += op.square().sum();
    field_sq += u0.square().sum();
  }
  if (field_sq == 0) return residual_sq == 0 ? 0.0 : std::sqrt(residual_sq);
  return std::sqrt(residual_sq / field_sq);
}

}  // namespace rotowave::verify
