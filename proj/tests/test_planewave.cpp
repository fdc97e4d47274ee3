#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "generators.hpp"
#include "rotowave/errors.hpp"
#include "rotowave/planewave.hpp"

using namespace rotowave;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct substitution of u = Re(A e^{i(k.x + gamma t)}) into the four equations,
// written out here rather than taken from modal_residuals.
Eigen::Vector4cd substitute(const FluidParams<double>& params, const PlaneWaveMode<double>& m) {
  const Complex i{0, 1};
  const auto& a = m.amplitudes;
  const double g = m.gamma, k1 = m.kvec.k1, k3 = m.kvec.k3, al = params.alpha;
  Eigen::Vector4cd r;
  r(0) = i * g * a(0) - (al * a(1) - i * k1 * a(3));  // dv1/dt = alpha v2 - dp/dx1
  r(1) = i * g * a(1) - (-al * a(0));                 // dv2/dt = -alpha v1
  r(2) = i * g * a(2) - (-i * k3 * a(3));             // dv3/dt = -dp/dx3
  r(3) = i * g * a(3) - (-params.c * params.c * (i * k1 * a(0) + i * k3 * a(2)));
  return r;
}

}  // namespace

TEST(Eigenmode, AxialAcousticRestFluid) {
  const auto m = build_eigenmode(FluidParams<double>{0, 1}, WaveVector<double>{0, 1}, Branch::plus);
  EXPECT_EQ(m.gamma, 1.0);
  EXPECT_EQ(m.amplitudes(0), Complex(0, 0));
  EXPECT_EQ(m.amplitudes(1), Complex(0, 0));
  EXPECT_EQ(m.amplitudes(2), Complex(-1, 0));
  EXPECT_EQ(m.amplitudes(3), Complex(1, 0));
}

TEST(Eigenmode, PerpendicularAcoustic) {
  const auto m = build_eigenmode(FluidParams<double>{1, 1}, WaveVector<double>{1, 0}, Branch::plus);
  EXPECT_NEAR(m.amplitudes(0).real(), -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(m.amplitudes(0).imag(), 0.0, 1e-15);
  EXPECT_NEAR(m.amplitudes(1).real(), 0.0, 1e-15);
  EXPECT_NEAR(m.amplitudes(1).imag(), -1.0, 1e-15);
  EXPECT_EQ(m.amplitudes(2), Complex(0, 0));
  EXPECT_LE(substitute(FluidParams<double>{1, 1}, m).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Eigenmode, SingularPolarizationsRejected) {
  // gamma_minus = 0 at k3 = 0, gamma = alpha on the axis.
  EXPECT_THROW(build_eigenmode(FluidParams<double>{1, 1}, WaveVector<double>{1, 0}, Branch::minus),
               PolarizationSingularity);
  EXPECT_THROW(build_eigenmode(FluidParams<double>{1, 1}, WaveVector<double>{0, 3}, Branch::minus),
               PolarizationSingularity);
}

TEST(Eigenmode, ContinuityHoldsOnTheBranch) {
  const FluidParams<double> params{2, 1};
  for (Branch b : {Branch::minus, Branch::plus}) {
    const auto m = build_eigenmode(params, WaveVector<double>{1, 1}, b);
    const Complex i{0, 1};
    const Complex cont = i * m.gamma * m.amplitudes(3) + i * m.kvec.k1 * m.amplitudes(0) + i * m.kvec.k3 * m.amplitudes(2);
    EXPECT_LE(std::abs(cont), 1e-14);
  }
}

TEST(EigenmodeProperty, AllModalEquationsVanish) {
  rotowave::testing::Gen gen(201);
  int checked = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto params = gen.params();
    const auto kvec = gen.wave_vector(10);
    const Branch b = gen.branch();
    PlaneWaveMode<double> m;
    try {
      m = build_eigenmode(params, kvec, b);
    } catch (const PolarizationSingularity&) {
      continue;
    }
    // Residuals scale with gamma times the largest amplitude.
    const double scale = std::max(1.0, m.gamma) * std::max(1.0, m.amplitudes.cwiseAbs().maxCoeff()) *
                         std::max(1.0, params.c * params.c) * std::max(1.0, kvec.norm());
    ASSERT_LE(modal_residuals(params, m).cwiseAbs().maxCoeff(), 1e-10 * scale) << n;
    ASSERT_LE(substitute(params, m).cwiseAbs().maxCoeff(), 1e-10 * scale) << n;
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(EigenmodeProperty, CoriolisCouplingVanishesWithoutRotation) {
  const FluidParams<double> params{1e-8, 1};
  for (const auto& kvec : {WaveVector<double>{1, 1}, WaveVector<double>{3, 0.5}, WaveVector<double>{0.2, 2}}) {
    const auto m = build_eigenmode(params, kvec, Branch::plus);
    EXPECT_LE(std::abs(m.amplitudes(1)), 1e-7);
  }
}

TEST(EvaluateMode, OriginGivesRealParts) {
  const auto m = build_eigenmode(FluidParams<double>{2, 1}, WaveVector<double>{1, 1}, Branch::plus);
  const auto u = evaluate_mode(m, Vector2<double>(0, 0), 0.0);
  for (int f = 0; f < 4; ++f) EXPECT_EQ(u(f), m.amplitudes(f).real());
}

TEST(EvaluateMode, PeriodicInTime) {
  const auto m = build_eigenmode(FluidParams<double>{2, 1}, WaveVector<double>{1, 1}, Branch::minus);
  const Vector2<double> x(0.3, -1.7);
  const auto a = evaluate_mode(m, x, 0.4);
  const auto b = evaluate_mode(m, x, 0.4 + 2 * kPi / m.gamma);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EvaluateMode, HalfWavelengthFlipsSign) {
  const auto m = build_eigenmode(FluidParams<double>{0, 1}, WaveVector<double>{0, 1}, Branch::plus);
  const auto u = evaluate_mode(m, Vector2<double>(0, kPi), 0.0);
  EXPECT_NEAR(u(0), 0.0, 1e-15);
  EXPECT_NEAR(u(1), 0.0, 1e-15);
  EXPECT_NEAR(u(2), 1.0, 1e-15);
  EXPECT_NEAR(u(3), -1.0, 1e-15);
}

TEST(EvaluateMode, RateIsTimeDerivative) {
  const auto m = build_eigenmode(FluidParams<double>{2, 1.5}, WaveVector<double>{0.7, -1.2}, Branch::plus);
  const Vector2<double> x(1.1, 0.4);
  const double t = 0.9, h = 1e-5;
  const auto fd = ((evaluate_mode(m, x, t + h) - evaluate_mode(m, x, t - h)) / (2 * h)).eval();
  EXPECT_LE((fd - evaluate_mode_rate(m, x, t)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(EvaluateMode, ExactSolutionUnderFiniteDifferences) {
  // Centered differences of the evaluated fields satisfy the system to O(h^2).
  const FluidParams<double> params{1.3, 0.8};
  const auto m = build_eigenmode(params, WaveVector<double>{0.9, 0.6}, Branch::minus);
  const Vector2<double> x(0.25, 0.75);
  const double t = 0.3;
  auto residual = [&](double h) {
    auto u = [&](double dx1, double dx3, double dt) { return evaluate_mode(m, Vector2<double>(x(0) + dx1, x(1) + dx3), t + dt); };
    const auto ut = ((u(0, 0, h) - u(0, 0, -h)) / (2 * h)).eval();
    const auto u1 = ((u(h, 0, 0) - u(-h, 0, 0)) / (2 * h)).eval();
    const auto u3 = ((u(0, h, 0) - u(0, -h, 0)) / (2 * h)).eval();
    const auto u0 = u(0, 0, 0);
    const double c2 = params.c * params.c;
    Eigen::Vector4d r;
    r << ut(0) - params.alpha * u0(1) + u1(3), ut(1) + params.alpha * u0(0), ut(2) + u3(3),
        ut(3) + c2 * (u1(0) + u3(2));
    return r.cwiseAbs().maxCoeff();
  };
  const double coarse = residual(1e-2), fine = residual(5e-3);
  EXPECT_LE(coarse, 1e-3);
  EXPECT_NEAR(coarse / fine, 4.0, 0.2);
}

TEST(Linearity, Examples) {
  EXPECT_EQ(linearity_parameter(0.01, 1.0), 0.01);
  EXPECT_EQ(linearity_parameter(0.0, 3.0), 0.0);
  const WaveVector<double> kvec{1, 0};
  const double g = frequency_branches(FluidParams<double>{1, 1}, kvec).gamma_plus;
  const double eps = linearity_parameter(0.1, phase_velocity(kvec, g).norm());
  EXPECT_NEAR(eps, 0.1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(eps, 0.0707, 1e-4);
  EXPECT_THROW(linearity_parameter(0.1, 0.0), std::invalid_argument);
}
