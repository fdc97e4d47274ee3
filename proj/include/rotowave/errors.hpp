#pragma once

#include <stdexcept>
#include <string>

namespace rotowave {

/// Wave vector with zero magnitude where a direction is required.
class DegenerateWaveVector : public std::domain_error {
 public:
  explicit DegenerateWaveVector(const std::string& what) : std::domain_error(what) {}
};

/// Group velocity undefined: branch crossing or non-smooth branch.
class DegenerateGroupVelocity : public std::domain_error {
 public:
  explicit DegenerateGroupVelocity(const std::string& what) : std::domain_error(what) {}
};

/// A closed-form expression hit its pole (e.g. the group-angle formula at k3 = 0).
class FormulaSingularity : public std::domain_error {
 public:
  explicit FormulaSingularity(const std::string& what) : std::domain_error(what) {}
};

/// Eigenmode polarization ratios are singular at gamma in {0, alpha}.
class PolarizationSingularity : public std::domain_error {
 public:
  explicit PolarizationSingularity(const std::string& what) : std::domain_error(what) {}
};

/// Time step exceeds the explicit Runge-Kutta stability bound.
class StabilityError : public std::runtime_error {
 public:
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite value found in a field.
class NonFiniteField : public std::runtime_error {
 public:
  explicit NonFiniteField(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rotowave
