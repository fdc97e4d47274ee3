#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotowave::verify {

enum class Scope { dispersion, simulator, all };

std::optional<Scope> parse_scope(std::string_view text);
std::string_view to_string(Scope scope);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0;
  double tolerance = 0;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 0x5eed2006;
  /// Added to every dispersion residual in the residual check; nonzero values
  /// exist only to demonstrate that a broken build is reported as failing.
  double residual_perturbation = 0;
};

/// Runs the acceptance checks belonging to the scope, in order.
std::vector<CheckResult> run_acceptance(Scope scope, const SuiteOptions& options = {});

// Individual checks, numbered as in the README.
CheckResult check_dispersion_residual(const SuiteOptions& options);
CheckResult check_oracle_equivalence(const SuiteOptions& options);
CheckResult check_forbidden_zone(const SuiteOptions& options);
CheckResult check_rest_fluid_reduction(const SuiteOptions& options);
CheckResult check_axial_reduction(const SuiteOptions& options);
CheckResult check_perpendicular_normal_dispersion(const SuiteOptions& options);
CheckResult check_group_velocity_gradient(const SuiteOptions& options);
CheckResult check_denominator_identity(const SuiteOptions& options);
CheckResult check_end_to_end_dispersion(const SuiteOptions& options);
CheckResult check_energy_conservation(const SuiteOptions& options);
CheckResult check_operator_residual(const SuiteOptions& options);
CheckResult check_integrator_order(const SuiteOptions& options);

}  // namespace rotowave::verify
