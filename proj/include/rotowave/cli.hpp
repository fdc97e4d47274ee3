#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotowave/acceptance.hpp"
#include "rotowave/dispersion.hpp"
#include "rotowave/simulator.hpp"

namespace rotowave::cli {

/// Exit codes of the rotowave executable.
enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2 };

/// Malformed or inconsistent configuration; the message names the line or field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class SweepVariable { wavenumber, frequency };

struct SweepSpec {
  FluidParams<double> params;
  std::vector<double> theta_list;  ///< radians, each in [0, pi/2]
  SweepVariable variable = SweepVariable::wavenumber;
  double range_min = 0;
  double range_max = 0;
  int n_samples = 2;
  std::filesystem::path output_path;

  void validate() const;
  std::vector<double> samples() const;
};

/// {"alpha", "c", "theta": [..], "k_range" | "gamma_range": {"min", "max", "n"}}
SweepSpec parse_sweep_config(const std::string& json_text, const std::filesystem::path& output_path);

inline const std::vector<std::string> kDispersionColumns = {
    "theta",    "k",        "gamma_minus", "gamma_plus", "vg1_plus", "vg3_plus",
    "vg1_minus", "vg3_minus", "vph1_plus", "vph3_plus",  "regime"};

/// Writes the sweep table (header + one row per (theta, sample)).
void cmd_dispersion(const SweepSpec& spec);

struct SimulateSpec {
  SimConfig sim;
  int m1 = 1;
  int m3 = 1;
  Branch branch = Branch::plus;
  double amplitude = 0.01;
  double dt_factor = 0.1;
};

/// {"alpha", "c", "grid": {"n1","n3","L1","L3"}, "mode": {"m1","m3","branch","amplitude"},
///  "dt_factor", "n_steps", "record_every", "probe": [i, j]}
SimulateSpec parse_simulate_config(const std::string& json_text);

struct SimulateSummary {
  double gamma = 0;
  double phase_speed = 0;
  double epsilon = 0;  ///< max |v| / |v_ph| over the recorded snapshots
  bool epsilon_warning = false;
  double dt = 0;
};

/// Runs the configured eigenmode and writes probe.csv, energy.csv,
/// snapshots.bin and summary.json into out_dir. The stability bound is
/// checked before anything is written.
SimulateSummary cmd_simulate(const SimulateSpec& spec, const std::filesystem::path& out_dir);

/// Runs the acceptance checks and writes the JSON report
/// {"scope", "passed", "checks": [{"check_name", "status", "measured", "tolerance", "detail"}]}.
/// Returns kSuccess iff every check passed.
int cmd_verify(verify::Scope scope, const std::filesystem::path& report_path,
               const verify::SuiteOptions& options, std::ostream& log);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace rotowave::cli
