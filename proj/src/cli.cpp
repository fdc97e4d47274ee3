#include "rotowave/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rotowave/errors.hpp"
#include "rotowave/io.hpp"
#include "rotowave/planewave.hpp"

namespace rotowave::cli {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

const json& require(const json& obj, const std::string& prefix, const std::string& key) {
  if (!obj.is_object()) throw ConfigError("config: '" + (prefix.empty() ? "<root>" : prefix) + "' must be an object");
  if (!obj.contains(key)) throw ConfigError("config: missing field '" + join(prefix, key) + "'");
  return obj.at(key);
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError("config: field '" + path + "' must be a number");
  return value.get<double>();
}

int as_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) throw ConfigError("config: field '" + path + "' must be an integer");
  return value.get<int>();
}

double number_or(const json& obj, const std::string& prefix, const std::string& key, double fallback) {
  return obj.contains(key) ? as_number(obj.at(key), join(prefix, key)) : fallback;
}

int integer_or(const json& obj, const std::string& prefix, const std::string& key, int fallback) {
  return obj.contains(key) ? as_integer(obj.at(key), join(prefix, key)) : fallback;
}

FluidParams<double> parse_params(const json& root) {
  FluidParams<double> params{as_number(require(root, "", "alpha"), "alpha"),
                             as_number(require(root, "", "c"), "c")};
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return params;
}

std::optional<Velocity2<double>> try_group_velocity(const FluidParams<double>& params,
                                                    const WaveVector<double>& kvec, double gamma) {
  try {
    return group_velocity(params, kvec, gamma);
  } catch (const DegenerateGroupVelocity&) {
    return std::nullopt;
  }
}

std::string component(const std::optional<Velocity2<double>>& v, int index) {
  return v ? io::format_number((*v)(index)) : std::string(io::kMissing);
}

std::vector<std::string> sweep_row(const FluidParams<double>& params, double theta, double k,
                                   RegimeTag regime) {
  const auto kvec = WaveVector<double>::from_polar(k, theta);
  const auto br = frequency_branches(params, kvec);
  const auto vg_plus = try_group_velocity(params, kvec, br.gamma_plus);
  const auto vg_minus = try_group_velocity(params, kvec, br.gamma_minus);
  const auto vph = phase_velocity(kvec, br.gamma_plus);
  return {io::format_number(theta),
          io::format_number(k),
          io::format_number(br.gamma_minus),
          io::format_number(br.gamma_plus),
          component(vg_plus, 0),
          component(vg_plus, 1),
          component(vg_minus, 0),
          component(vg_minus, 1),
          io::format_number(vph(0)),
          io::format_number(vph(1)),
          std::string(to_string(regime))};
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void SweepSpec::validate() const {
  params.validate();
  if (theta_list.empty()) throw ConfigError("config: 'theta' must list at least one angle");
  for (double theta : theta_list)
    if (!(theta >= 0) || theta > std::numbers::pi / 2)
      throw ConfigError("config: every 'theta' must lie in [0, pi/2]");
  if (n_samples < 2) throw ConfigError("config: range 'n' must be >= 2");
  if (variable == SweepVariable::wavenumber && !(range_min > 0))
    throw ConfigError("config: 'k_range.min' must be > 0");
  if (variable == SweepVariable::frequency && !(range_min >= 0))
    throw ConfigError("config: 'gamma_range.min' must be >= 0");
  if (!(range_max >= range_min)) throw ConfigError("config: range 'max' must be >= 'min'");
}

std::vector<double> SweepSpec::samples() const {
  std::vector<double> out(n_samples);
  for (int i = 0; i < n_samples; ++i)
    out[i] = i + 1 == n_samples ? range_max : range_min + (range_max - range_min) * i / (n_samples - 1);
  return out;
}

SweepSpec parse_sweep_config(const std::string& json_text, const std::filesystem::path& output_path) {
  const json root = parse_json(json_text);
  SweepSpec spec;
  spec.params = parse_params(root);
  spec.output_path = output_path;

  const json& thetas = require(root, "", "theta");
  if (!thetas.is_array()) throw ConfigError("config: field 'theta' must be an array of radians");
  for (std::size_t i = 0; i < thetas.size(); ++i)
    spec.theta_list.push_back(as_number(thetas[i], "theta[" + std::to_string(i) + "]"));

  const bool has_k = root.contains("k_range");
  const bool has_gamma = root.contains("gamma_range");
  if (has_k == has_gamma) throw ConfigError("config: exactly one of 'k_range' or 'gamma_range' is required");
  const std::string key = has_k ? "k_range" : "gamma_range";
  spec.variable = has_k ? SweepVariable::wavenumber : SweepVariable::frequency;
  const json& range = root.at(key);
  spec.range_min = as_number(require(range, key, "min"), key + ".min");
  spec.range_max = as_number(require(range, key, "max"), key + ".max");
  spec.n_samples = as_integer(require(range, key, "n"), key + ".n");
  spec.validate();
  return spec;
}

void cmd_dispersion(const SweepSpec& spec) {
  spec.validate();
  if (spec.output_path.has_parent_path()) std::filesystem::create_directories(spec.output_path.parent_path());
  std::ofstream out(spec.output_path);
  if (!out) throw std::runtime_error("cannot open " + spec.output_path.string() + " for writing");

  io::write_csv_row(out, kDispersionColumns);
  for (double theta : spec.theta_list) {
    for (double x : spec.samples()) {
      if (spec.variable == SweepVariable::wavenumber) {
        const auto br = frequency_branches(spec.params, WaveVector<double>::from_polar(x, theta));
        io::write_csv_row(out, sweep_row(spec.params, theta, x,
                                         classify_regime(spec.params, br.gamma_plus, theta).tag));
        continue;
      }
      const auto solution = wavenumber_from_frequency(spec.params, x, theta);
      if (solution.k && std::isfinite(*solution.k) && *solution.k > 0) {
        io::write_csv_row(out, sweep_row(spec.params, theta, *solution.k, solution.regime.tag));
      } else {
        std::vector<std::string> row(kDispersionColumns.size(), io::kMissing);
        row.front() = io::format_number(theta);
        if (solution.k) row[1] = io::format_number(*solution.k);
        row.back() = std::string(to_string(solution.regime.tag));
        io::write_csv_row(out, row);
      }
    }
  }
  if (!out) throw std::runtime_error("failed writing " + spec.output_path.string());
}

SimulateSpec parse_simulate_config(const std::string& json_text) {
  const json root = parse_json(json_text);
  SimulateSpec spec;
  spec.sim.params = parse_params(root);

  const json& grid = require(root, "", "grid");
  spec.sim.grid.n1 = as_integer(require(grid, "grid", "n1"), "grid.n1");
  spec.sim.grid.n3 = as_integer(require(grid, "grid", "n3"), "grid.n3");
  spec.sim.grid.L1 = number_or(grid, "grid", "L1", 2 * std::numbers::pi);
  spec.sim.grid.L3 = number_or(grid, "grid", "L3", 2 * std::numbers::pi);
  try {
    spec.sim.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  const json& mode = require(root, "", "mode");
  spec.m1 = as_integer(require(mode, "mode", "m1"), "mode.m1");
  spec.m3 = as_integer(require(mode, "mode", "m3"), "mode.m3");
  if (mode.contains("branch")) {
    const json& b = mode.at("branch");
    if (b == "plus")
      spec.branch = Branch::plus;
    else if (b == "minus")
      spec.branch = Branch::minus;
    else
      throw ConfigError("config: field 'mode.branch' must be \"plus\" or \"minus\"");
  }
  spec.amplitude = number_or(mode, "mode", "amplitude", spec.amplitude);
  try {
    if (spec.sim.grid.wave_vector(spec.m1, spec.m3).norm() == 0)
      throw ConfigError("config: 'mode' (m1, m3) = (0, 0) is not a wave");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: field 'mode': ") + e.what());
  }

  spec.dt_factor = number_or(root, "", "dt_factor", spec.dt_factor);
  if (!(spec.dt_factor > 0)) throw ConfigError("config: field 'dt_factor' must be > 0");
  spec.sim.n_steps = integer_or(root, "", "n_steps", 1000);
  spec.sim.record_every = integer_or(root, "", "record_every", 10);
  if (root.contains("probe")) {
    const json& probe = root.at("probe");
    if (!probe.is_array() || probe.size() != 2) throw ConfigError("config: field 'probe' must be [i, j]");
    spec.sim.probe = {as_integer(probe[0], "probe[0]"), as_integer(probe[1], "probe[1]")};
  }
  spec.sim.dt = spec.dt_factor * 2 * std::numbers::pi / max_grid_frequency(spec.sim.params, spec.sim.grid);
  try {
    spec.sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return spec;
}

SimulateSummary cmd_simulate(const SimulateSpec& spec, const std::filesystem::path& out_dir) {
  const SimConfig& sim = spec.sim;
  const auto kvec = sim.grid.wave_vector(spec.m1, spec.m3);
  PlaneWaveMode<double> mode;
  try {
    mode = build_eigenmode(sim.params, kvec, spec.branch);
  } catch (const PolarizationSingularity& e) {
    throw ConfigError(std::string("config: field 'mode': ") + e.what());
  }
  const double limit = stability_limit(sim.params, sim.grid);
  if (sim.dt > limit) {
    std::ostringstream msg;
    msg << "dt = " << sim.dt << " (dt_factor " << spec.dt_factor << ") exceeds the RK4 stability limit "
        << limit << "; use dt_factor <= " << limit * max_grid_frequency(sim.params, sim.grid) / (2 * std::numbers::pi);
    throw StabilityError(msg.str());
  }

  const RunRecord record = run(sim, sample_mode(sim.grid, mode, spec.amplitude));

  SimulateSummary summary;
  summary.gamma = mode.gamma;
  summary.phase_speed = mode.gamma / kvec.norm();
  summary.dt = sim.dt;
  double vmax = 0;
  for (const auto& s : record.snapshots)
    vmax = std::max(vmax, std::sqrt((s.v1.square() + s.v2.square() + s.v3.square()).maxCoeff()));
  summary.epsilon = linearity_parameter(vmax, summary.phase_speed);
  summary.epsilon_warning = summary.epsilon >= kLinearityWarningThreshold;

  std::filesystem::create_directories(out_dir);
  io::write_probe_csv(out_dir / "probe.csv", record.probe);
  io::write_energy_csv(out_dir / "energy.csv", record.energy);
  io::write_snapshots(out_dir / "snapshots.bin", sim.grid, record.snapshots);

  json info = {{"alpha", sim.params.alpha},
               {"c", sim.params.c},
               {"k1", kvec.k1},
               {"k3", kvec.k3},
               {"branch", std::string(to_string(spec.branch))},
               {"gamma", summary.gamma},
               {"phase_speed", summary.phase_speed},
               {"dt", sim.dt},
               {"n_steps", sim.n_steps},
               {"record_every", sim.record_every},
               {"probe", {sim.probe.i, sim.probe.j}},
               {"epsilon", summary.epsilon},
               {"epsilon_warning", summary.epsilon_warning}};
  std::ofstream out(out_dir / "summary.json");
  if (!out) throw std::runtime_error("cannot write " + (out_dir / "summary.json").string());
  out << info.dump(2) << '\n';
  return summary;
}

int cmd_verify(verify::Scope scope, const std::filesystem::path& report_path,
               const verify::SuiteOptions& options, std::ostream& log) {
  const auto results = verify::run_acceptance(scope, options);
  bool all_passed = true;
  json checks = json::array();
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    log << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(32) << r.name << " measured="
        << std::setprecision(6) << r.measured << " tolerance=" << r.tolerance << " (" << std::setprecision(3)
        << r.seconds << " s)  " << r.detail << '\n';
    checks.push_back({{"check_name", r.name},
                      {"status", r.passed ? "pass" : "fail"},
                      {"measured", r.measured},
                      {"tolerance", r.tolerance},
                      {"detail", r.detail}});
  }
  if (!report_path.empty()) {
    if (report_path.has_parent_path()) std::filesystem::create_directories(report_path.parent_path());
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot write report " + report_path.string());
    const json report = {{"scope", std::string(verify::to_string(scope))}, {"passed", all_passed}, {"checks", checks}};
    out << report.dump(2) << '\n';
  }
  return all_passed ? kSuccess : kCheckFailure;
}

}  // namespace rotowave::cli
