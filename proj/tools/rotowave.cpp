#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rotowave/cli.hpp"
#include "rotowave/errors.hpp"

namespace rc = rotowave::cli;

int main(int argc, char** argv) {
  CLI::App app{"rotowave: waves in a rotating compressible fluid"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;

  auto* dispersion = app.add_subcommand("dispersion", "tabulate branches and velocities over a sweep");
  dispersion->add_option("--config", config_path, "sweep JSON")->required()->check(CLI::ExistingFile);
  dispersion->add_option("--out", out_path, "output directory (dispersion.csv)")->required();

  auto* simulate = app.add_subcommand("simulate", "run a pseudo-spectral eigenmode simulation");
  simulate->add_option("--config", config_path, "simulation JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out_path, "output directory")->required();

  std::string scope_text = "all";
  std::string report_path;
  rotowave::verify::SuiteOptions suite;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--scope", scope_text, "dispersion | simulator | all")
      ->check(CLI::IsMember({"dispersion", "simulator", "all"}));
  verify->add_option("--report", report_path, "JSON report path");
  verify->add_option("--perturb-residual", suite.residual_perturbation)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rc::kUsageError;
  }

  try {
    if (*dispersion) {
      auto spec = rc::parse_sweep_config(rc::read_text_file(config_path),
                                         std::filesystem::path(out_path) / "dispersion.csv");
      rc::cmd_dispersion(spec);
      std::cout << "wrote " << spec.output_path.string() << '\n';
      return rc::kSuccess;
    }
    if (*simulate) {
      const auto spec = rc::parse_simulate_config(rc::read_text_file(config_path));
      const auto summary = rc::cmd_simulate(spec, out_path);
      std::cout << "gamma = " << summary.gamma << ", dt = " << summary.dt << '\n'
                << "epsilon = max|v|/|v_ph| = " << summary.epsilon << '\n';
      if (summary.epsilon_warning)
        std::cerr << "warning: epsilon >= " << rotowave::kLinearityWarningThreshold
                  << "; the linear model may not hold\n";
      return rc::kSuccess;
    }
    const auto scope = rotowave::verify::parse_scope(scope_text);
    return rc::cmd_verify(*scope, report_path, suite, std::cout);
  } catch (const rc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const rotowave::StabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return rc::kUsageError;
}
