// casimir <scenario> --config <path> [--out <path>] [--threads N] [--tolerance T]

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "casimir/app/run.hpp"

int main(int argc, char** argv) {
  using namespace casimir::app;
  CLI::App cli{"Thermal Casimir and Casimir-Polder calculations"};
  cli.set_version_flag("--version", std::string(CASIMIR_VERSION));

  std::string scenario_text;
  std::string config;
  std::string out;
  int threads = 0;
  double tolerance = 0.0;

  std::string choices;
  for (auto name : scenario_names()) {
    if (!choices.empty()) choices += ", ";
    choices += name;
  }
  cli.add_option("scenario", scenario_text, "One of: " + choices)->required();
  cli.add_option("--config", config, "JSON run configuration")->required();
  auto* out_opt = cli.add_option("--out", out, "CSV output path (metadata goes next to it)");
  auto* threads_opt =
      cli.add_option("--threads", threads, "Worker threads (default: CASIMIR_THREADS or 1)")
          ->check(CLI::PositiveNumber);
  auto* tol_opt = cli.add_option("--tolerance", tolerance,
                                 "Matsubara tail tolerance; quadrature runs at a tenth of it")
                      ->check(CLI::Range(0.0, 1.0));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return exit_config_error;
  }

  const auto scenario = parse_scenario(scenario_text);
  if (!scenario) {
    std::cerr << "error: unknown scenario '" << scenario_text << "' (expected one of: " << choices
              << ")\n";
    return exit_config_error;
  }

  RunOptions options;
  if (*out_opt) options.out = out;
  if (*tol_opt) {
    if (!(tolerance > 0.0)) {
      std::cerr << "error: --tolerance must be positive\n";
      return exit_config_error;
    }
    options.tolerance = tolerance;
  }
  if (*threads_opt) {
    options.threads = threads;
  } else if (const char* env = std::getenv("CASIMIR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
      std::cerr << "error: CASIMIR_THREADS must be a positive integer\n";
      return exit_config_error;
    }
    options.threads = static_cast<int>(n);
  }
  return run(*scenario, config, options, std::cerr);
}
