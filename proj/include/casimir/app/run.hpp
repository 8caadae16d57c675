#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "casimir/app/config.hpp"

namespace casimir::app {

enum ExitCode : int { exit_ok = 0, exit_config_error = 2, exit_numerical_error = 3 };

struct RunOptions {
  std::optional<std::filesystem::path> out;  ///< overrides the config's output
  int threads = 1;
  std::optional<double> tolerance;  ///< sets tail_tol; quadrature runs at tolerance / 10
};

struct RunSummary {
  std::filesystem::path csv;
  std::filesystem::path metadata;
  std::size_t rows = 0;
};

/// Executes a parsed configuration and writes its CSV and metadata.
/// Throws ConfigError, ParseError, NumericalError.
RunSummary execute(const RunConfig& config, const RunOptions& options);

/// Loads, validates and executes; reports to `log` and returns the exit code.
int run(Scenario scenario, const std::filesystem::path& config_path, const RunOptions& options,
        std::ostream& log);

}  // namespace casimir::app
