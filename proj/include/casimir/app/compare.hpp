#pragma once

// Theory-versus-experiment band comparison.

#include <filesystem>
#include <string>
#include <vector>

namespace casimir::app {

/// Theory sampled on increasing abscissae (nm).
struct TheoryCurve {
  std::vector<double> a;
  std::vector<double> value;
};

struct ExperimentRow {
  double a = 0.0;            ///< nm
  double value = 0.0;        ///< Pa or N
  double sigma_a = 0.0;      ///< nm
  double sigma_value = 0.0;  ///< same units as value
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;
  std::string confidence;  ///< free-form label, e.g. "95%"
};

struct ComparisonRow {
  double a = 0.0;
  double theory = 0.0;
  double experiment = 0.0;
  double difference = 0.0;  ///< theory - experiment
  double half_width = 0.0;  ///< sqrt(sigma_value^2 + (sigma_a |dV/da|)^2 + sigma_theory^2)
  bool inside = false;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double fraction_inside = 0.0;
};

/// Interpolates the theory curve linearly to each experimental abscissa and
/// uses the local segment slope for dV/da. Throws std::invalid_argument for
/// abscissae outside the theory range or an empty experiment.
ComparisonReport compare(const TheoryCurve& theory, const ExperimentTable& experiment,
                         double theory_sigma);

/// CSV with header `a_nm,value,sigma_a_nm,sigma_value`; a comment line
/// `# confidence: <label>` sets the confidence label.
ExperimentTable parse_experiment_csv(const std::filesystem::path& path);

}  // namespace casimir::app
