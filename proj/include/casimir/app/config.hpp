#pragma once

// Run configuration for the command-line scenarios.
//
// A config is one JSON object:
//
//   {
//     "version": 1,
//     "materials": {"co": {...}, "co_nonmag": {...}},
//     "plates": ["co", "co"],
//     "temperature_K": 300,
//     "sweep": {"axis": "a", "start": 0.5, "stop": 6, "count": 25, "spacing": "log"},
//     "numerics": {"tail_tol": 1e-8, "quad_rel_tol": 1e-9, "max_terms": 200000}
//   }
//
// Material objects follow material_config.hpp. Sweep axes: "a" (um), "T" (K),
// "phi" (rad), "xi" (eV). Relative file paths resolve against the config's
// directory. Unknown keys, and known keys the scenario does not use, are
// rejected.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/optics.hpp"

namespace casimir::app {

inline constexpr int config_version = 1;

enum class Scenario {
  Pressure,
  FreeEnergy,
  SphereForce,
  AtomWall,
  Lateral,
  Entropy,
  KkTransform,
  ModulationDiff,
  Compare,
  RepulsionCheck,
};

std::optional<Scenario> parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario s);
const std::vector<std::string_view>& scenario_names();

enum class Axis { Separation, Temperature, Phase, Frequency };

std::string_view axis_name(Axis axis);

struct Sweep {
  Axis axis = Axis::Separation;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool log_spacing = false;

  std::vector<double> values() const;
};

struct NumericsConfig {
  double tail_tol = 1e-8;
  double quad_rel_tol = 1e-9;
  int max_terms = 200000;
};

struct ExperimentConfig {
  std::filesystem::path path;
  std::string observable = "pressure";  ///< "pressure" (Pa) or "sphere-force" (N)
  double theory_sigma = 0.0;            ///< same units as the observable
};

struct RunConfig {
  Scenario scenario = Scenario::Pressure;
  int version = config_version;
  std::map<std::string, materials::PlateMaterial> materials;

  std::array<std::string, 2> plates;        // pressure, free-energy, sphere-force, lateral, entropy, compare
  std::array<std::string, 2> light_plates;  // modulation-diff
  std::array<std::string, 2> dark_plates;
  std::string wall;                         // atom-wall
  std::array<std::string, 3> media;         // repulsion-check: eps1, eps0, eps2

  double temperature = 300.0;                 ///< K
  std::optional<double> separation_um;        ///< fixed a when the sweep is not over a
  std::optional<Sweep> sweep;
  bool modified_tm = false;
  NumericsConfig numerics;

  std::optional<double> sphere_radius_um;
  std::optional<geometry::CorrugationSpec> corrugation;
  std::optional<lifshitz::AtomSpec> atom;

  std::filesystem::path optical_table;
  optics::ExtrapolationSpec extrapolation;

  std::optional<ExperimentConfig> experiment;

  std::optional<std::filesystem::path> output;
};

/// Parses and validates; throws ConfigError listing every violation.
RunConfig parse_run_config(std::string_view json_text, Scenario scenario,
                           const std::filesystem::path& base_dir = {});

RunConfig load_run_config(const std::filesystem::path& path, Scenario scenario);

}  // namespace casimir::app
