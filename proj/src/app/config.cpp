#include "casimir/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "../json_reader.hpp"
#include "../material_json.hpp"
#include "casimir/error.hpp"
#include "casimir/units.hpp"

namespace casimir::app {

using nlohmann::json;
using detail::ObjectReader;

namespace {

struct ScenarioEntry {
  Scenario scenario;
  std::string_view name;
};

constexpr std::array<ScenarioEntry, 10> scenario_table{{
    {Scenario::Pressure, "pressure"},
    {Scenario::FreeEnergy, "free-energy"},
    {Scenario::SphereForce, "sphere-force"},
    {Scenario::AtomWall, "atom-wall"},
    {Scenario::Lateral, "lateral"},
    {Scenario::Entropy, "entropy"},
    {Scenario::KkTransform, "kk-transform"},
    {Scenario::ModulationDiff, "modulation-diff"},
    {Scenario::Compare, "compare"},
    {Scenario::RepulsionCheck, "repulsion-check"},
}};

using S = Scenario;

bool is_one_of(Scenario s, std::initializer_list<Scenario> set) {
  for (auto x : set) {
    if (x == s) return true;
  }
  return false;
}

// Which top-level keys each scenario reads.
bool uses(std::string_view key, Scenario s) {
  if (key == "version" || key == "scenario" || key == "output") return true;
  if (key == "materials") return s != S::KkTransform;
  if (key == "plates") {
    return is_one_of(s, {S::Pressure, S::FreeEnergy, S::SphereForce, S::Lateral, S::Entropy, S::Compare});
  }
  if (key == "light_plates" || key == "dark_plates") return s == S::ModulationDiff;
  if (key == "wall" || key == "atom") return s == S::AtomWall;
  if (key == "media") return s == S::RepulsionCheck;
  if (key == "temperature_K") return !is_one_of(s, {S::KkTransform, S::Entropy});
  if (key == "separation_um") return !is_one_of(s, {S::KkTransform, S::RepulsionCheck, S::Compare});
  if (key == "numerics") return !is_one_of(s, {S::KkTransform, S::RepulsionCheck});
  if (key == "modified_tm") {
    return !is_one_of(s, {S::KkTransform, S::RepulsionCheck, S::AtomWall});
  }
  if (key == "sweep") return true;
  if (key == "sphere") return is_one_of(s, {S::SphereForce, S::Lateral, S::ModulationDiff, S::Compare});
  if (key == "corrugation") return s == S::Lateral;
  if (key == "optical_table" || key == "extrapolation") return s == S::KkTransform;
  if (key == "experiment") return s == S::Compare;
  return false;
}

std::vector<Axis> allowed_axes(Scenario s) {
  switch (s) {
    case S::Pressure:
    case S::FreeEnergy:
    case S::SphereForce:
    case S::AtomWall:
    case S::ModulationDiff:
      return {Axis::Separation, Axis::Temperature};
    case S::Lateral:
      return {Axis::Phase, Axis::Separation};
    case S::Entropy:
      return {Axis::Temperature};
    case S::KkTransform:
    case S::RepulsionCheck:
      return {Axis::Frequency};
    case S::Compare:
      return {Axis::Separation};
  }
  return {};
}

std::optional<Axis> parse_axis(std::string_view s) {
  if (s == "a") return Axis::Separation;
  if (s == "T") return Axis::Temperature;
  if (s == "phi") return Axis::Phase;
  if (s == "xi") return Axis::Frequency;
  return std::nullopt;
}

std::optional<Sweep> read_sweep(const json& j, Scenario scenario, std::vector<std::string>& errors) {
  ObjectReader r(j, "sweep", errors);
  if (!r.valid()) return std::nullopt;
  Sweep sw;
  const auto axis = r.string("axis");
  const auto start = r.number("start");
  const auto stop = r.number("stop");
  const auto count = r.integer("count");
  const auto spacing = r.string("spacing", false);
  bool ok = axis && start && stop && count;
  if (axis) {
    if (auto a = parse_axis(*axis)) {
      sw.axis = *a;
      const auto allowed = allowed_axes(scenario);
      if (std::find(allowed.begin(), allowed.end(), *a) == allowed.end()) {
        std::string names;
        for (auto x : allowed) names += (names.empty() ? "" : ", ") + std::string(axis_name(x));
        errors.push_back("sweep.axis: '" + *axis + "' not supported by scenario '" +
                         std::string(scenario_name(scenario)) + "' (allowed: " + names + ")");
        ok = false;
      }
    } else {
      errors.push_back("sweep.axis: unknown axis '" + *axis + "' (expected a, T, phi or xi)");
      ok = false;
    }
  }
  if (spacing) {
    if (*spacing == "log") {
      sw.log_spacing = true;
    } else if (*spacing != "linear") {
      errors.push_back("sweep.spacing: expected 'linear' or 'log'");
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  sw.start = *start;
  sw.stop = *stop;
  sw.count = *count;
  if (sw.count < 1) errors.push_back("sweep.count: must be >= 1");
  if (sw.axis != Axis::Phase && !(sw.start > 0.0)) errors.push_back("sweep.start: must be positive");
  if (sw.log_spacing && sw.axis == Axis::Phase) errors.push_back("sweep.spacing: log spacing not allowed for phi");
  if (!(sw.stop >= sw.start)) errors.push_back("sweep: stop must not be below start");
  if (sw.count > 1 && !(sw.stop > sw.start)) errors.push_back("sweep: stop must exceed start when count > 1");
  return sw;
}

void check_ref(const std::string& name, const std::string& where, const RunConfig& cfg,
               std::vector<std::string>& errors) {
  if (!cfg.materials.count(name)) errors.push_back(where + ": unknown material '" + name + "'");
}

std::array<std::string, 2> read_pair(ObjectReader& r, const std::string& key, const RunConfig& cfg,
                                     std::vector<std::string>& errors) {
  std::array<std::string, 2> out;
  const auto* v = r.raw(key);
  if (!v) {
    errors.push_back(key + ": missing required field");
    return out;
  }
  if (!v->is_array() || v->size() != 2 || !(*v)[0].is_string() || !(*v)[1].is_string()) {
    errors.push_back(key + ": expected two material names");
    return out;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    out[i] = (*v)[i].get<std::string>();
    check_ref(out[i], key + "[" + std::to_string(i) + "]", cfg, errors);
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

}  // namespace

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto& e : scenario_table) {
    if (e.name == name) return e.scenario;
  }
  return std::nullopt;
}

std::string_view scenario_name(Scenario s) {
  for (const auto& e : scenario_table) {
    if (e.scenario == s) return e.name;
  }
  return "unknown";
}

const std::vector<std::string_view>& scenario_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& e : scenario_table) v.push_back(e.name);
    return v;
  }();
  return names;
}

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::Separation: return "a";
    case Axis::Temperature: return "T";
    case Axis::Phase: return "phi";
    case Axis::Frequency: return "xi";
  }
  return "?";
}

std::vector<double> Sweep::values() const {
  std::vector<double> v;
  if (count <= 1) return {start};
  v.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / (count - 1);
    if (i == count - 1) {
      v.push_back(stop);
    } else if (log_spacing) {
      v.push_back(std::exp(std::log(start) + s * (std::log(stop) - std::log(start))));
    } else {
      v.push_back(start + s * (stop - start));
    }
  }
  return v;
}

RunConfig parse_run_config(std::string_view json_text, Scenario scenario,
                           const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  std::vector<std::string> errors;
  RunConfig cfg;
  cfg.scenario = scenario;
  const std::string here = std::string(scenario_name(scenario));
  {
    ObjectReader r(j, "config", errors);
    if (!r.valid()) throw ConfigError(std::move(errors));
    // Keys the scenario does not read are errors, as are unknown keys.
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!uses(it.key(), scenario)) {
        static const std::set<std::string> known{
            "version", "scenario", "output", "materials", "plates", "light_plates",
            "dark_plates", "wall", "atom", "media", "temperature_K", "separation_um",
            "numerics", "modified_tm", "sweep", "sphere", "corrugation", "optical_table",
            "extrapolation", "experiment"};
        if (known.count(it.key())) {
          errors.push_back(it.key() + ": not used by scenario '" + here + "'");
          (void)r.raw(it.key());
        }
      }
    }

    if (auto v = r.integer("version")) {
      cfg.version = *v;
      if (*v != config_version) {
        errors.push_back("version: unsupported version " + std::to_string(*v) + " (expected " +
                         std::to_string(config_version) + ")");
      }
    }
    if (auto s = r.string("scenario", false); s && *s != here) {
      errors.push_back("scenario: config declares '" + *s + "' but '" + here + "' was requested");
    }
    if (auto o = r.string("output", false)) cfg.output = resolve(base_dir, *o);

    if (uses("materials", scenario)) {
      if (const auto* m = r.raw("materials")) {
        if (!m->is_object() || m->empty()) {
          errors.push_back("materials: expected a non-empty object of named materials");
        } else {
          for (auto it = m->begin(); it != m->end(); ++it) {
            auto mat = materials::json_io::read_material(*it, "materials." + it.key(), errors);
            mat.name = it.key();
            cfg.materials.emplace(it.key(), std::move(mat));
          }
        }
      } else {
        errors.push_back("materials: missing required field");
      }
    }

    if (uses("plates", scenario)) cfg.plates = read_pair(r, "plates", cfg, errors);
    if (scenario == S::ModulationDiff) {
      cfg.light_plates = read_pair(r, "light_plates", cfg, errors);
      cfg.dark_plates = read_pair(r, "dark_plates", cfg, errors);
    }
    if (scenario == S::AtomWall) {
      if (auto w = r.string("wall")) {
        cfg.wall = *w;
        check_ref(*w, "wall", cfg, errors);
      }
      if (const auto* a = r.raw("atom")) {
        ObjectReader ar(*a, "atom", errors);
        lifshitz::AtomSpec atom;
        if (auto v = ar.number("alpha0_cm3")) atom.alpha0 = *v * units::nm3_per_cm3;
        if (auto v = ar.number("alpha_frequency_eV", false)) atom.alpha_frequency = *v;
        if (auto v = ar.number("beta0_cm3", false)) atom.beta0 = *v * units::nm3_per_cm3;
        if (auto v = ar.number("beta_frequency_eV", false)) atom.beta_frequency = *v;
        if (atom.alpha0 < 0.0 || atom.beta0 < 0.0) errors.push_back("atom: polarizabilities must be >= 0");
        if ((atom.alpha_frequency && !(*atom.alpha_frequency > 0.0)) ||
            (atom.beta_frequency && !(*atom.beta_frequency > 0.0))) {
          errors.push_back("atom: oscillator frequencies must be > 0");
        }
        cfg.atom = atom;
      } else {
        errors.push_back("atom: missing required field");
      }
    }
    if (scenario == S::RepulsionCheck) {
      if (const auto* m = r.raw("media")) {
        ObjectReader mr(*m, "media", errors);
        const std::array<const char*, 3> keys{"eps1", "eps0", "eps2"};
        for (std::size_t i = 0; i < 3; ++i) {
          if (auto name = mr.string(keys[i])) {
            cfg.media[i] = *name;
            check_ref(*name, std::string("media.") + keys[i], cfg, errors);
          }
        }
      } else {
        errors.push_back("media: missing required field");
      }
    }

    if (uses("temperature_K", scenario)) {
      const bool required = scenario != S::RepulsionCheck;
      if (auto t = r.number("temperature_K", required)) cfg.temperature = *t;
      if (!(cfg.temperature > 0.0)) errors.push_back("temperature_K: must be positive");
    }

    if (const auto* sw = r.raw("sweep")) {
      cfg.sweep = read_sweep(*sw, scenario, errors);
    } else if (scenario != S::Compare) {
      errors.push_back("sweep: missing required field");
    }

    const bool needs_fixed_a =
        uses("separation_um", scenario) && cfg.sweep && cfg.sweep->axis != Axis::Separation;
    if (uses("separation_um", scenario)) {
      if (auto a = r.number("separation_um", needs_fixed_a)) {
        cfg.separation_um = *a;
        if (!(*a > 0.0)) errors.push_back("separation_um: must be positive");
      }
    }

    if (const auto* n = r.raw("numerics")) {
      ObjectReader nr(*n, "numerics", errors);
      if (auto v = nr.number("tail_tol", false)) cfg.numerics.tail_tol = *v;
      if (auto v = nr.number("quad_rel_tol", false)) cfg.numerics.quad_rel_tol = *v;
      if (auto v = nr.integer("max_terms", false)) cfg.numerics.max_terms = *v;
      if (!(cfg.numerics.tail_tol > 0.0 && cfg.numerics.tail_tol < 1.0)) {
        errors.push_back("numerics.tail_tol: must lie in (0, 1)");
      }
      if (!(cfg.numerics.quad_rel_tol > 0.0 && cfg.numerics.quad_rel_tol < 1.0)) {
        errors.push_back("numerics.quad_rel_tol: must lie in (0, 1)");
      }
      if (cfg.numerics.max_terms < 3) errors.push_back("numerics.max_terms: must be >= 3");
    }

    if (uses("modified_tm", scenario)) {
      if (auto m = r.boolean("modified_tm")) cfg.modified_tm = *m;
    }

    const bool needs_sphere = is_one_of(scenario, {S::SphereForce, S::Lateral, S::ModulationDiff});
    if (uses("sphere", scenario)) {
      if (const auto* s = r.raw("sphere")) {
        ObjectReader sr(*s, "sphere", errors);
        if (auto rad = sr.number("radius_um")) {
          cfg.sphere_radius_um = *rad;
          if (!(*rad > 0.0)) errors.push_back("sphere.radius_um: must be positive");
        }
      } else if (needs_sphere) {
        errors.push_back("sphere: missing required field");
      }
    }

    if (scenario == S::Lateral) {
      if (const auto* c = r.raw("corrugation")) {
        ObjectReader cr(*c, "corrugation", errors);
        geometry::CorrugationSpec corr;
        corr.amplitude_plate = cr.number("amplitude_plate_nm").value_or(0.0);
        corr.amplitude_sphere = cr.number("amplitude_sphere_nm").value_or(0.0);
        corr.period = cr.number("period_nm").value_or(0.0);
        const bool phase_swept = cfg.sweep && cfg.sweep->axis == Axis::Phase;
        corr.phase = cr.number("phase_rad", !phase_swept).value_or(0.0);
        if (corr.amplitude_plate < 0.0 || corr.amplitude_sphere < 0.0) {
          errors.push_back("corrugation: amplitudes must be >= 0");
        }
        if (!(corr.period > 0.0)) errors.push_back("corrugation.period_nm: must be positive");
        cfg.corrugation = corr;
      } else {
        errors.push_back("corrugation: missing required field");
      }
      if (cfg.plates[0] != cfg.plates[1]) {
        errors.push_back("plates: lateral force requires the same material on both surfaces");
      }
    }

    if (scenario == S::KkTransform) {
      if (auto t = r.string("optical_table")) cfg.optical_table = resolve(base_dir, *t);
      if (const auto* e = r.raw("extrapolation")) {
        ObjectReader er(*e, "extrapolation", errors);
        if (const auto* d = er.raw("drude")) {
          ObjectReader dr(*d, "extrapolation.drude", errors);
          optics::DrudeExtrapolation drude;
          drude.plasma_frequency = dr.number("plasma_frequency_eV").value_or(0.0);
          drude.relaxation = dr.number("relaxation_eV").value_or(0.0);
          if (!(drude.plasma_frequency > 0.0)) {
            errors.push_back("extrapolation.drude.plasma_frequency_eV: must be positive");
          }
          if (!(drude.relaxation > 0.0)) {
            errors.push_back("extrapolation.drude.relaxation_eV: must be positive");
          }
          cfg.extrapolation.drude = drude;
        }
      }
    }

    if (scenario == S::Compare) {
      if (const auto* e = r.raw("experiment")) {
        ObjectReader er(*e, "experiment", errors);
        ExperimentConfig ex;
        if (auto p = er.string("path")) ex.path = resolve(base_dir, *p);
        if (auto o = er.string("observable", false)) {
          ex.observable = *o;
          if (*o != "pressure" && *o != "sphere-force") {
            errors.push_back("experiment.observable: expected 'pressure' or 'sphere-force'");
          }
        }
        if (auto s = er.number("theory_sigma", false)) {
          ex.theory_sigma = *s;
          if (*s < 0.0) errors.push_back("experiment.theory_sigma: must be >= 0");
        }
        if (ex.observable == "sphere-force" && !cfg.sphere_radius_um) {
          errors.push_back("sphere: required when experiment.observable is 'sphere-force'");
        }
        cfg.experiment = ex;
      } else {
        errors.push_back("experiment: missing required field");
      }
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, Scenario scenario) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), scenario, path.parent_path());
}

}  // namespace casimir::app
