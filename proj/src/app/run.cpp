#include "casimir/app/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <stdexcept>

#include "../material_json.hpp"
#include "casimir/app/compare.hpp"
#include "casimir/app/output.hpp"
#include "casimir/app/repulsion.hpp"
#include "casimir/error.hpp"
#include "casimir/numerics/parallel.hpp"
#include "casimir/units.hpp"

#ifndef CASIMIR_VERSION
#define CASIMIR_VERSION "0.0.0"
#endif

namespace casimir::app {

namespace {

using nlohmann::json;
using lifshitz::MatsubaraGrid;
using lifshitz::PlatePairSpec;
using lifshitz::SumResult;

constexpr const char* plasma_te_note =
    "plasma-model zero-frequency TE coefficient keeps mu inside the evanescent wave number";

struct Point {
  std::vector<double> row;
  json diagnostics = json::object();
  std::vector<std::string> warnings;
};

struct Outcome {
  Table table;
  std::vector<Point> points;
  json summary = json::object();
  std::vector<std::string> notes;
};

MatsubaraGrid make_grid(const RunConfig& cfg, const RunOptions& options) {
  MatsubaraGrid grid;
  grid.temperature = cfg.temperature;
  grid.tail_tol = cfg.numerics.tail_tol;
  grid.quad_rel_tol = cfg.numerics.quad_rel_tol;
  grid.max_terms = cfg.numerics.max_terms;
  if (options.tolerance) {
    grid.tail_tol = *options.tolerance;
    grid.quad_rel_tol = *options.tolerance / 10.0;
  }
  grid.threads = 1;
  return grid;
}

const materials::PlateMaterial& material(const RunConfig& cfg, const std::string& name) {
  const auto it = cfg.materials.find(name);
  if (it == cfg.materials.end()) throw ConfigError({"unknown material '" + name + "'"});
  return it->second;
}

PlatePairSpec pair_of(const RunConfig& cfg, const std::array<std::string, 2>& names, double a_nm) {
  return {material(cfg, names[0]), material(cfg, names[1]), a_nm, cfg.modified_tm};
}

bool is_magnetic(const materials::PlateMaterial& m) {
  return m.magnetic.mu0 != 1.0 || !m.magnetic.mu_table.empty();
}

materials::PlateMaterial non_magnetic(materials::PlateMaterial m) {
  m.magnetic = materials::MagneticModel{};
  return m;
}

json sum_diagnostics(const SumResult& s) {
  return {{"matsubara_terms", s.terms_used},
          {"quadrature_error", s.quadrature_error},
          {"tail_estimate", s.tail_estimate},
          {"static_probe", s.static_probe}};
}

std::vector<double> sweep_values(const RunConfig& cfg) {
  return cfg.sweep ? cfg.sweep->values() : std::vector<double>{};
}

std::string axis_column(Axis axis) {
  switch (axis) {
    case Axis::Separation: return "a_um";
    case Axis::Temperature: return "T_K";
    case Axis::Phase: return "phi_rad";
    case Axis::Frequency: return "xi_eV";
  }
  return "x";
}

// Separation (nm) and grid for a sweep value on an a or T axis.
std::pair<double, MatsubaraGrid> locate(const RunConfig& cfg, const MatsubaraGrid& base, double v) {
  MatsubaraGrid grid = base;
  double a_um = cfg.separation_um.value_or(0.0);
  if (cfg.sweep->axis == Axis::Separation) a_um = v;
  if (cfg.sweep->axis == Axis::Temperature) grid.temperature = v;
  return {a_um * units::nm_per_um, grid};
}

template <class Fn>
std::vector<Point> evaluate(const std::vector<double>& values, int threads, Fn&& fn) {
  std::vector<Point> points(values.size());
  numerics::parallel_for(0, values.size(), threads,
                         [&](std::size_t i) { points[i] = fn(values[i]); });
  return points;
}

Outcome run_pressure(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  out.table.columns = {axis_column(cfg.sweep->axis), "P_Pa", "P_over_P0", "eta_percent"};
  const bool magnetic = is_magnetic(material(cfg, cfg.plates[0])) ||
                        is_magnetic(material(cfg, cfg.plates[1]));
  out.points = evaluate(sweep_values(cfg), threads, [&](double v) {
    const auto [a, grid] = locate(cfg, base, v);
    const auto spec = pair_of(cfg, cfg.plates, a);
    const auto p = lifshitz::pressure(spec, grid);
    Point pt;
    pt.diagnostics = sum_diagnostics(p);
    double eta = 0.0;
    if (magnetic) {
      auto plain = spec;
      plain.plate1 = non_magnetic(spec.plate1);
      plain.plate2 = non_magnetic(spec.plate2);
      const auto p_plain = lifshitz::pressure(plain, grid);
      eta = 100.0 * (p.value - p_plain.value) / p_plain.value;
      pt.diagnostics["non_magnetic"] = sum_diagnostics(p_plain);
    }
    pt.row = {v, p.value, p.value / lifshitz::ideal_metal_pressure(a), eta};
    return pt;
  });
  return out;
}

Outcome run_free_energy(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  out.table.columns = {axis_column(cfg.sweep->axis), "F_J_per_m2", "F_over_F0"};
  out.points = evaluate(sweep_values(cfg), threads, [&](double v) {
    const auto [a, grid] = locate(cfg, base, v);
    const auto f = lifshitz::free_energy(pair_of(cfg, cfg.plates, a), grid);
    Point pt;
    pt.diagnostics = sum_diagnostics(f);
    pt.row = {v, f.value, f.value / lifshitz::ideal_metal_free_energy(a)};
    return pt;
  });
  return out;
}

void pfa_warning(Point& pt, double a_nm, double radius_um) {
  pt.warnings.push_back("a/R = " + std::to_string(a_nm / (radius_um * units::nm_per_um)) +
                        " exceeds 0.1 at a = " + std::to_string(a_nm) + " nm; PFA error grows");
}

Outcome run_sphere_force(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  out.table.columns = {axis_column(cfg.sweep->axis), "F_N", "pfa_error_bound"};
  out.points = evaluate(sweep_values(cfg), threads, [&](double v) {
    const auto [a, grid] = locate(cfg, base, v);
    const geometry::SphereSpec sphere{*cfg.sphere_radius_um, a};
    const auto f = geometry::pfa_sphere_force(pair_of(cfg, cfg.plates, a), sphere, grid);
    Point pt;
    pt.diagnostics = sum_diagnostics(f.plate_energy);
    if (f.pfa_warning) pfa_warning(pt, a, sphere.radius_um);
    pt.row = {v, f.value, f.pfa_error_bound};
    return pt;
  });
  return out;
}

Outcome run_modulation(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  out.table.columns = {axis_column(cfg.sweep->axis), "dF_N", "F_light_N", "F_dark_N"};
  out.points = evaluate(sweep_values(cfg), threads, [&](double v) {
    const auto [a, grid] = locate(cfg, base, v);
    const geometry::SphereSpec sphere{*cfg.sphere_radius_um, a};
    const auto lit = geometry::pfa_sphere_force(pair_of(cfg, cfg.light_plates, a), sphere, grid);
    const auto dark = geometry::pfa_sphere_force(pair_of(cfg, cfg.dark_plates, a), sphere, grid);
    Point pt;
    pt.diagnostics = {{"light", sum_diagnostics(lit.plate_energy)},
                      {"dark", sum_diagnostics(dark.plate_energy)}};
    if (lit.pfa_warning) pfa_warning(pt, a, sphere.radius_um);
    pt.row = {v, lit.value - dark.value, lit.value, dark.value};
    return pt;
  });
  return out;
}

Outcome run_atom_wall(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  out.table.columns = {axis_column(cfg.sweep->axis), "free_energy_J", "force_N"};
  const auto& wall = material(cfg, cfg.wall);
  out.points = evaluate(sweep_values(cfg), threads, [&](double v) {
    const auto [a, grid] = locate(cfg, base, v);
    const auto cp = lifshitz::casimir_polder(*cfg.atom, wall, a, grid);
    Point pt;
    pt.diagnostics = {{"free_energy", sum_diagnostics(cp.free_energy)},
                      {"force", sum_diagnostics(cp.force)}};
    pt.row = {v, cp.free_energy.value, cp.force.value};
    return pt;
  });
  return out;
}

Outcome run_lateral(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  const Axis axis = cfg.sweep->axis;
  out.table.columns = {axis_column(axis), "F_lat_N", "beta"};
  out.notes.push_back(
      "lateral force keeps the full Matsubara sum; its zero-frequency term uses the static "
      "reflection coefficients");
  out.points = evaluate(sweep_values(cfg), threads, [&](double v) {
    auto corr = *cfg.corrugation;
    double a_um = cfg.separation_um.value_or(0.0);
    if (axis == Axis::Phase) corr.phase = v;
    if (axis == Axis::Separation) a_um = v;
    const double a = a_um * units::nm_per_um;
    const geometry::SphereSpec sphere{*cfg.sphere_radius_um, a};
    const auto f = geometry::lateral_force(pair_of(cfg, cfg.plates, a), sphere, corr, base);
    Point pt;
    pt.diagnostics = {{"matsubara_terms", f.matsubara_terms}, {"max_harmonic", f.max_harmonic}};
    if (f.pfa_warning) {
      pt.warnings.push_back("2 pi a / Lambda exceeds 0.3 at a = " + std::to_string(a) +
                            " nm; PFA error grows");
    }
    pt.row = {v, f.value, f.beta};
    return pt;
  });
  if (axis == Axis::Phase) {
    std::vector<double> phase;
    std::vector<double> force;
    for (const auto& p : out.points) {
      phase.push_back(p.row[0]);
      force.push_back(p.row[1]);
    }
    try {
      out.summary["asymmetry"] = geometry::asymmetry_metric(phase, force);
    } catch (const std::invalid_argument& e) {
      out.summary["asymmetry"] = nullptr;
      out.summary["asymmetry_note"] = e.what();
    }
  }
  return out;
}

Outcome run_entropy(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  out.table.columns = {"T_K", "S_J_per_m2K", "S_error", "step_K"};
  const double a = *cfg.separation_um * units::nm_per_um;
  const auto spec = pair_of(cfg, cfg.plates, a);
  out.points = evaluate(sweep_values(cfg), threads, [&](double t) {
    MatsubaraGrid grid = base;
    grid.temperature = t;
    const auto s = lifshitz::entropy(spec, grid);
    Point pt;
    pt.row = {t, s.value, s.error, s.step};
    return pt;
  });
  return out;
}

Outcome run_kk(const RunConfig& cfg, int threads) {
  Outcome out;
  out.table.columns = {"xi_eV", "eps"};
  const auto table = optics::parse_optical_csv(cfg.optical_table);
  optics::validate(table);
  const auto xi = sweep_values(cfg);
  const auto eps = optics::kramers_kronig(table, cfg.extrapolation, xi, threads);
  for (std::size_t i = 0; i < xi.size(); ++i) out.points.push_back({{xi[i], eps[i]}, {}, {}});
  out.notes.push_back(optics::high_frequency_tail);
  out.notes.push_back(cfg.extrapolation.drude
                          ? "Drude extrapolation below the first sample"
                          : "Im eps taken as zero below the first sample");
  out.summary["table_rows"] = table.size();
  out.summary["table_range_eV"] = {table.omega.front(), table.omega.back()};
  return out;
}

Outcome run_repulsion(const RunConfig& cfg) {
  Outcome out;
  out.table.columns = {"xi_eV", "eps1", "eps0", "eps2", "holds"};
  const auto& m1 = material(cfg, cfg.media[0]).permittivity;
  const auto& m0 = material(cfg, cfg.media[1]).permittivity;
  const auto& m2 = material(cfg, cfg.media[2]).permittivity;
  const auto xi = sweep_values(cfg);
  const auto verdict = repulsion_check(m0, m1, m2, xi, cfg.temperature);
  for (double x : xi) {
    const double e1 = materials::eval_eps(m1, x, cfg.temperature);
    const double e0 = materials::eval_eps(m0, x, cfg.temperature);
    const double e2 = materials::eval_eps(m2, x, cfg.temperature);
    out.points.push_back({{x, e1, e0, e2, (e1 < e0 && e0 < e2) ? 1.0 : 0.0}, {}, {}});
  }
  out.summary["holds"] = verdict.holds;
  out.summary["violations_eV"] = verdict.violations;
  return out;
}

Outcome run_compare(const RunConfig& cfg, const MatsubaraGrid& base, int threads) {
  Outcome out;
  out.table.columns = {"a_um", "theory", "experiment", "difference", "half_width", "inside"};
  const auto& ex = *cfg.experiment;
  const auto table = parse_experiment_csv(ex.path);
  std::vector<double> abscissae;
  if (cfg.sweep) {
    for (double v : cfg.sweep->values()) abscissae.push_back(v * units::nm_per_um);
  } else {
    for (const auto& r : table.rows) {
      abscissae.push_back(r.a * (1.0 - 1e-3));
      abscissae.push_back(r.a);
      abscissae.push_back(r.a * (1.0 + 1e-3));
    }
    std::sort(abscissae.begin(), abscissae.end());
    abscissae.erase(std::unique(abscissae.begin(), abscissae.end()), abscissae.end());
  }
  const bool sphere = ex.observable == "sphere-force";
  TheoryCurve curve;
  curve.a = abscissae;
  curve.value.resize(abscissae.size());
  std::vector<json> diag(abscissae.size());
  numerics::parallel_for(0, abscissae.size(), threads, [&](std::size_t i) {
    const double a = abscissae[i];
    const auto spec = pair_of(cfg, cfg.plates, a);
    if (sphere) {
      const auto f = geometry::pfa_sphere_force(spec, {*cfg.sphere_radius_um, a}, base);
      curve.value[i] = f.value;
      diag[i] = sum_diagnostics(f.plate_energy);
    } else {
      const auto p = lifshitz::pressure(spec, base);
      curve.value[i] = p.value;
      diag[i] = sum_diagnostics(p);
    }
  });
  const auto report = compare(curve, table, ex.theory_sigma);
  for (const auto& r : report.rows) {
    out.points.push_back({{r.a / units::nm_per_um, r.theory, r.experiment, r.difference,
                           r.half_width, r.inside ? 1.0 : 0.0},
                          {},
                          {}});
  }
  out.summary["fraction_inside"] = report.fraction_inside;
  out.summary["confidence"] = table.confidence;
  out.summary["observable"] = ex.observable;
  out.summary["theory_points"] = json::array();
  for (std::size_t i = 0; i < abscissae.size(); ++i) {
    json d = diag[i];
    d["a_nm"] = abscissae[i];
    out.summary["theory_points"].push_back(d);
  }
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

json config_echo(const RunConfig& cfg, const MatsubaraGrid& grid) {
  json j;
  j["scenario"] = scenario_name(cfg.scenario);
  j["version"] = cfg.version;
  json mats = json::object();
  for (const auto& [name, m] : cfg.materials) mats[name] = materials::json_io::write_material(m);
  j["materials"] = mats;
  switch (cfg.scenario) {
    case Scenario::ModulationDiff:
      j["light_plates"] = cfg.light_plates;
      j["dark_plates"] = cfg.dark_plates;
      break;
    case Scenario::AtomWall:
      j["wall"] = cfg.wall;
      j["atom"] = {{"alpha0_nm3", cfg.atom->alpha0},
                   {"alpha_frequency_eV", cfg.atom->alpha_frequency ? json(*cfg.atom->alpha_frequency) : json()},
                   {"beta0_nm3", cfg.atom->beta0},
                   {"beta_frequency_eV", cfg.atom->beta_frequency ? json(*cfg.atom->beta_frequency) : json()}};
      break;
    case Scenario::RepulsionCheck:
      j["media"] = {{"eps1", cfg.media[0]}, {"eps0", cfg.media[1]}, {"eps2", cfg.media[2]}};
      break;
    case Scenario::KkTransform:
      j["optical_table"] = cfg.optical_table.string();
      if (cfg.extrapolation.drude) {
        j["extrapolation"]["drude"] = {
            {"plasma_frequency_eV", cfg.extrapolation.drude->plasma_frequency},
            {"relaxation_eV", cfg.extrapolation.drude->relaxation}};
      }
      break;
    default:
      j["plates"] = cfg.plates;
  }
  j["temperature_K"] = cfg.temperature;
  if (cfg.separation_um) j["separation_um"] = *cfg.separation_um;
  if (cfg.sweep) {
    j["sweep"] = {{"axis", axis_name(cfg.sweep->axis)},
                  {"start", cfg.sweep->start},
                  {"stop", cfg.sweep->stop},
                  {"count", cfg.sweep->count},
                  {"spacing", cfg.sweep->log_spacing ? "log" : "linear"}};
  }
  j["modified_tm"] = cfg.modified_tm;
  if (cfg.sphere_radius_um) j["sphere"] = {{"radius_um", *cfg.sphere_radius_um}};
  if (cfg.corrugation) {
    j["corrugation"] = {{"amplitude_plate_nm", cfg.corrugation->amplitude_plate},
                        {"amplitude_sphere_nm", cfg.corrugation->amplitude_sphere},
                        {"period_nm", cfg.corrugation->period},
                        {"phase_rad", cfg.corrugation->phase}};
  }
  if (cfg.experiment) {
    j["experiment"] = {{"path", cfg.experiment->path.string()},
                       {"observable", cfg.experiment->observable},
                       {"theory_sigma", cfg.experiment->theory_sigma}};
  }
  j["numerics"] = {{"tail_tol", grid.tail_tol},
                   {"quad_rel_tol", grid.quad_rel_tol},
                   {"max_terms", grid.max_terms}};
  return j;
}

bool uses_plasma(const RunConfig& cfg) {
  for (const auto& [name, m] : cfg.materials) {
    if (materials::static_limit(m.permittivity, cfg.temperature).kind ==
        materials::StaticLimit::Kind::Plasma) {
      return true;
    }
  }
  return false;
}

}  // namespace

RunSummary execute(const RunConfig& cfg, const RunOptions& options) {
  const int threads = std::max(1, options.threads);
  const MatsubaraGrid grid = make_grid(cfg, options);
  Outcome out;
  switch (cfg.scenario) {
    case Scenario::Pressure: out = run_pressure(cfg, grid, threads); break;
    case Scenario::FreeEnergy: out = run_free_energy(cfg, grid, threads); break;
    case Scenario::SphereForce: out = run_sphere_force(cfg, grid, threads); break;
    case Scenario::AtomWall: out = run_atom_wall(cfg, grid, threads); break;
    case Scenario::Lateral: out = run_lateral(cfg, grid, threads); break;
    case Scenario::Entropy: out = run_entropy(cfg, grid, threads); break;
    case Scenario::KkTransform: out = run_kk(cfg, threads); break;
    case Scenario::ModulationDiff: out = run_modulation(cfg, grid, threads); break;
    case Scenario::Compare: out = run_compare(cfg, grid, threads); break;
    case Scenario::RepulsionCheck: out = run_repulsion(cfg); break;
  }

  json meta;
  meta["tool"] = "casimir";
  meta["version"] = CASIMIR_VERSION;
  meta["scenario"] = scenario_name(cfg.scenario);
  meta["timestamp"] = timestamp();
  meta["config"] = config_echo(cfg, grid);
  meta["threads"] = threads;
  json points = json::array();
  json warnings = json::array();
  bool static_probe = false;
  for (auto& p : out.points) {
    out.table.rows.push_back(p.row);
    points.push_back(p.diagnostics);
    for (auto& w : p.warnings) warnings.push_back(w);
    if (p.diagnostics.contains("static_probe") && p.diagnostics["static_probe"].get<bool>()) {
      static_probe = true;
    }
  }
  meta["diagnostics"] = {{"points", points}};
  if (!out.summary.empty()) meta["summary"] = out.summary;
  meta["warnings"] = warnings;
  json notes = out.notes;
  if (uses_plasma(cfg)) notes.push_back(plasma_te_note);
  if (static_probe) {
    notes.push_back("zero-frequency modified TM coefficient evaluated at xi = " +
                    std::to_string(reflection::modified_tm_static_probe) + " eV");
  }
  meta["notes"] = notes;

  RunSummary summary;
  summary.csv = options.out ? *options.out
                            : cfg.output.value_or(std::string(scenario_name(cfg.scenario)) + ".csv");
  summary.metadata = metadata_path(summary.csv);
  summary.rows = out.table.rows.size();
  write_atomic(summary.csv, format_csv(out.table));
  write_atomic(summary.metadata, meta.dump(2) + "\n");
  return summary;
}

int run(Scenario scenario, const std::filesystem::path& config_path, const RunOptions& options,
        std::ostream& log) {
  try {
    const auto cfg = load_run_config(config_path, scenario);
    const auto summary = execute(cfg, options);
    log << "wrote " << summary.rows << " rows to " << summary.csv.string() << " (metadata "
        << summary.metadata.string() << ")\n";
    return exit_ok;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const NumericalError& e) {
    log << "numerical error: " << e.what() << "\n";
    return exit_numerical_error;
  } catch (const std::domain_error& e) {
    log << "numerical error: " << e.what() << "\n";
    return exit_numerical_error;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return exit_numerical_error;
  }
}

}  // namespace casimir::app
