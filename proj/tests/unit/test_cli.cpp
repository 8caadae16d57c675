#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "casimir/app/compare.hpp"
#include "casimir/app/config.hpp"
#include "casimir/app/output.hpp"
#include "casimir/app/repulsion.hpp"
#include "casimir/app/run.hpp"
#include "casimir/error.hpp"
#include "oracles.hpp"

using namespace casimir;
using namespace casimir::app;
namespace fs = std::filesystem;

namespace {

const std::string co_materials = R"("materials": {
    "co": {"permittivity": {"model": "drude", "plasma_frequency_eV": 3.97, "relaxation_eV": 0.036},
           "magnetic": {"mu0": 70, "curie_temperature_K": 1388}},
    "au": {"permittivity": {"model": "plasma", "plasma_frequency_eV": 9.0}}
  })";

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "casimir_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const std::string& text, Scenario s) {
  try {
    parse_run_config(text, s);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string pressure_config() {
  return "{\"version\": 1, " + co_materials + R"(,
    "plates": ["co", "co"], "temperature_K": 300,
    "sweep": {"axis": "a", "start": 0.5, "stop": 6, "count": 25, "spacing": "log"}})";
}

}  // namespace

TEST_CASE("config: a valid pressure sweep") {
  const auto cfg = parse_run_config(pressure_config(), Scenario::Pressure);
  REQUIRE(cfg.sweep);
  const auto v = cfg.sweep->values();
  REQUIRE(v.size() == 25);
  CHECK(v.front() == 0.5);
  CHECK(v.back() == 6.0);
  CHECK(v[12] == doctest::Approx(std::sqrt(0.5 * 6.0)));
  CHECK(cfg.materials.at("co").magnetic.mu0 == 70.0);
}

TEST_CASE("config: missing plasma frequency names the field") {
  const std::string text = R"({"version": 1, "materials": {"co": {"permittivity":
      {"model": "drude", "relaxation_eV": 0.036}}}, "plates": ["co", "co"], "temperature_K": 300,
      "sweep": {"axis": "a", "start": 1, "stop": 2, "count": 2}})";
  const auto what = config_error(text, Scenario::Pressure);
  CHECK(what.find("materials.co.permittivity.plasma_frequency_eV") != std::string::npos);
}

TEST_CASE("config: every violation is listed") {
  const std::string text = R"({"version": 2, "materials": {"au": {"permittivity":
      {"model": "plasma", "plasma_frequency_eV": 9}}}, "plates": ["au", "ag"],
      "temprature_K": 300, "sphere": {"radius_um": 100},
      "sweep": {"axis": "phi", "start": 1, "stop": 2, "count": 2}})";
  const auto what = config_error(text, Scenario::Pressure);
  CHECK(what.find("version") != std::string::npos);
  CHECK(what.find("unknown material 'ag'") != std::string::npos);
  CHECK(what.find("temprature_K") != std::string::npos);
  CHECK(what.find("temperature_K: missing") != std::string::npos);
  CHECK(what.find("sphere: not used by scenario 'pressure'") != std::string::npos);
  CHECK(what.find("sweep.axis") != std::string::npos);
}

TEST_CASE("config: scenario-specific requirements") {
  CHECK(config_error("{\"version\": 1, " + co_materials + R"(, "plates": ["co", "co"],
      "temperature_K": 300, "sweep": {"axis": "a", "start": 0.2, "stop": 1, "count": 3}})",
                     Scenario::SphereForce)
            .find("sphere: missing") != std::string::npos);
  CHECK(config_error("{\"version\": 1, " + co_materials + R"(, "plates": ["co", "co"],
      "temperature_K": 300, "sweep": {"axis": "T", "start": 10, "stop": 300, "count": 3}})",
                     Scenario::Pressure)
            .find("separation_um: missing") != std::string::npos);
  CHECK(config_error("{\"version\": 1, " + co_materials + R"(, "plates": ["co", "au"],
      "temperature_K": 300, "separation_um": 0.2, "sphere": {"radius_um": 97},
      "corrugation": {"amplitude_plate_nm": 10, "amplitude_sphere_nm": 10, "period_nm": 500},
      "sweep": {"axis": "phi", "start": 0, "stop": 6.283185307179586, "count": 8}})",
                     Scenario::Lateral)
            .find("same material") != std::string::npos);
  CHECK(config_error(R"({"version": 1, "optical_table": "t.csv", "sweep": {"axis": "xi", "start": 2, "stop": 1, "count": 3}})",
                     Scenario::KkTransform)
            .find("stop must not be below start") != std::string::npos);
  CHECK(config_error("not json", Scenario::Pressure).find("not valid JSON") != std::string::npos);
}

TEST_CASE("CSV formatting") {
  Table t{{"x", "y"}, {{1.0, -1234.56789012}, {0.0, 1e-300}}};
  CHECK(format_csv(t) == "x,y\n1.00000000e+00,-1.23456789e+03\n0.00000000e+00,1.00000000e-300\n");
  CHECK(metadata_path("out/run.csv") == fs::path("out/run.meta.json"));
}

TEST_CASE("run: pressure sweep writes the CSV contract and metadata") {
  const auto cfg_path = write_config("pressure.json", pressure_config());
  RunOptions opt;
  opt.out = scratch("pressure.csv");
  opt.threads = 4;
  std::ostringstream log;
  REQUIRE(run(Scenario::Pressure, cfg_path, opt, log) == exit_ok);
  const auto csv = slurp(*opt.out);
  CHECK(csv.rfind("a_um,P_Pa,P_over_P0,eta_percent\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);

  const auto meta = nlohmann::json::parse(slurp(scratch("pressure.meta.json")));
  CHECK(meta["tool"] == "casimir");
  CHECK(meta["scenario"] == "pressure");
  CHECK(meta["diagnostics"]["points"].size() == 25);
  CHECK(meta["config"]["materials"]["co"]["magnetic"]["mu0"] == 70.0);

  // Byte-identical bodies, independent of the thread count.
  opt.threads = 1;
  opt.out = scratch("pressure_serial.csv");
  REQUIRE(run(Scenario::Pressure, cfg_path, opt, log) == exit_ok);
  CHECK(slurp(*opt.out) == csv);
}

TEST_CASE("run: entropy scenario columns") {
  const auto cfg_path = write_config("entropy.json", "{\"version\": 1, " + co_materials + R"(,
      "plates": ["au", "au"], "separation_um": 1,
      "sweep": {"axis": "T", "start": 1, "stop": 300, "count": 4, "spacing": "log"}})");
  RunOptions opt;
  opt.out = scratch("entropy.csv");
  std::ostringstream log;
  REQUIRE(run(Scenario::Entropy, cfg_path, opt, log) == exit_ok);
  const auto csv = slurp(*opt.out);
  CHECK(csv.rfind("T_K,S_J_per_m2K,S_error,step_K\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("run: exit codes") {
  std::ostringstream log;
  RunOptions opt;
  opt.out = scratch("fail.csv");
  const auto bad = write_config("bad.json", R"({"version": 1, "materials": {"co": {"permittivity":
      {"model": "drude", "relaxation_eV": 0.036}}}, "plates": ["co", "co"], "temperature_K": 300,
      "sweep": {"axis": "a", "start": 1, "stop": 2, "count": 2}})");
  CHECK(run(Scenario::Pressure, bad, opt, log) == exit_config_error);
  CHECK(log.str().find("plasma_frequency_eV") != std::string::npos);
  CHECK(run(Scenario::Pressure, scratch("missing.json"), opt, log) == exit_config_error);

  const auto stiff = write_config("stiff.json", "{\"version\": 1, " + co_materials + R"(,
      "plates": ["au", "au"], "temperature_K": 300,
      "numerics": {"tail_tol": 1e-12, "max_terms": 3},
      "sweep": {"axis": "a", "start": 0.1, "stop": 0.1, "count": 1}})");
  std::ostringstream numerical;
  CHECK(run(Scenario::Pressure, stiff, opt, numerical) == exit_numerical_error);
  CHECK(numerical.str().find("l=3") != std::string::npos);
  CHECK(numerical.str().find("a=100") != std::string::npos);
}

TEST_CASE("run: kk-transform and repulsion-check") {
  std::ostringstream log;
  const auto kk = write_config("kk.json", std::string(R"({"version": 1, "optical_table": ")") +
                                              CASIMIR_TEST_DATA + R"(/au_drude_im_eps.csv",
      "extrapolation": {"drude": {"plasma_frequency_eV": 9.0, "relaxation_eV": 0.035}},
      "sweep": {"axis": "xi", "start": 0.01, "stop": 10, "count": 7, "spacing": "log"}})");
  RunOptions opt;
  opt.out = scratch("kk.csv");
  REQUIRE(run(Scenario::KkTransform, kk, opt, log) == exit_ok);
  std::istringstream rows(slurp(*opt.out));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "xi_eV,eps");
  while (std::getline(rows, line)) {
    const double xi = std::stod(line.substr(0, line.find(',')));
    const double eps = std::stod(line.substr(line.find(',') + 1));
    CHECK(eps == doctest::Approx(oracle::drude_eps(9.0, 0.035, xi)).epsilon(5e-3));
  }

  const auto rep = write_config("rep.json", R"({"version": 1, "materials": {
      "a": {"permittivity": {"model": "dielectric", "oscillators": []}},
      "b": {"permittivity": {"model": "dielectric", "oscillators": [{"strength_eV2": 1, "frequency_eV": 1, "damping_eV": 0}]}},
      "c": {"permittivity": {"model": "dielectric", "oscillators": [{"strength_eV2": 2, "frequency_eV": 1, "damping_eV": 0}]}}},
      "media": {"eps1": "a", "eps0": "b", "eps2": "c"},
      "sweep": {"axis": "xi", "start": 0.1, "stop": 10, "count": 3, "spacing": "log"}})");
  opt.out = scratch("rep.csv");
  REQUIRE(run(Scenario::RepulsionCheck, rep, opt, log) == exit_ok);
  CHECK(slurp(*opt.out).rfind("xi_eV,eps1,eps0,eps2,holds\n", 0) == 0);
  const auto meta = nlohmann::json::parse(slurp(scratch("rep.meta.json")));
  CHECK(meta["summary"]["holds"] == true);
}

TEST_CASE("compare: constructed fixtures") {
  TheoryCurve line;
  for (int i = 0; i <= 10; ++i) {
    line.a.push_back(10.0 * i);
    line.value.push_back(2.0 * 10.0 * i + 1.0);
  }
  // Experiment generated from theory with zero uncertainty.
  ExperimentTable exact;
  for (double a : {5.0, 20.0, 33.0, 100.0}) exact.rows.push_back({a, 2.0 * a + 1.0, 0.0, 0.0});
  const auto r0 = compare(line, exact, 0.0);
  for (const auto& row : r0.rows) {
    CHECK(row.difference == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(row.inside);
  }
  CHECK(r0.fraction_inside == 1.0);

  // Theory shifted by twice the half-width.
  ExperimentTable noisy;
  for (double a : {5.0, 20.0, 33.0}) noisy.rows.push_back({a, 2.0 * a + 1.0, 0.3, 0.4});
  const double half = std::sqrt(0.4 * 0.4 + 0.6 * 0.6 + 0.1 * 0.1);
  TheoryCurve shifted = line;
  for (auto& v : shifted.value) v += 2.0 * half;
  const auto r1 = compare(shifted, noisy, 0.1);
  for (const auto& row : r1.rows) {
    CHECK(row.half_width == doctest::Approx(half));
    CHECK_FALSE(row.inside);
  }
  CHECK(r1.fraction_inside == 0.0);

  const auto mixed = parse_experiment_csv(fs::path(CASIMIR_TEST_DATA) / "experiment_mixed.csv");
  CHECK(mixed.confidence == "95%");
  const auto r2 = compare(line, mixed, 0.0);
  const std::vector<bool> expected{true, false, true, false, true, true};
  REQUIRE(r2.rows.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r2.rows[i].inside == expected[i]);
  CHECK(r2.fraction_inside == doctest::Approx(4.0 / 6.0));

  // Relabeling points leaves the summary unchanged.
  ExperimentTable reversed = mixed;
  std::reverse(reversed.rows.begin(), reversed.rows.end());
  std::sort(reversed.rows.begin(), reversed.rows.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  CHECK(compare(line, reversed, 0.0).fraction_inside == r2.fraction_inside);

  ExperimentTable outside;
  outside.rows.push_back({150.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(compare(line, outside, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(compare(line, ExperimentTable{}, 0.0), std::invalid_argument);
}

TEST_CASE("experiment CSV errors") {
  auto err = [](const std::string& text) {
    const auto p = scratch("exp.csv");
    std::ofstream(p) << text;
    try {
      parse_experiment_csv(p);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(err("a,b\n").find("header") != std::string::npos);
  CHECK(err("a_nm,value,sigma_a_nm,sigma_value\n1,2,-1,0\n").find(":2:") != std::string::npos);
  CHECK(err("a_nm,value,sigma_a_nm,sigma_value\n2,2,0,0\n1,2,0,0\n").find("increase") != std::string::npos);
  CHECK(err("a_nm,value,sigma_a_nm,sigma_value\n").find("empty") != std::string::npos);
}

TEST_CASE("repulsion check") {
  using materials::Dielectric;
  using materials::Oscillator;
  auto constant = [](double eps) {
    return materials::PermittivityModel{Dielectric{{{Oscillator{(eps - 1.0) * 1e8, 1e4, 0.0}}}}};
  };
  const std::vector<double> xi{0.01, 0.1, 1.0};
  CHECK(repulsion_check(constant(2.0), constant(1.0), constant(3.0), xi).holds);
  const auto equal = repulsion_check(constant(2.0), constant(2.0), constant(3.0), xi);
  CHECK_FALSE(equal.holds);
  CHECK(equal.violations.size() == 3);

  // Medium 0 has a large static value that falls off fast; medium 2 a smaller
  // but persistent one. The ordering eps0 < eps2 reverses below the crossing.
  const materials::PermittivityModel low_res{Dielectric{{{Oscillator{6.0, 1.0, 0.0}}}}};
  const materials::PermittivityModel high_res{Dielectric{{{Oscillator{400.0, 10.0, 0.0}}}}};
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(0.05 * std::pow(1.2, i));
  const auto verdict = repulsion_check(high_res, constant(1.0), low_res, grid);
  std::vector<double> expected;
  for (double x : grid) {
    const double e0 = 1.0 + 400.0 / (100.0 + x * x);
    const double e2 = 1.0 + 6.0 / (1.0 + x * x);
    if (!(e0 < e2)) expected.push_back(x);
  }
  CHECK(verdict.violations == expected);
  CHECK_FALSE(expected.empty());
  CHECK(expected.size() < grid.size());
  CHECK_THROWS_AS(repulsion_check(constant(2.0), constant(1.0), constant(3.0), {0.0}), std::invalid_argument);
}
