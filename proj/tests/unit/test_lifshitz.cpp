#include <doctest.h>

#include <cmath>

#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/numerics/special.hpp"
#include "casimir/units.hpp"
#include "oracles.hpp"

using namespace casimir;
using namespace casimir::lifshitz;
using materials::PlateMaterial;
using materials::TemperatureFunction;

namespace {

PlateMaterial drude(double wp, double gamma, double mu0 = 1.0) {
  PlateMaterial m;
  m.permittivity = materials::Drude{wp, TemperatureFunction::constant(gamma), {}};
  m.magnetic.mu0 = mu0;
  return m;
}

PlateMaterial plasma(double wp) {
  PlateMaterial m;
  m.permittivity = materials::Plasma{wp};
  return m;
}

PlateMaterial glass(double g = 2.9, double w = 1.0) {
  PlateMaterial m;
  m.permittivity = materials::Dielectric{{{materials::Oscillator{g, w, 0.0}}}};
  return m;
}

// Oracle reflector for a material: Fresnel at xi (or a tiny xi for l = 0,
// which reproduces the static limit of conducting and dielectric models).
oracle::Reflector reflector(const PlateMaterial& m, int l, double T) {
  return [m, l, T](double xi, double k) {
    const double x = l == 0 ? 1e-12 : xi;
    const double eps = materials::eval_eps(m.permittivity, x, T);
    const double mu = l == 0 && (!m.magnetic.curie_temperature || T < *m.magnetic.curie_temperature)
                          ? m.magnetic.mu0
                          : 1.0;
    return oracle::fresnel(eps, mu, x, k);
  };
}

MatsubaraGrid tight(double T) {
  MatsubaraGrid g;
  g.temperature = T;
  g.tail_tol = 1e-11;
  g.quad_rel_tol = 1e-11;
  return g;
}

}  // namespace

TEST_CASE("single Matsubara terms against the k-space oracle") {
  const double T = 300.0;
  const auto grid = tight(T);
  for (const auto& [m1, m2] : {std::pair{drude(3.97, 0.036, 70.0), drude(3.97, 0.036, 70.0)},
                               std::pair{glass(), drude(9.0, 0.035)}, std::pair{glass(), glass(5.0, 3.0)}}) {
    for (double a : {300.0, 2000.0}) {
      const PlatePairSpec spec{m1, m2, a, false};
      for (int l : {0, 1, 4}) {
        CAPTURE(a);
        CAPTURE(l);
        const double xi = grid.xi(l);
        const auto r1 = reflector(m1, l, T);
        const auto r2 = reflector(m2, l, T);
        CHECK(phi_pressure(spec, l, grid).value ==
              doctest::Approx(oracle::pressure_term(r1, r2, xi, a)).epsilon(1e-8));
        CHECK(phi_energy(spec, l, grid).value ==
              doctest::Approx(oracle::energy_term(r1, r2, xi, a)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("full pressure and free energy against the oracle") {
  const double T = 300.0, a = 800.0;
  const auto m1 = drude(9.0, 0.035);
  const auto m2 = glass();
  const PlatePairSpec spec{m1, m2, a, false};
  auto plates = [&](int l) { return std::pair{reflector(m1, l, T), reflector(m2, l, T)}; };
  CHECK(pressure(spec, tight(T)).value ==
        doctest::Approx(oracle::pressure(T, a, plates)).epsilon(1e-7));
  CHECK(free_energy(spec, tight(T)).value ==
        doctest::Approx(oracle::free_energy(T, a, plates)).epsilon(1e-7));
}

TEST_CASE("zero-frequency closed form for constant coefficients") {
  const double a = 1000.0;
  const auto g = glass();
  const PlatePairSpec spec{g, g, a, false};
  const double r = 2.9 / 4.9;
  const auto grid = tight(300.0);
  // TE vanishes for mu = 1, so only the TM polarization contributes.
  CHECK(phi_pressure(spec, 0, grid).value ==
        doctest::Approx(2.0 * oracle::polylog(3.0, r * r) / (8.0 * a * a * a)).epsilon(1e-12));
  CHECK(phi_energy(spec, 0, grid).value ==
        doctest::Approx(-oracle::polylog(3.0, r * r) / (4.0 * a * a)).epsilon(1e-12));
}

TEST_CASE("ideal-metal reference values") {
  const double hbar_c_jm = oracle::hbar_c * oracle::joule_per_ev * 1e-9;
  const double a_m = 1e-6;
  CHECK(ideal_metal_pressure(1000.0) ==
        doctest::Approx(-oracle::pi * oracle::pi * hbar_c_jm / (240.0 * std::pow(a_m, 4))).epsilon(1e-12));
  CHECK(ideal_metal_pressure(1000.0) == doctest::Approx(-1.300e-3).epsilon(1e-3));
  CHECK(ideal_metal_free_energy(1000.0) ==
        doctest::Approx(-oracle::pi * oracle::pi * hbar_c_jm / (720.0 * std::pow(a_m, 3))).epsilon(1e-12));
  MatsubaraGrid grid;
  grid.temperature = 1.0;
  const PlatePairSpec spec{plasma(1e4), plasma(1e4), 1000.0, false};
  CHECK(pressure(spec, grid).value == doctest::Approx(ideal_metal_pressure(1000.0)).epsilon(5e-3));
}

TEST_CASE("property: pressure is minus the separation derivative of the free energy") {
  const auto grid = tight(300.0);
  for (const auto& spec : {PlatePairSpec{drude(3.97, 0.036, 70.0), drude(3.97, 0.036, 70.0), 700.0, false},
                           PlatePairSpec{glass(), plasma(9.0), 1500.0, false}}) {
    auto energy = [&](double a) {
      auto s = spec;
      s.a_nm = a;
      return free_energy(s, grid).value;
    };
    const double dfda = oracle::derivative(energy, spec.a_nm, 1e-3 * spec.a_nm) * 1e9;
    CHECK(pressure(spec, grid).value == doctest::Approx(-dfda).epsilon(1e-6));
  }
}

TEST_CASE("property: magnetic permeability raises the Drude TE zero-frequency term") {
  const auto grid = tight(300.0);
  const PlatePairSpec mag{drude(3.97, 0.036, 70.0), drude(3.97, 0.036, 70.0), 2000.0, false};
  const PlatePairSpec bare{drude(3.97, 0.036), drude(3.97, 0.036), 2000.0, false};
  CHECK(std::abs(pressure(mag, grid).value) > std::abs(pressure(bare, grid).value));
}

TEST_CASE("Matsubara sum: weights, tail and truncation failures") {
  MatsubaraGrid grid;
  grid.tail_tol = 1e-13;
  const double rho = 0.5;
  auto geometric = [&](int l) { return TermValue{std::pow(rho, l), 0.0, false}; };
  const auto s = matsubara_sum(grid, geometric);
  CHECK(s.value == doctest::Approx(0.5 + rho / (1.0 - rho)).epsilon(1e-13));
  CHECK(s.terms_used > 10);

  grid.max_terms = 20;
  try {
    matsubara_sum(grid, [](int) { return TermValue{1.0, 0.0, false}; }, 123.0);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.matsubara_index() == 20);
    CHECK(e.separation_nm() == 123.0);
    CHECK(std::string(e.what()).find("l=20") != std::string::npos);
  }
}

TEST_CASE("determinism: thread count does not change the result") {
  auto grid = tight(300.0);
  const PlatePairSpec spec{drude(9.0, 0.035), glass(), 400.0, false};
  const double serial = pressure(spec, grid).value;
  grid.threads = 4;
  CHECK(pressure(spec, grid).value == serial);
}

TEST_CASE("Casimir-Polder against the k-space oracle") {
  const double T = 300.0, a = 1500.0;
  const auto wall = drude(9.0, 0.035);
  AtomSpec atom;
  atom.alpha0 = 24.0;
  atom.alpha_frequency = 11.0;
  const auto grid = tight(T);
  const auto cp = casimir_polder(atom, wall, a, grid);

  auto integrand = [&](int l, double xi, double power) {
    const auto r = reflector(wall, l, T);
    const double w = xi / oracle::hbar_c;
    auto f = [&](double k) {
      const double q = std::sqrt(k * k + w * w);
      const auto c = r(xi, k);
      return k * std::pow(q, power) * std::exp(-2.0 * a * q) *
             (2.0 * c.tm - (w * w / (q * q)) * (c.tm + c.te));
    };
    return atom.alpha(xi) * oracle::integrate_decaying(f, 0.0, 1.0 / (2.0 * a));
  };
  const double kt = oracle::k_b * T;
  const double energy = -kt * oracle::matsubara(T, [&](int l, double xi) { return integrand(l, xi, 1.0); });
  const double force = -2.0 * kt * oracle::matsubara(T, [&](int l, double xi) { return integrand(l, xi, 2.0); });
  CHECK(cp.free_energy.value == doctest::Approx(energy * oracle::joule_per_ev).epsilon(1e-7));
  CHECK(cp.force.value == doctest::Approx(force * oracle::joule_per_ev * 1e9).epsilon(1e-7));

  // Force is minus the separation derivative of the free energy.
  auto cp_energy = [&](double x) { return casimir_polder(atom, wall, x, grid).free_energy.value; };
  CHECK(cp.force.value == doctest::Approx(-oracle::derivative(cp_energy, a, 1.0) * 1e9).epsilon(1e-6));
}

TEST_CASE("entropy: finite differences of the free energy") {
  auto grid = tight(300.0);
  const PlatePairSpec spec{glass(), glass(), 1000.0, false};
  const auto s = entropy(spec, grid);
  auto energy = [&](double T) {
    auto g = grid;
    g.temperature = T;
    return free_energy(spec, g).value;
  };
  CHECK(s.value == doctest::Approx(-oracle::derivative(energy, 300.0, 2.0)).epsilon(1e-5));
  CHECK(s.error >= 0.0);
  CHECK(s.step > 0.0);
}

TEST_CASE("entropy asymptotes") {
  const double a = 1000.0;
  const double unit = oracle::k_b / (16.0 * oracle::pi * a * a) * oracle::joule_per_ev * 1e18;
  const double r = 0.4;
  CHECK(entropy_oracle_dielectric(r, r, a) ==
        doctest::Approx(unit * (oracle::zeta(3.0) - oracle::polylog(3.0, r * r))).epsilon(1e-10));
  const auto d = entropy_oracle_drude(9.0, 9.0, 2000.0);
  const double x = oracle::hbar_c * (2.0 / 9.0) / 2000.0;
  const double lead = -oracle::k_b / (16.0 * oracle::pi * 4e6) * oracle::zeta(3.0) * oracle::joule_per_ev * 1e18;
  CHECK(d.terms[0] == doctest::Approx(lead).epsilon(1e-10));
  CHECK(d.terms[1] == doctest::Approx(-2.0 * x * lead).epsilon(1e-10));
  CHECK(d.terms[2] == doctest::Approx(3.0 * x * x * lead).epsilon(1e-10));
  CHECK(d.valid);
  CHECK_FALSE(entropy_oracle_drude(0.5, 0.5, 200.0).valid);
}
