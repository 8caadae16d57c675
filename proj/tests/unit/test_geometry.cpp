#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "casimir/error.hpp"
#include "casimir/geometry.hpp"
#include "casimir/units.hpp"
#include "oracles.hpp"

using namespace casimir;
using namespace casimir::geometry;
using materials::PlateMaterial;
using materials::TemperatureFunction;

namespace {

PlateMaterial gold_drude() {
  PlateMaterial m;
  m.permittivity = materials::Drude{9.0, TemperatureFunction::constant(0.035), {}};
  return m;
}

PlateMaterial gold_plasma() {
  PlateMaterial m;
  m.permittivity = materials::Plasma{9.0};
  return m;
}

PlateMaterial glass() {
  PlateMaterial m;
  m.permittivity = materials::Dielectric{{{materials::Oscillator{2.9, 1.0, 0.0}}}};
  return m;
}

MatsubaraGrid grid300() {
  MatsubaraGrid g;
  g.tail_tol = 1e-10;
  g.quad_rel_tol = 1e-11;
  return g;
}

// Lateral-force sum by brute force: direct n and l loops, plain Gauss-Legendre
// in t with the unscaled Bessel function.
double lateral_oracle(const PlateMaterial& m, double a, double radius_um, const CorrugationSpec& c,
                      double T) {
  const double b = beta(a, c);
  const double step = 2.0 * oracle::pi * oracle::k_b * T;
  auto harmonic_sum = [&](int l) {
    const double xi = l * step;
    const double zeta = 2.0 * a * xi / oracle::hbar_c;
    // The static limit is reached with a tiny frequency in place of xi_0 = 0.
    const double x = l == 0 ? 1e-12 : xi;
    const double eps = materials::eval_eps(m.permittivity, x, T);
    auto coeff = [&](double y) {
      // y = 2 a q, so k = sqrt(q^2 - (xi/c)^2).
      const double q = y / (2.0 * a);
      const double k = std::sqrt(std::max(q * q - std::pow(xi / oracle::hbar_c, 2), 0.0));
      return oracle::fresnel(eps, 1.0, x, k);
    };
    double sum = 0.0;
    const int max_n = l == 0 ? 4000 : 400;
    double last = 0.0;
    for (int n = 1; n <= max_n; ++n) {
      auto f = [&](double t) {
        const auto r = coeff(t / n);
        return t * std::exp(-t) * oracle::bessel_i1(b * t) *
               (std::pow(r.tm * r.tm, n) + std::pow(r.te * r.te, n));
      };
      const double lo = n * zeta;
      const double width = 1.0 / (1.0 - b);
      double term = oracle::integrate(f, lo, lo + 2.0 * width, 16) +
                    oracle::integrate(f, lo + 2.0 * width, lo + 80.0 * width, 64);
      term /= static_cast<double>(n) * n;
      sum += term;
      last = term;
      if (l > 0 && std::abs(term) < 1e-14 * std::abs(sum)) break;
    }
    // Terms tend to c / n^2 at l = 0; add the remaining tail.
    if (l == 0) sum += last * max_n * max_n * (1.0 / (max_n + 0.5));
    return sum;
  };
  const double s = oracle::matsubara(T, [&](int l, double) { return harmonic_sum(l); }, 1e-11);
  const double r_nm = radius_um * 1e3;
  const double pref = oracle::pi * oracle::k_b * T * r_nm * c.amplitude_plate * c.amplitude_sphere *
                      std::sin(c.phase) / (2.0 * a * a * a * c.period * b);
  return pref * s * oracle::joule_per_ev * 1e9;
}

}  // namespace

TEST_CASE("PFA sphere force and pressure from gradient") {
  const auto grid = grid300();
  const PlatePairSpec plates{gold_drude(), gold_drude(), 0.0, false};
  const SphereSpec sphere{150.0, 400.0};
  const auto f = pfa_sphere_force(plates, sphere, grid);
  auto spec = plates;
  spec.a_nm = 400.0;
  const double fpp = lifshitz::free_energy(spec, grid).value;
  CHECK(f.value == doctest::Approx(2.0 * oracle::pi * 150e-6 * fpp).epsilon(1e-14));
  CHECK(f.pfa_error_bound == doctest::Approx(400.0 / 150e3));
  CHECK_FALSE(f.pfa_warning);
  CHECK(pfa_sphere_force(plates, {3.0, 400.0}, grid).pfa_warning);
  CHECK_THROWS_AS(pfa_sphere_force(plates, {0.0, 400.0}, grid), std::invalid_argument);

  const auto p = pressure_from_gradient({{400.0, 2.0}}, 150.0);
  CHECK(p[0].second == doctest::Approx(-2.0 / (2.0 * oracle::pi * 150e-6)));

  const auto d = modulation_diff(plates, {glass(), gold_drude(), 0.0, false}, sphere, grid);
  const auto dark = pfa_sphere_force({glass(), gold_drude(), 0.0, false}, sphere, grid);
  CHECK(d.value == doctest::Approx(f.value - dark.value).epsilon(1e-14));
}

TEST_CASE("beta and reduced sine") {
  const CorrugationSpec c{85.4, 13.7, 574.7, 1.0};
  CHECK(beta(124.7, c) ==
        doctest::Approx(std::sqrt(85.4 * 85.4 + 13.7 * 13.7 - 2 * 85.4 * 13.7 * std::cos(1.0)) / 124.7));
  CHECK(reduced_sine(0.0) == 0.0);
  CHECK(reduced_sine(oracle::pi) == 0.0);
  CHECK(reduced_sine(-oracle::pi) == 0.0);
  CHECK(reduced_sine(6.0 * oracle::pi) == 0.0);
  CHECK(reduced_sine(0.5 * oracle::pi) == doctest::Approx(1.0));
}

TEST_CASE("lateral force against brute-force summation") {
  const double T = 300.0;
  const CorrugationSpec c{20.0, 20.0, 1000.0, 0.5 * oracle::pi};
  const SphereSpec sphere{100.0, 300.0};
  for (const auto& m : {gold_drude(), glass(), gold_plasma()}) {
    const auto f = lateral_force({m, m, 300.0, false}, sphere, c, grid300());
    CHECK(f.value == doctest::Approx(lateral_oracle(m, 300.0, 100.0, c, T)).epsilon(1e-6));
  }
}

TEST_CASE("lateral force symmetries") {
  const auto m = gold_drude();
  const PlatePairSpec plates{m, m, 0.0, false};
  const SphereSpec sphere{97.0, 124.7};
  auto force = [&](double phase) {
    return lateral_force(plates, sphere, {85.4, 13.7, 574.7, phase}, grid300()).value;
  };
  CHECK(force(0.0) == 0.0);
  CHECK(force(oracle::pi) == 0.0);
  for (double phi : {0.3, 1.2, 2.5}) {
    const double f = force(phi);
    CHECK(force(-phi) == doctest::Approx(-f).epsilon(1e-12));
    CHECK(force(phi + 2.0 * oracle::pi) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("lateral force: small-amplitude scaling and truncation stability") {
  const auto m = gold_drude();
  const PlatePairSpec plates{m, m, 0.0, false};
  const SphereSpec sphere{97.0, 200.0};
  auto scaled = [&](double e) {
    return lateral_force(plates, sphere, {20.0 * e, 10.0 * e, 600.0, 1.0}, grid300()).value / (e * e);
  };
  const double d1 = std::abs(scaled(0.2) - scaled(0.1));
  const double d2 = std::abs(scaled(0.1) - scaled(0.05));
  CHECK(d2 < 0.3 * d1);

  const CorrugationSpec c{40.0, 20.0, 600.0, 1.0};
  auto grid = grid300();
  const double base = lateral_force(plates, sphere, c, grid).value;
  grid.tail_tol *= 0.5;
  CHECK(lateral_force(plates, sphere, c, grid).value == doctest::Approx(base).epsilon(1e-8));
  LateralOptions opt;
  opt.n_tol *= 0.5;
  CHECK(lateral_force(plates, sphere, c, grid300(), opt).value == doctest::Approx(base).epsilon(1e-8));
}

TEST_CASE("lateral force rejects unsupported input") {
  const PlatePairSpec mixed{gold_drude(), glass(), 0.0, false};
  CHECK_THROWS_AS(lateral_force(mixed, {97.0, 124.7}, {10.0, 10.0, 500.0, 1.0}, grid300()),
                  std::invalid_argument);
  const PlatePairSpec same{gold_drude(), gold_drude(), 0.0, false};
  CHECK_THROWS_AS(lateral_force(same, {97.0, 50.0}, {40.0, 40.0, 500.0, 2.0}, grid300()),
                  NumericalError);
  const auto warn = lateral_force(same, {97.0, 124.7}, {10.0, 10.0, 500.0, 1.0}, grid300());
  CHECK(warn.pfa_warning);
}

TEST_CASE("asymmetry metric") {
  const double two_pi = 2.0 * oracle::pi;
  auto sample = [&](auto&& f, int n) {
    std::vector<double> x(n + 1), y(n + 1);
    for (int i = 0; i <= n; ++i) {
      x[i] = two_pi * i / n;
      y[i] = f(x[i]);
    }
    y[n] = y[0];
    return std::pair{x, y};
  };
  {
    auto [x, y] = sample([](double p) { return std::sin(p); }, 256);
    CHECK(asymmetry_metric(x, y) == doctest::Approx(0.0).epsilon(1e-6));
  }
  {
    auto skewed = [](double p) { return std::sin(p) + 0.3 * std::sin(2.0 * p); };
    auto [x, y] = sample(skewed, 512);
    const double top = oracle::argmax(skewed, 0.0, two_pi);
    double bottom = oracle::argmax([&](double p) { return -skewed(p); }, 0.0, two_pi);
    if (bottom > top) bottom -= two_pi;
    const double expected = std::abs(top - (bottom + oracle::pi)) / two_pi;
    CHECK(asymmetry_metric(x, y) == doctest::Approx(expected).epsilon(1e-4));
  }
  std::vector<double> few(10, 0.0);
  CHECK_THROWS_AS(asymmetry_metric(few, few), std::invalid_argument);
}
