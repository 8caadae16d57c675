#include <array>
#include <cmath>

#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir::lifshitz {

namespace {

double single_oscillator(double static_value, const std::optional<double>& frequency, double xi) {
  if (!frequency) return static_value;
  const double w2 = *frequency * *frequency;
  return static_value * w2 / (w2 + xi * xi);
}

// int_zeta^inf y^power e^-y {2 y^2 [alpha r_TM + beta r_TE] - zeta^2 (alpha + beta)(r_TM + r_TE)} / y^2 dy
// with power = 2 (free energy) or 3 (force).
TermValue atom_integral(const reflection::PlateResponse& wall, double alpha, double beta,
                        int power, double rel_tol) {
  const double zeta = wall.zeta();
  if (alpha == 0.0 && beta == 0.0) return {};
  if (zeta == 0.0 && wall.is_constant()) {
    const auto r = wall.at(1.0);
    const double moment = power == 2 ? 2.0 : 6.0;  // int y^power e^-y dy
    return {2.0 * moment * (alpha * r.tm + beta * r.te), 0.0, false};
  }
  auto integrand = [&](double y) {
    const auto r = wall.at(y);
    const double braces = 2.0 * y * y * (alpha * r.tm + beta * r.te) -
                          zeta * zeta * (alpha + beta) * (r.tm + r.te);
    return (power == 3 ? y : 1.0) * braces * std::exp(-y);
  };
  const std::array<double, 5> breaks{zeta, zeta + 1.0, zeta + 5.0, zeta + 20.0, zeta + 60.0};
  numerics::QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  const auto res = numerics::integrate(integrand, std::span<const double>(breaks), opt);
  if (!res.converged) throw NumericalError("atom-wall quadrature did not converge");
  return {res.value, res.error, false};
}

}  // namespace

double AtomSpec::alpha(double xi) const { return single_oscillator(alpha0, alpha_frequency, xi); }
double AtomSpec::beta(double xi) const { return single_oscillator(beta0, beta_frequency, xi); }

CasimirPolderResult casimir_polder(const AtomSpec& atom, const PlateMaterial& wall, double a_nm,
                                   const MatsubaraGrid& grid) {
  if (!(a_nm > 0.0)) throw std::invalid_argument("separation must be positive");
  auto term = [&](int l, int power) {
    try {
      const reflection::PlateResponse r(wall, l, grid.temperature, a_nm, false);
      const double xi = grid.xi(l);
      return atom_integral(r, atom.alpha(xi), atom.beta(xi), power, grid.quad_rel_tol);
    } catch (const NumericalError& e) {
      throw NumericalError(e.what(), l, a_nm);
    }
  };
  const double kt = units::thermal_energy(grid.temperature);
  const double a3 = a_nm * a_nm * a_nm;
  CasimirPolderResult out;
  out.free_energy = matsubara_sum(grid, [&](int l) { return term(l, 2); }, a_nm);
  out.force = matsubara_sum(grid, [&](int l) { return term(l, 3); }, a_nm);
  const double energy_factor = -kt / (8.0 * a3) * units::electron_volt;
  const double force_factor = -kt / (8.0 * a3 * a_nm) * units::force_to_si;
  for (auto* r : {&out.free_energy, &out.force}) {
    const double f = r == &out.free_energy ? energy_factor : force_factor;
    r->value *= f;
    r->quadrature_error *= std::abs(f);
    r->tail_estimate *= f;
  }
  return out;
}

}  // namespace casimir::lifshitz
