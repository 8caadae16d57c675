#include "casimir/lifshitz.hpp"

#include <array>
#include <cmath>

#include "casimir/error.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/special.hpp"
#include "casimir/units.hpp"

namespace casimir::lifshitz {

using reflection::PlateResponse;

namespace {

// Bound on the two-polarization integral beyond y = upper, assuming |r1 r2| <= 1.
double tail_bound(PlateKernel kernel, double upper) {
  const double decay = std::exp(-upper);
  const double denom = 1.0 - decay;
  if (kernel == PlateKernel::Energy) return 2.0 * (upper + 1.0) * decay / denom;
  return 2.0 * (upper * upper + 2.0 * upper + 2.0) * decay / denom;
}

}  // namespace

TermValue plate_integral(const PlateResponse& r1, const PlateResponse& r2, PlateKernel kernel,
                         double rel_tol) {
  const double zeta = r1.zeta();
  if (zeta == 0.0 && r1.is_constant() && r2.is_constant()) {
    // int_0^inf y ln(1 - r e^-y) dy = -Li_3(r), int_0^inf y^2 r e^-y / (1 - r e^-y) dy = 2 Li_3(r)
    const auto a = r1.at(1.0);
    const auto b = r2.at(1.0);
    const double li = numerics::polylog3(a.tm * b.tm) + numerics::polylog3(a.te * b.te);
    return {kernel == PlateKernel::Energy ? -li : 2.0 * li, 0.0, false};
  }
  auto integrand = [&](double y) {
    const auto a = r1.at(y);
    const auto b = r2.at(y);
    const double decay = std::exp(-y);
    const double x_tm = a.tm * b.tm * decay;
    const double x_te = a.te * b.te * decay;
    if (kernel == PlateKernel::Energy) return y * (std::log1p(-x_tm) + std::log1p(-x_te));
    return y * y * (x_tm / (1.0 - x_tm) + x_te / (1.0 - x_te));
  };
  const std::array<double, 5> breaks{zeta, zeta + 1.0, zeta + 5.0, zeta + 20.0, zeta + 60.0};
  numerics::QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  const auto res = numerics::integrate(integrand, std::span<const double>(breaks), opt);
  if (!res.converged) throw NumericalError("plate quadrature did not converge");
  return {res.value, res.error + tail_bound(kernel, breaks.back()),
          r1.used_static_probe() || r2.used_static_probe()};
}

namespace {

TermValue phi(const PlatePairSpec& spec, int l, const MatsubaraGrid& grid, PlateKernel kernel) {
  if (!(spec.a_nm > 0.0)) throw std::invalid_argument("separation must be positive");
  try {
    const PlateResponse r1(spec.plate1, l, grid.temperature, spec.a_nm, spec.use_modified_tm);
    const PlateResponse r2(spec.plate2, l, grid.temperature, spec.a_nm, spec.use_modified_tm);
    auto t = plate_integral(r1, r2, kernel, grid.quad_rel_tol);
    const double a = spec.a_nm;
    const double scale = kernel == PlateKernel::Energy ? 1.0 / (4.0 * a * a) : 1.0 / (8.0 * a * a * a);
    t.value *= scale;
    t.error *= scale;
    return t;
  } catch (const NumericalError& e) {
    if (e.matsubara_index()) throw;
    throw NumericalError(e.what(), l, spec.a_nm);
  }
}

SumResult scaled(SumResult r, double factor) {
  r.value *= factor;
  r.quadrature_error *= std::abs(factor);
  r.tail_estimate *= factor;
  return r;
}

}  // namespace

TermValue phi_energy(const PlatePairSpec& spec, int l, const MatsubaraGrid& grid) {
  return phi(spec, l, grid, PlateKernel::Energy);
}

TermValue phi_pressure(const PlatePairSpec& spec, int l, const MatsubaraGrid& grid) {
  return phi(spec, l, grid, PlateKernel::Pressure);
}

SumResult free_energy(const PlatePairSpec& spec, const MatsubaraGrid& grid) {
  auto sum = matsubara_sum(grid, [&](int l) { return phi_energy(spec, l, grid); }, spec.a_nm);
  const double kt = units::thermal_energy(grid.temperature);
  return scaled(sum, kt / (2.0 * units::pi) * units::energy_per_area_to_si);
}

SumResult pressure(const PlatePairSpec& spec, const MatsubaraGrid& grid) {
  auto sum = matsubara_sum(grid, [&](int l) { return phi_pressure(spec, l, grid); }, spec.a_nm);
  const double kt = units::thermal_energy(grid.temperature);
  return scaled(sum, -kt / units::pi * units::pressure_to_si);
}

double ideal_metal_pressure(double a_nm) {
  const double a2 = a_nm * a_nm;
  return -units::pi * units::pi * units::hbar_c / (240.0 * a2 * a2) * units::pressure_to_si;
}

double ideal_metal_free_energy(double a_nm) {
  return -units::pi * units::pi * units::hbar_c / (720.0 * a_nm * a_nm * a_nm) *
         units::energy_per_area_to_si;
}

}  // namespace casimir::lifshitz
