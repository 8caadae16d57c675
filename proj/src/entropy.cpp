#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casimir/lifshitz.hpp"
#include "casimir/numerics/special.hpp"
#include "casimir/units.hpp"

namespace casimir::lifshitz {

namespace {

double free_energy_at(const PlatePairSpec& spec, MatsubaraGrid grid, double temperature) {
  grid.temperature = temperature;
  return free_energy(spec, grid).value;
}

// k_B / (16 pi a^2) in J/(m^2 K)
double entropy_unit(double a_nm) {
  return units::boltzmann / (16.0 * units::pi * a_nm * a_nm) * units::energy_per_area_to_si;
}

}  // namespace

EntropyResult entropy(const PlatePairSpec& spec, const MatsubaraGrid& grid) {
  const double t = grid.temperature;
  if (!(t > 0.0)) throw std::invalid_argument("temperature must be positive");
  double h = std::max(0.5, 0.02 * t);
  if (h >= t) h = 0.5 * t;
  auto central = [&](double step) {
    return -(free_energy_at(spec, grid, t + step) - free_energy_at(spec, grid, t - step)) /
           (2.0 * step);
  };
  const double d1 = central(h);
  const double d2 = central(0.5 * h);
  const double d3 = central(0.25 * h);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d3 - d2) / 3.0;
  const double best = (16.0 * r2 - r1) / 15.0;
  return {best, std::abs(best - r2), h};
}

ZeroTemperatureLimit entropy_zero_temperature_limit(const PlatePairSpec& spec,
                                                    const MatsubaraGrid& grid,
                                                    const std::vector<double>& temperatures) {
  if (temperatures.size() < 2) {
    throw std::invalid_argument("zero-temperature extrapolation needs at least two temperatures");
  }
  ZeroTemperatureLimit out;
  out.temperatures = temperatures;
  for (double t : temperatures) {
    auto g = grid;
    g.temperature = t;
    out.entropies.push_back(entropy(spec, g).value);
  }
  // Neville tableau evaluated at T = 0.
  const auto& x = out.temperatures;
  std::vector<double> p = out.entropies;
  const std::size_t n = p.size();
  double previous = p[0];
  for (std::size_t m = 1; m < n; ++m) {
    previous = p[0];
    for (std::size_t i = 0; i + m < n; ++i) {
      p[i] = (x[i] * p[i + 1] - x[i + m] * p[i]) / (x[i] - x[i + m]);
    }
  }
  out.value = p[0];
  out.error = std::abs(p[0] - previous);
  return out;
}

double entropy_oracle_dielectric(double r0_1, double r0_2, double a_nm) {
  return entropy_unit(a_nm) * (numerics::zeta3 - numerics::polylog3(r0_1 * r0_2));
}

DrudeEntropyAsymptote entropy_oracle_drude(double plasma_frequency_1, double plasma_frequency_2,
                                           double a_nm) {
  const double s = (plasma_frequency_1 + plasma_frequency_2) /
                   (plasma_frequency_1 * plasma_frequency_2);
  const double x = units::hbar_c * s / a_nm;
  const double lead = -entropy_unit(a_nm) * numerics::zeta3;
  DrudeEntropyAsymptote out;
  out.terms = {lead, -2.0 * x * lead, 3.0 * x * x * lead};
  out.value = out.terms[0] + out.terms[1] + out.terms[2];
  out.valid = x < 0.1;
  return out;
}

}  // namespace casimir::lifshitz
