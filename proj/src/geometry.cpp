#include "casimir/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casimir/units.hpp"

namespace casimir::geometry {

SphereForce pfa_sphere_force(const PlatePairSpec& plates, const SphereSpec& sphere,
                             const MatsubaraGrid& grid) {
  if (!(sphere.radius_um > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  auto spec = plates;
  spec.a_nm = sphere.a_nm;
  SphereForce out;
  out.plate_energy = lifshitz::free_energy(spec, grid);
  const double radius_m = sphere.radius_um * units::nm_per_um * units::m_per_nm;
  out.value = 2.0 * units::pi * radius_m * out.plate_energy.value;
  out.pfa_error_bound = sphere.a_nm / (sphere.radius_um * units::nm_per_um);
  out.pfa_warning = out.pfa_error_bound > 0.1;
  return out;
}

std::vector<std::pair<double, double>> pressure_from_gradient(
    const std::vector<std::pair<double, double>>& gradient, double radius_um) {
  if (gradient.empty()) throw std::invalid_argument("no force-gradient samples");
  if (!(radius_um > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  const double radius_m = radius_um * units::nm_per_um * units::m_per_nm;
  std::vector<std::pair<double, double>> out;
  out.reserve(gradient.size());
  for (const auto& [a, slope] : gradient) out.emplace_back(a, -slope / (2.0 * units::pi * radius_m));
  return out;
}

SphereForce modulation_diff(const PlatePairSpec& light, const PlatePairSpec& dark,
                            const SphereSpec& sphere, const MatsubaraGrid& grid) {
  const auto lit = pfa_sphere_force(light, sphere, grid);
  const auto unlit = pfa_sphere_force(dark, sphere, grid);
  SphereForce out = lit;
  out.value = lit.value - unlit.value;
  out.plate_energy.value = lit.plate_energy.value - unlit.plate_energy.value;
  out.plate_energy.quadrature_error += unlit.plate_energy.quadrature_error;
  out.plate_energy.terms_used = std::max(lit.plate_energy.terms_used, unlit.plate_energy.terms_used);
  return out;
}

double reduced_sine(double phase) {
  const double r = std::remainder(phase, 2.0 * units::pi);
  if (r == 0.0 || std::abs(r) == units::pi) return 0.0;
  return std::sin(r);
}

double beta(double a_nm, const CorrugationSpec& corr) {
  const double a1 = corr.amplitude_plate;
  const double a2 = corr.amplitude_sphere;
  const double half_sine = std::sin(0.5 * std::remainder(corr.phase, 2.0 * units::pi));
  const double diff = a1 - a2;
  return std::sqrt(diff * diff + 4.0 * a1 * a2 * half_sine * half_sine) / a_nm;
}

namespace {

struct Extremum {
  double position;
  bool maximum;
};

}  // namespace

double asymmetry_metric(const std::vector<double>& phase, const std::vector<double>& force) {
  if (phase.size() != force.size()) throw std::invalid_argument("phase and force lengths differ");
  if (phase.size() < 64) throw std::invalid_argument("asymmetry metric needs at least 64 samples");
  const double two_pi = 2.0 * units::pi;
  for (std::size_t i = 1; i < phase.size(); ++i) {
    if (!(phase[i] > phase[i - 1])) throw std::invalid_argument("phases must increase");
  }
  const double span = phase.back() - phase.front();
  if (span < two_pi * (1.0 - 1e-12)) throw std::invalid_argument("curve must cover a full period");
  // A curve sampled on [p, p + 2 pi] with matching endpoints is treated as periodic.
  const bool periodic = std::abs(span - two_pi) <= 1e-9 * two_pi &&
                        std::abs(force.back() - force.front()) <=
                            1e-9 * std::max(std::abs(force.front()), 1e-300);
  const std::size_t n = periodic ? phase.size() - 1 : phase.size();
  auto value = [&](std::ptrdiff_t i) {
    if (periodic) i = ((i % static_cast<std::ptrdiff_t>(n)) + static_cast<std::ptrdiff_t>(n)) %
                      static_cast<std::ptrdiff_t>(n);
    return force[static_cast<std::size_t>(i)];
  };
  std::vector<Extremum> extrema;
  const std::ptrdiff_t first = periodic ? 0 : 1;
  const std::ptrdiff_t last = periodic ? static_cast<std::ptrdiff_t>(n) : static_cast<std::ptrdiff_t>(n) - 1;
  for (std::ptrdiff_t i = first; i < last; ++i) {
    const double f0 = value(i - 1);
    const double f1 = value(i);
    const double f2 = value(i + 1);
    const bool is_max = f1 > f0 && f1 >= f2;
    const bool is_min = f1 < f0 && f1 <= f2;
    if (!is_max && !is_min) continue;
    const double step = periodic ? span / static_cast<double>(n)
                                 : 0.5 * (phase[static_cast<std::size_t>(i + 1)] -
                                          phase[static_cast<std::size_t>(i - 1)]);
    const double curvature = f0 - 2.0 * f1 + f2;
    const double offset = curvature != 0.0 ? 0.5 * (f0 - f2) / curvature : 0.0;
    extrema.push_back({phase[static_cast<std::size_t>(i)] + offset * step, is_max});
  }
  std::vector<double> shifts;
  const std::size_t m = extrema.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (!extrema[k].maximum) continue;
    double left = 0.0;
    double right = 0.0;
    bool found_left = false;
    bool found_right = false;
    for (std::size_t j = 1; j < m && !found_left; ++j) {
      if (!periodic && j > k) break;
      const std::size_t idx = (k + m - j) % m;
      if (extrema[idx].maximum) continue;
      left = extrema[idx].position - (idx > k ? span : 0.0);
      found_left = true;
    }
    for (std::size_t j = 1; j < m && !found_right; ++j) {
      if (!periodic && k + j >= m) break;
      const std::size_t idx = (k + j) % m;
      if (extrema[idx].maximum) continue;
      right = extrema[idx].position + (idx < k ? span : 0.0);
      found_right = true;
    }
    if (!found_left || !found_right) continue;
    shifts.push_back(std::abs(extrema[k].position - 0.5 * (left + right)));
  }
  if (shifts.empty()) throw std::invalid_argument("no maximum bracketed by two minima");
  double total = 0.0;
  for (double s : shifts) total += s;
  return total / static_cast<double>(shifts.size()) / two_pi;
}

}  // namespace casimir::geometry
