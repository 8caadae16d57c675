#pragma once

// Sphere-plate observables from plate results by the proximity force
// approximation, and the lateral force between sinusoidally corrugated
// surfaces.

#include <utility>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir::geometry {

using lifshitz::MatsubaraGrid;
using lifshitz::PlatePairSpec;

struct SphereSpec {
  double radius_um = 0.0;
  double a_nm = 0.0;  ///< closest separation
};

struct SphereForce {
  double value = 0.0;            ///< N
  double pfa_error_bound = 0.0;  ///< relative, a / R
  bool pfa_warning = false;      ///< a / R > 0.1
  lifshitz::SumResult plate_energy;
};

/// F = 2 pi R F_pp(a). The separation of `plates` is replaced by sphere.a_nm.
SphereForce pfa_sphere_force(const PlatePairSpec& plates, const SphereSpec& sphere,
                             const MatsubaraGrid& grid);

/// P = -F'/(2 pi R) for samples (a, F' in N/m); R in um. Returns (a, P in Pa).
std::vector<std::pair<double, double>> pressure_from_gradient(
    const std::vector<std::pair<double, double>>& gradient, double radius_um);

/// F_light - F_dark for the same sphere and temperature.
SphereForce modulation_diff(const PlatePairSpec& light, const PlatePairSpec& dark,
                            const SphereSpec& sphere, const MatsubaraGrid& grid);

struct CorrugationSpec {
  double amplitude_plate = 0.0;   ///< A1, nm
  double amplitude_sphere = 0.0;  ///< A2, nm
  double period = 0.0;            ///< Lambda, nm
  double phase = 0.0;             ///< phi, rad
};

/// sqrt(A1^2 + A2^2 - 2 A1 A2 cos phi) / a
double beta(double a_nm, const CorrugationSpec& corr);

/// sin(phi) reduced modulo 2 pi; exactly zero at multiples of pi.
double reduced_sine(double phase);

struct LateralOptions {
  double n_tol = 1e-10;  ///< stop the harmonic series once a term is below n_tol * sum
  int max_n = 100000;
};

struct LateralResult {
  double value = 0.0;  ///< N
  double beta = 0.0;
  int matsubara_terms = 0;
  int max_harmonic = 0;      ///< largest n evaluated directly
  bool pfa_warning = false;  ///< 2 pi a / Lambda > 0.3
};

/// Lateral force on a sphere above a plate, both corrugated with the same
/// period. Requires identical plate materials and beta < 1.
LateralResult lateral_force(const PlatePairSpec& plates, const SphereSpec& sphere,
                            const CorrugationSpec& corr, const MatsubaraGrid& grid,
                            const LateralOptions& options = {});

/// Mean |shift| of each maximum from the midpoint of its two neighbouring
/// minima, as a fraction of the period. `phase` in radians, increasing,
/// spanning at least 2 pi with at least 64 samples.
double asymmetry_metric(const std::vector<double>& phase, const std::vector<double>& force);

}  // namespace casimir::geometry
