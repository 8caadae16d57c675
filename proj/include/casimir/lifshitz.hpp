#pragma once

// Matsubara-summed Lifshitz quantities for two parallel half-spaces and for
// an atom facing a wall.
//
// Plate integrals run over y = 2 a q from zeta_l = 2 a xi_l / (hbar c); the
// l = 0 term carries weight 1/2. SI results: J/m^2, Pa, J, N, J/(m^2 K).

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

namespace casimir::lifshitz {

using materials::PlateMaterial;

struct MatsubaraGrid {
  double temperature = 300.0;  ///< K
  double tail_tol = 1e-8;      ///< stop once three consecutive terms fall below tail_tol * |sum|
  int max_terms = 200000;
  double quad_rel_tol = 1e-9;
  int threads = 1;

  /// xi_l, eV
  double xi(int l) const;
};

struct PlatePairSpec {
  PlateMaterial plate1;
  PlateMaterial plate2;
  double a_nm = 0.0;
  bool use_modified_tm = false;  ///< applies to plates that carry a screening wave number
};

/// Atom polarizabilities, nm^3. Without a frequency the response is static.
struct AtomSpec {
  double alpha0 = 0.0;
  std::optional<double> alpha_frequency;  ///< eV, single-oscillator alpha0 w^2 / (w^2 + xi^2)
  double beta0 = 0.0;
  std::optional<double> beta_frequency;

  double alpha(double xi) const;
  double beta(double xi) const;
};

struct TermValue {
  double value = 0.0;
  double error = 0.0;
  bool static_probe = false;
};

struct SumResult {
  double value = 0.0;
  int terms_used = 0;
  double quadrature_error = 0.0;
  double tail_estimate = 0.0;
  bool static_probe = false;  ///< a modified-TM zero-frequency term was probed at small xi
};

/// Primed Matsubara sum of term(l) with the truncation rule of `grid`.
/// Terms are evaluated on grid.threads workers and reduced in ascending l.
/// Throws NumericalError (naming l and a) when max_terms is reached.
SumResult matsubara_sum(const MatsubaraGrid& grid, const std::function<TermValue(int)>& term,
                        std::optional<double> a_nm = {});

enum class PlateKernel {
  Energy,    ///< y ln(1 - r1 r2 e^-y)
  Pressure,  ///< y^2 r1 r2 e^-y / (1 - r1 r2 e^-y)
};

/// Integral over y >= zeta of the kernel summed over both polarizations.
TermValue plate_integral(const reflection::PlateResponse& r1, const reflection::PlateResponse& r2,
                         PlateKernel kernel, double rel_tol);

/// (1/4a^2) int y ln(...) dy, nm^-2
TermValue phi_energy(const PlatePairSpec& spec, int l, const MatsubaraGrid& grid);
/// (1/8a^3) int y^2 (...) dy, nm^-3
TermValue phi_pressure(const PlatePairSpec& spec, int l, const MatsubaraGrid& grid);

SumResult free_energy(const PlatePairSpec& spec, const MatsubaraGrid& grid);  ///< J/m^2
SumResult pressure(const PlatePairSpec& spec, const MatsubaraGrid& grid);     ///< Pa

double ideal_metal_pressure(double a_nm);       ///< Pa, -pi^2 hbar c / (240 a^4)
double ideal_metal_free_energy(double a_nm);    ///< J/m^2, -pi^2 hbar c / (720 a^3)

struct CasimirPolderResult {
  SumResult free_energy;  ///< J
  SumResult force;        ///< N, -d(free energy)/da
};

CasimirPolderResult casimir_polder(const AtomSpec& atom, const PlateMaterial& wall, double a_nm,
                                   const MatsubaraGrid& grid);

struct EntropyResult {
  double value = 0.0;  ///< J/(m^2 K)
  double error = 0.0;  ///< Richardson error estimate
  double step = 0.0;   ///< initial temperature step, K
};

/// -dF/dT at grid.temperature by central differences with two Richardson levels.
EntropyResult entropy(const PlatePairSpec& spec, const MatsubaraGrid& grid);

struct ZeroTemperatureLimit {
  double value = 0.0;
  double error = 0.0;
  std::vector<double> temperatures;
  std::vector<double> entropies;
};

/// Polynomial (Neville) extrapolation to T = 0 of entropies at the given
/// low temperatures.
ZeroTemperatureLimit entropy_zero_temperature_limit(const PlatePairSpec& spec,
                                                    const MatsubaraGrid& grid,
                                                    const std::vector<double>& temperatures);

/// k_B / (16 pi a^2) [zeta(3) - Li_3(r1 r2)], J/(m^2 K)
double entropy_oracle_dielectric(double r0_1, double r0_2, double a_nm);

struct DrudeEntropyAsymptote {
  double value = 0.0;                ///< sum of the three terms, J/(m^2 K)
  std::array<double, 3> terms{};     ///< successive orders in c/(a wp)
  bool valid = false;                ///< expansion parameter small enough
};

DrudeEntropyAsymptote entropy_oracle_drude(double plasma_frequency_1, double plasma_frequency_2,
                                           double a_nm);

}  // namespace casimir::lifshitz
