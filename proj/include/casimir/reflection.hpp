#pragma once

// TM/TE reflection coefficients of a half-space at imaginary frequency.
//
// All coefficient formulas are homogeneous of degree zero in the wave
// numbers (q, k, xi/c, kappa), so the kernels below accept any common scale:
// nm^-1 for the public material-level API, or the dimensionless y = 2 a q
// used by the plate integrals.

#include "casimir/materials.hpp"

namespace casimir::reflection {

using materials::PlateMaterial;

struct ImaginaryFreqPoint {
  double xi = 0.0;      ///< eV
  double k_perp = 0.0;  ///< nm^-1

  /// sqrt(k_perp^2 + xi^2 / (hbar c)^2), nm^-1
  double q() const;
};

struct Reflection {
  double tm = 0.0;
  double te = 0.0;
};

/// Plain Fresnel pair for given eps, mu; q and xi_c = xi / c on a common scale.
Reflection fresnel_kernel(double eps, double mu, double q, double xi_c);

/// Screening-modified TM coefficient. `kappa` shares the scale of q.
double modified_tm_kernel(double eps, double eps_core, double eps_core_static, double q,
                          double xi_c, double kappa);

/// Fresnel coefficients at Matsubara index l. l = 0 returns zero_freq_limits.
Reflection fresnel(const PlateMaterial& material, const ImaginaryFreqPoint& pt, int l,
                   double temperature);

/// TM coefficient with free-carrier screening. Requires xi > 0 and a
/// screening wave number on the material.
double modified_tm(const PlateMaterial& material, const ImaginaryFreqPoint& pt,
                   double temperature);

/// Analytic xi -> 0 limits at fixed k_perp (nm^-1).
Reflection zero_freq_limits(const PlateMaterial& material, double k_perp, double temperature);

/// Frequency at which the modified TM coefficient stands in for its own
/// xi -> 0 limit, eV.
inline constexpr double modified_tm_static_probe = 1e-8;

/// Reflection of one plate at a fixed Matsubara frequency, as a function of
/// the dimensionless wave number y = 2 a q, y >= zeta = 2 a xi / (hbar c).
class PlateResponse {
 public:
  PlateResponse(const PlateMaterial& material, int l, double temperature, double a_nm,
                bool use_modified_tm);

  Reflection at(double y) const;

  /// Both coefficients independent of y.
  bool is_constant() const { return tm_ == Mode::Constant && te_ == Mode::Constant; }
  /// TM coefficient independent of y.
  bool tm_constant() const { return tm_ == Mode::Constant; }
  bool te_constant() const { return te_ == Mode::Constant; }
  /// l = 0 modified TM coefficient was taken at a small finite frequency.
  bool used_static_probe() const { return probe_; }
  double zeta() const { return zeta_; }

 private:
  enum class Mode { Constant, Fresnel, StaticPlasma, Modified };
  Mode tm_ = Mode::Constant;
  Mode te_ = Mode::Constant;
  Reflection constant_{};
  double zeta_ = 0.0;    // 2 a xi / (hbar c) of this Matsubara term
  double xi_c_ = 0.0;    // scaled frequency fed to the kernels
  double eps_ = 1.0;
  double mu_ = 1.0;
  double eps_core_ = 1.0;
  double eps_core_static_ = 1.0;
  double kappa_ = 0.0;   // 2 a kappa
  double plasma_ = 0.0;  // mu (2 a wp / hbar c)^2
  bool probe_ = false;
};

}  // namespace casimir::reflection
