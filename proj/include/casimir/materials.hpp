#pragma once

// Dielectric permittivity and magnetic permeability models evaluated along
// the imaginary frequency axis, omega = i xi. Frequencies in eV.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace casimir::materials {

/// One Lorentz oscillator of the bound-core response.
struct Oscillator {
  double strength = 0.0;   ///< g_j, eV^2
  double frequency = 1.0;  ///< omega_j, eV, > 0
  double damping = 0.0;    ///< gamma_j, eV, >= 0
  bool operator==(const Oscillator&) const = default;
};

struct OscillatorSet {
  std::vector<Oscillator> oscillators;
  bool operator==(const OscillatorSet&) const = default;
};

/// A scalar function of temperature: constant, power law, or a table sampled
/// in T and interpolated linearly in ln T (clamped outside the table).
class TemperatureFunction {
 public:
  TemperatureFunction() = default;
  static TemperatureFunction constant(double value);
  static TemperatureFunction power_law(double reference_value, double reference_temperature,
                                       double exponent);
  static TemperatureFunction table(std::vector<std::pair<double, double>> samples);

  double operator()(double temperature) const;
  bool operator==(const TemperatureFunction&) const = default;

  struct Constant {
    double value = 0.0;
    bool operator==(const Constant&) const = default;
  };
  struct PowerLaw {
    double reference_value = 0.0;
    double reference_temperature = 1.0;
    double exponent = 0.0;
    bool operator==(const PowerLaw&) const = default;
  };
  struct Table {
    std::vector<std::pair<double, double>> samples;
    bool operator==(const Table&) const = default;
  };
  const std::variant<Constant, PowerLaw, Table>& form() const { return form_; }

 private:
  std::variant<Constant, PowerLaw, Table> form_{Constant{}};
};

/// Pure dielectric: bound-core oscillators only.
struct Dielectric {
  OscillatorSet core;
  bool operator==(const Dielectric&) const = default;
};

/// Core oscillators plus the dc conductivity term 4 pi sigma0(T) / xi.
struct DcConductivity {
  OscillatorSet core;
  TemperatureFunction conductivity;  ///< sigma0(T), eV
  bool operator==(const DcConductivity&) const = default;
};

/// Drude metal, optionally on top of a core-electron background.
struct Drude {
  double plasma_frequency = 0.0;    ///< eV
  TemperatureFunction relaxation;   ///< gamma(T), eV
  OscillatorSet core;               ///< empty: vacuum background
  bool operator==(const Drude&) const = default;
};

/// Dissipationless plasma model.
struct Plasma {
  double plasma_frequency = 0.0;  ///< eV
  bool operator==(const Plasma&) const = default;
};

/// Plasma free-electron term on top of core oscillators.
struct GeneralizedPlasma {
  OscillatorSet core;
  double plasma_frequency = 0.0;  ///< eV
  bool operator==(const GeneralizedPlasma&) const = default;
};

struct PermittivityModel;

/// Ferromagnetic-particle composite: base permittivity scaled by 1 + 3f/(1-f).
struct FerroDielectricMix {
  std::shared_ptr<const PermittivityModel> base;
  double volume_fraction = 0.0;  ///< 0 <= f < 1
  bool operator==(const FerroDielectricMix& other) const;
};

struct PermittivityModel {
  using Variant =
      std::variant<Dielectric, DcConductivity, Drude, Plasma, GeneralizedPlasma, FerroDielectricMix>;
  Variant model;

  PermittivityModel() : model(Dielectric{}) {}
  template <class M>
    requires std::is_constructible_v<Variant, M&&> &&
             (!std::is_same_v<std::remove_cvref_t<M>, PermittivityModel>)
  PermittivityModel(M&& m) : model(std::forward<M>(m)) {}

  bool operator==(const PermittivityModel&) const = default;
};

FerroDielectricMix make_mix(PermittivityModel base, double volume_fraction);

struct MagneticModel {
  double mu0 = 1.0;                                   ///< static permeability
  std::optional<double> curie_temperature;            ///< K
  std::vector<std::pair<double, double>> mu_table;    ///< (T, mu0(T)), piecewise linear
  bool operator==(const MagneticModel&) const = default;
};

/// One half-space.
struct PlateMaterial {
  std::string name;
  PermittivityModel permittivity;
  MagneticModel magnetic;
  std::optional<double> screening_kappa;  ///< inverse screening length, nm^-1
  bool operator==(const PlateMaterial&) const = default;
};

/// How eps(i xi) behaves as xi -> 0.
struct StaticLimit {
  enum class Kind {
    Finite,      ///< eps(0) finite
    Conducting,  ///< eps ~ 1/xi: eps xi^2 -> 0
    Plasma,      ///< eps ~ wp^2/xi^2: eps xi^2 -> wp^2
  };
  Kind kind = Kind::Finite;
  double eps0 = 1.0;          ///< Finite: eps(0)
  double plasma_sq = 0.0;     ///< Plasma: lim eps xi^2, eV^2
};

double eval_eps_core(const OscillatorSet& osc, double xi);
double static_value(const OscillatorSet& osc);

/// eps(i xi) of any model. Throws std::domain_error at xi = 0 for models that
/// diverge there.
double eval_eps(const PermittivityModel& model, double xi, double temperature);

/// Core-electron part eps_c(i xi) of a model with free carriers; for
/// models without a separate core this is the full permittivity or 1.
double eval_eps_background(const PermittivityModel& model, double xi);
double background_static_value(const PermittivityModel& model);

StaticLimit static_limit(const PermittivityModel& model, double temperature);

bool has_free_carriers(const PermittivityModel& model);

/// mu(i xi_l): mu0(T) for l = 0 below the Curie temperature, 1 otherwise.
double eval_mu(const MagneticModel& mag, int matsubara_index, double temperature);

/// (eps_c(0) - 1) / (eps_c(0) + 1).
double static_contrast(const OscillatorSet& osc);
double static_contrast(double eps0);

/// Validation messages for a material; empty when valid.
std::vector<std::string> validate(const PlateMaterial& material);
std::vector<std::string> validate(const PermittivityModel& model);

}  // namespace casimir::materials
