#include "casimir/materials.hpp"

#include "casimir/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casimir::materials {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

TemperatureFunction TemperatureFunction::constant(double value) {
  TemperatureFunction f;
  f.form_ = Constant{value};
  return f;
}

TemperatureFunction TemperatureFunction::power_law(double reference_value,
                                                   double reference_temperature,
                                                   double exponent) {
  if (!(reference_temperature > 0.0)) {
    throw std::invalid_argument("power-law reference temperature must be positive");
  }
  TemperatureFunction f;
  f.form_ = PowerLaw{reference_value, reference_temperature, exponent};
  return f;
}

TemperatureFunction TemperatureFunction::table(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw std::invalid_argument("temperature table is empty");
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0)) {
      throw std::invalid_argument("temperature table requires T > 0");
    }
    if (i > 0 && samples[i].first == samples[i - 1].first) {
      throw std::invalid_argument("temperature table has duplicate temperatures");
    }
  }
  TemperatureFunction f;
  f.form_ = Table{std::move(samples)};
  return f;
}

double TemperatureFunction::operator()(double temperature) const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [&](const PowerLaw& p) {
            return p.reference_value * std::pow(temperature / p.reference_temperature, p.exponent);
          },
          [&](const Table& t) {
            const auto& s = t.samples;
            if (temperature <= s.front().first) return s.front().second;
            if (temperature >= s.back().first) return s.back().second;
            auto hi = std::upper_bound(s.begin(), s.end(), temperature,
                                       [](double v, const auto& row) { return v < row.first; });
            auto lo = hi - 1;
            const double w = std::log(temperature / lo->first) / std::log(hi->first / lo->first);
            return lo->second + w * (hi->second - lo->second);
          },
      },
      form_);
}

bool FerroDielectricMix::operator==(const FerroDielectricMix& other) const {
  if (volume_fraction != other.volume_fraction) return false;
  if (!base || !other.base) return base == other.base;
  return *base == *other.base;
}

FerroDielectricMix make_mix(PermittivityModel base, double volume_fraction) {
  return FerroDielectricMix{std::make_shared<const PermittivityModel>(std::move(base)),
                            volume_fraction};
}

double eval_eps_core(const OscillatorSet& osc, double xi) {
  double eps = 1.0;
  for (const auto& o : osc.oscillators) {
    eps += o.strength / (o.frequency * o.frequency + xi * xi + o.damping * xi);
  }
  return eps;
}

double static_value(const OscillatorSet& osc) { return eval_eps_core(osc, 0.0); }

namespace {

double mix_factor(double f) { return 1.0 + 3.0 * f / (1.0 - f); }

const PermittivityModel& mix_base(const FerroDielectricMix& m) {
  if (!m.base) throw std::invalid_argument("ferromagnetic mixture has no base permittivity");
  return *m.base;
}

void require_positive_xi(double xi, const char* model) {
  if (!(xi > 0.0)) {
    throw std::domain_error(std::string(model) + " permittivity diverges at xi = 0");
  }
}

}  // namespace

double eval_eps(const PermittivityModel& model, double xi, double temperature) {
  return std::visit(
      overloaded{
          [&](const Dielectric& d) { return eval_eps_core(d.core, xi); },
          [&](const DcConductivity& d) {
            const double sigma = d.conductivity(temperature);
            if (sigma == 0.0) return eval_eps_core(d.core, xi);
            require_positive_xi(xi, "dc-conductivity");
            return eval_eps_core(d.core, xi) + 4.0 * units::pi * sigma / xi;
          },
          [&](const Drude& d) {
            require_positive_xi(xi, "Drude");
            const double wp = d.plasma_frequency;
            return eval_eps_core(d.core, xi) + wp * wp / (xi * (xi + d.relaxation(temperature)));
          },
          [&](const Plasma& p) {
            require_positive_xi(xi, "plasma");
            const double r = p.plasma_frequency / xi;
            return 1.0 + r * r;
          },
          [&](const GeneralizedPlasma& g) {
            require_positive_xi(xi, "generalized plasma");
            const double r = g.plasma_frequency / xi;
            return eval_eps_core(g.core, xi) + r * r;
          },
          [&](const FerroDielectricMix& m) {
            return eval_eps(mix_base(m), xi, temperature) * mix_factor(m.volume_fraction);
          },
      },
      model.model);
}

double eval_eps_background(const PermittivityModel& model, double xi) {
  return std::visit(
      overloaded{
          [&](const Dielectric& d) { return eval_eps_core(d.core, xi); },
          [&](const DcConductivity& d) { return eval_eps_core(d.core, xi); },
          [&](const Drude& d) { return eval_eps_core(d.core, xi); },
          [&](const Plasma&) { return 1.0; },
          [&](const GeneralizedPlasma& g) { return eval_eps_core(g.core, xi); },
          [&](const FerroDielectricMix& m) {
            return eval_eps_background(mix_base(m), xi) * mix_factor(m.volume_fraction);
          },
      },
      model.model);
}

double background_static_value(const PermittivityModel& model) {
  return eval_eps_background(model, 0.0);
}

StaticLimit static_limit(const PermittivityModel& model, double temperature) {
  using Kind = StaticLimit::Kind;
  return std::visit(
      overloaded{
          [&](const Dielectric& d) { return StaticLimit{Kind::Finite, static_value(d.core), 0.0}; },
          [&](const DcConductivity& d) {
            if (d.conductivity(temperature) == 0.0) {
              return StaticLimit{Kind::Finite, static_value(d.core), 0.0};
            }
            return StaticLimit{Kind::Conducting, 0.0, 0.0};
          },
          [&](const Drude& d) {
            const double wp = d.plasma_frequency;
            if (d.relaxation(temperature) == 0.0) return StaticLimit{Kind::Plasma, 0.0, wp * wp};
            return StaticLimit{Kind::Conducting, 0.0, 0.0};
          },
          [&](const Plasma& p) {
            return StaticLimit{Kind::Plasma, 0.0, p.plasma_frequency * p.plasma_frequency};
          },
          [&](const GeneralizedPlasma& g) {
            return StaticLimit{Kind::Plasma, 0.0, g.plasma_frequency * g.plasma_frequency};
          },
          [&](const FerroDielectricMix& m) {
            auto base = static_limit(mix_base(m), temperature);
            const double factor = mix_factor(m.volume_fraction);
            base.eps0 *= factor;
            base.plasma_sq *= factor;
            return base;
          },
      },
      model.model);
}

bool has_free_carriers(const PermittivityModel& model) {
  return std::visit(
      overloaded{
          [](const Dielectric&) { return false; },
          [](const DcConductivity&) { return true; },
          [](const Drude&) { return true; },
          [](const Plasma&) { return false; },
          [](const GeneralizedPlasma&) { return false; },
          [](const FerroDielectricMix& m) { return has_free_carriers(mix_base(m)); },
      },
      model.model);
}

double eval_mu(const MagneticModel& mag, int matsubara_index, double temperature) {
  if (matsubara_index != 0) return 1.0;
  if (mag.curie_temperature && temperature >= *mag.curie_temperature) return 1.0;
  if (mag.mu_table.empty()) return mag.mu0;
  const auto& t = mag.mu_table;
  if (temperature <= t.front().first) return t.front().second;
  if (temperature >= t.back().first) return t.back().second;
  auto hi = std::upper_bound(t.begin(), t.end(), temperature,
                             [](double v, const auto& row) { return v < row.first; });
  auto lo = hi - 1;
  const double w = (temperature - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

double static_contrast(double eps0) { return (eps0 - 1.0) / (eps0 + 1.0); }

double static_contrast(const OscillatorSet& osc) { return static_contrast(static_value(osc)); }

namespace {

void check_oscillators(const OscillatorSet& osc, const std::string& where,
                       std::vector<std::string>& errors) {
  for (std::size_t j = 0; j < osc.oscillators.size(); ++j) {
    const auto& o = osc.oscillators[j];
    const std::string tag = where + ".oscillators[" + std::to_string(j) + "]";
    if (!(o.frequency > 0.0)) errors.push_back(tag + ": resonance frequency must be > 0");
    if (!(o.strength >= 0.0)) errors.push_back(tag + ": strength must be >= 0");
    if (!(o.damping >= 0.0)) errors.push_back(tag + ": damping must be >= 0");
  }
}

void validate_into(const PermittivityModel& model, const std::string& where,
                   std::vector<std::string>& errors) {
  std::visit(
      overloaded{
          [&](const Dielectric& d) { check_oscillators(d.core, where, errors); },
          [&](const DcConductivity& d) {
            check_oscillators(d.core, where, errors);
            if (const auto* c = std::get_if<TemperatureFunction::Constant>(&d.conductivity.form());
                c && c->value < 0.0) {
              errors.push_back(where + ": dc conductivity must be >= 0");
            }
          },
          [&](const Drude& d) {
            check_oscillators(d.core, where, errors);
            if (!(d.plasma_frequency > 0.0)) errors.push_back(where + ": plasma frequency must be > 0");
            if (const auto* c = std::get_if<TemperatureFunction::Constant>(&d.relaxation.form());
                c && c->value < 0.0) {
              errors.push_back(where + ": relaxation must be >= 0");
            }
          },
          [&](const Plasma& p) {
            if (!(p.plasma_frequency > 0.0)) errors.push_back(where + ": plasma frequency must be > 0");
          },
          [&](const GeneralizedPlasma& g) {
            check_oscillators(g.core, where, errors);
            if (!(g.plasma_frequency > 0.0)) errors.push_back(where + ": plasma frequency must be > 0");
          },
          [&](const FerroDielectricMix& m) {
            if (!(m.volume_fraction >= 0.0 && m.volume_fraction < 1.0)) {
              errors.push_back(where + ": volume fraction must satisfy 0 <= f < 1");
            }
            if (!m.base) {
              errors.push_back(where + ": missing base permittivity");
            } else {
              validate_into(*m.base, where + ".base", errors);
            }
          },
      },
      model.model);
}

}  // namespace

std::vector<std::string> validate(const PermittivityModel& model) {
  std::vector<std::string> errors;
  validate_into(model, "permittivity", errors);
  return errors;
}

std::vector<std::string> validate(const PlateMaterial& material) {
  const std::string prefix = material.name.empty() ? "material" : material.name;
  std::vector<std::string> errors;
  validate_into(material.permittivity, prefix + ".permittivity", errors);
  if (!(material.magnetic.mu0 >= 1.0)) errors.push_back(prefix + ".magnetic: mu0 must be >= 1");
  if (material.magnetic.curie_temperature && !(*material.magnetic.curie_temperature > 0.0)) {
    errors.push_back(prefix + ".magnetic: Curie temperature must be > 0");
  }
  for (std::size_t i = 1; i < material.magnetic.mu_table.size(); ++i) {
    if (!(material.magnetic.mu_table[i].first > material.magnetic.mu_table[i - 1].first)) {
      errors.push_back(prefix + ".magnetic: mu table temperatures must increase");
      break;
    }
  }
  if (material.screening_kappa) {
    if (!(*material.screening_kappa > 0.0)) {
      errors.push_back(prefix + ".screening: kappa must be > 0");
    }
    if (!has_free_carriers(material.permittivity)) {
      errors.push_back(prefix + ".screening: requires a Drude or dc-conductivity permittivity");
    }
  }
  return errors;
}

}  // namespace casimir::materials
