#include "casimir/material_config.hpp"

#include "casimir/error.hpp"
#include "casimir/units.hpp"
#include "json_reader.hpp"
#include "material_json.hpp"

namespace casimir::materials {

using nlohmann::json;
using detail::ObjectReader;

namespace json_io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

OscillatorSet read_oscillators(ObjectReader& r, bool required, std::vector<std::string>& errors) {
  OscillatorSet set;
  const auto* v = r.raw("oscillators");
  if (!v) {
    if (required) errors.push_back(r.at("oscillators") + ": missing required field");
    return set;
  }
  if (!v->is_array()) {
    errors.push_back(r.at("oscillators") + ": expected an array");
    return set;
  }
  for (std::size_t i = 0; i < v->size(); ++i) {
    ObjectReader o((*v)[i], r.at("oscillators") + "[" + std::to_string(i) + "]", errors);
    if (!o.valid()) continue;
    Oscillator osc;
    osc.strength = o.number("strength_eV2").value_or(0.0);
    osc.frequency = o.number("frequency_eV").value_or(1.0);
    osc.damping = o.number("damping_eV", false).value_or(0.0);
    set.oscillators.push_back(osc);
  }
  return set;
}

TemperatureFunction read_temperature_function(ObjectReader& r, const std::string& key,
                                              std::vector<std::string>& errors) {
  const auto* v = r.raw(key);
  const std::string path = r.at(key);
  if (!v) {
    errors.push_back(path + ": missing required field");
    return {};
  }
  if (v->is_number()) return TemperatureFunction::constant(v->get<double>());
  ObjectReader o(*v, path, errors);
  if (!o.valid()) return {};
  try {
    if (const auto* t = o.raw("table")) {
      return TemperatureFunction::table(detail::read_pairs(*t, o.at("table"), errors));
    }
    if (const auto* p = o.raw("power_law")) {
      ObjectReader pl(*p, o.at("power_law"), errors);
      const auto value = pl.number("value");
      const auto ref = pl.number("reference_K");
      const auto exponent = pl.number("exponent");
      if (value && ref && exponent) return TemperatureFunction::power_law(*value, *ref, *exponent);
      return {};
    }
  } catch (const std::invalid_argument& e) {
    errors.push_back(path + ": " + e.what());
    return {};
  }
  errors.push_back(path + ": expected a number, {\"table\": ...} or {\"power_law\": ...}");
  return {};
}

}  // namespace

PermittivityModel read_permittivity(const json& j, const std::string& path,
                                    std::vector<std::string>& errors) {
  ObjectReader r(j, path, errors);
  if (!r.valid()) return {};
  const auto model = r.string("model");
  if (!model) return {};
  if (*model == "dielectric") {
    return Dielectric{read_oscillators(r, true, errors)};
  }
  if (*model == "dc_conductivity") {
    DcConductivity d;
    d.core = read_oscillators(r, true, errors);
    d.conductivity = read_temperature_function(r, "conductivity_eV", errors);
    return d;
  }
  if (*model == "drude") {
    Drude d;
    d.plasma_frequency = r.number("plasma_frequency_eV").value_or(0.0);
    d.relaxation = read_temperature_function(r, "relaxation_eV", errors);
    d.core = read_oscillators(r, false, errors);
    return d;
  }
  if (*model == "plasma") {
    return Plasma{r.number("plasma_frequency_eV").value_or(0.0)};
  }
  if (*model == "generalized_plasma") {
    GeneralizedPlasma g;
    g.plasma_frequency = r.number("plasma_frequency_eV").value_or(0.0);
    g.core = read_oscillators(r, true, errors);
    return g;
  }
  if (*model == "ferro_mix") {
    const double f = r.number("volume_fraction").value_or(0.0);
    const auto* base = r.raw("base");
    if (!base) {
      errors.push_back(r.at("base") + ": missing required field");
      return {};
    }
    return make_mix(read_permittivity(*base, r.at("base"), errors), f);
  }
  errors.push_back(r.at("model") + ": unknown model '" + *model + "'");
  return {};
}

PlateMaterial read_material(const json& j, const std::string& path,
                            std::vector<std::string>& errors) {
  PlateMaterial m;
  m.name = path;
  const std::size_t errors_before = errors.size();
  {
    ObjectReader r(j, path, errors);
    if (!r.valid()) return m;
    if (const auto* p = r.raw("permittivity")) {
      m.permittivity = read_permittivity(*p, r.at("permittivity"), errors);
    } else {
      errors.push_back(r.at("permittivity") + ": missing required field");
    }
    if (const auto* mag = r.raw("magnetic")) {
      ObjectReader mr(*mag, r.at("magnetic"), errors);
      m.magnetic.mu0 = mr.number("mu0").value_or(1.0);
      if (auto tc = mr.number("curie_temperature_K", false)) m.magnetic.curie_temperature = tc;
      if (const auto* table = mr.raw("mu_table")) {
        m.magnetic.mu_table = detail::read_pairs(*table, mr.at("mu_table"), errors);
      }
    }
    if (const auto* s = r.raw("screening")) {
      ObjectReader sr(*s, r.at("screening"), errors);
      if (auto kappa = sr.number("kappa_eV")) m.screening_kappa = *kappa / units::hbar_c;
    }
  }
  if (errors.size() == errors_before) {
    auto issues = validate(m);
    errors.insert(errors.end(), issues.begin(), issues.end());
  }
  return m;
}

namespace {

json write_oscillators(const OscillatorSet& set) {
  json arr = json::array();
  for (const auto& o : set.oscillators) {
    arr.push_back({{"strength_eV2", o.strength}, {"frequency_eV", o.frequency},
                   {"damping_eV", o.damping}});
  }
  return arr;
}

json write_temperature_function(const TemperatureFunction& f) {
  return std::visit(
      overloaded{
          [](const TemperatureFunction::Constant& c) { return json(c.value); },
          [](const TemperatureFunction::PowerLaw& p) {
            return json{{"power_law",
                         {{"value", p.reference_value},
                          {"reference_K", p.reference_temperature},
                          {"exponent", p.exponent}}}};
          },
          [](const TemperatureFunction::Table& t) {
            json rows = json::array();
            for (const auto& [temperature, value] : t.samples) rows.push_back({temperature, value});
            return json{{"table", rows}};
          },
      },
      f.form());
}

}  // namespace

json write_permittivity(const PermittivityModel& model) {
  return std::visit(
      overloaded{
          [](const Dielectric& d) {
            return json{{"model", "dielectric"}, {"oscillators", write_oscillators(d.core)}};
          },
          [](const DcConductivity& d) {
            return json{{"model", "dc_conductivity"},
                        {"oscillators", write_oscillators(d.core)},
                        {"conductivity_eV", write_temperature_function(d.conductivity)}};
          },
          [](const Drude& d) {
            json out{{"model", "drude"},
                     {"plasma_frequency_eV", d.plasma_frequency},
                     {"relaxation_eV", write_temperature_function(d.relaxation)}};
            if (!d.core.oscillators.empty()) out["oscillators"] = write_oscillators(d.core);
            return out;
          },
          [](const Plasma& p) {
            return json{{"model", "plasma"}, {"plasma_frequency_eV", p.plasma_frequency}};
          },
          [](const GeneralizedPlasma& g) {
            return json{{"model", "generalized_plasma"},
                        {"plasma_frequency_eV", g.plasma_frequency},
                        {"oscillators", write_oscillators(g.core)}};
          },
          [](const FerroDielectricMix& m) {
            return json{{"model", "ferro_mix"},
                        {"volume_fraction", m.volume_fraction},
                        {"base", m.base ? write_permittivity(*m.base) : json(nullptr)}};
          },
      },
      model.model);
}

json write_material(const PlateMaterial& material) {
  json out{{"permittivity", write_permittivity(material.permittivity)}};
  const auto& mag = material.magnetic;
  if (mag.mu0 != 1.0 || mag.curie_temperature || !mag.mu_table.empty()) {
    json m{{"mu0", mag.mu0}};
    if (mag.curie_temperature) m["curie_temperature_K"] = *mag.curie_temperature;
    if (!mag.mu_table.empty()) {
      json rows = json::array();
      for (const auto& [t, mu] : mag.mu_table) rows.push_back({t, mu});
      m["mu_table"] = rows;
    }
    out["magnetic"] = m;
  }
  if (material.screening_kappa) {
    out["screening"] = {{"kappa_eV", *material.screening_kappa * units::hbar_c}};
  }
  return out;
}

}  // namespace json_io

PlateMaterial parse_material_json(std::string_view json_text, const std::string& name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({name + ": " + e.what()});
  }
  std::vector<std::string> errors;
  auto material = json_io::read_material(j, name, errors);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return material;
}

std::string material_to_json(const PlateMaterial& material) {
  return json_io::write_material(material).dump(2);
}

}  // namespace casimir::materials
