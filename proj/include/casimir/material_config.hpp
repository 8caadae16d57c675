#pragma once

// JSON material definitions. One object per material:
//
//   {
//     "permittivity": {"model": "drude", "plasma_frequency_eV": 3.97, "relaxation_eV": 0.036},
//     "magnetic": {"mu0": 70, "curie_temperature_K": 1388},
//     "screening": {"kappa_eV": 0.5}
//   }
//
// Permittivity models and their keys:
//   dielectric          oscillators
//   dc_conductivity     oscillators, conductivity_eV
//   drude               plasma_frequency_eV, relaxation_eV, [oscillators]
//   plasma              plasma_frequency_eV
//   generalized_plasma  plasma_frequency_eV, oscillators
//   ferro_mix           volume_fraction, base (a permittivity object)
//
// oscillators is a list of {"strength_eV2", "frequency_eV", "damping_eV"}.
// conductivity_eV and relaxation_eV accept a number, {"table": [[T_K, value], ...]}
// (interpolated linearly in ln T) or {"power_law": {"value": v, "reference_K": T0,
// "exponent": p}}. Unknown keys are rejected.

#include <string>
#include <string_view>

#include "casimir/materials.hpp"

namespace casimir::materials {

/// Parses one material object. Throws ConfigError listing every violation.
PlateMaterial parse_material_json(std::string_view json_text, const std::string& name = "material");

/// Serializes a material back to the schema above.
std::string material_to_json(const PlateMaterial& material);

}  // namespace casimir::materials
