#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir::materials::json_io {

PlateMaterial read_material(const nlohmann::json& j, const std::string& path,
                            std::vector<std::string>& errors);
PermittivityModel read_permittivity(const nlohmann::json& j, const std::string& path,
                                    std::vector<std::string>& errors);

nlohmann::json write_material(const PlateMaterial& material);
nlohmann::json write_permittivity(const PermittivityModel& model);

}  // namespace casimir::materials::json_io
