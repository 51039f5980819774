#pragma once

#include <string>

#include "json.hpp"
#include "mvb/lattice.hpp"

namespace mvb {

nlohmann::ordered_json bundle_to_json(const DecomposedBundle& b);
// context names the source in error messages
DecomposedBundle bundle_from_json(const nlohmann::json& j, const std::string& context = "bundle");
DecomposedBundle parse_bundle(const std::string& text, const std::string& context = "bundle");
DecomposedBundle load_bundle(const std::string& path);
void save_bundle(const DecomposedBundle& b, const std::string& path);

}  // namespace mvb
