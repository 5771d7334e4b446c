#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace wcop {

/// Deterministic JSON text: insertion key order, doubles as %.17g,
/// non-finite doubles as null, `indent` spaces per level (0 = one line).
std::string write_json(const nlohmann::ordered_json& j, int indent = 2);
void write_json(std::ostream& out, const nlohmann::ordered_json& j, int indent = 2);

}  // namespace wcop
