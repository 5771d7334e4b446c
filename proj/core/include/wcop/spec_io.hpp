#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "wcop/functions.hpp"

namespace wcop {

/// Function-spec documents: {"type": ..., payload}. Complex scalars are
/// accepted as a number, [re, im] or {"re", "im"}.
/// Throws ParseError on unknown types, missing fields and invalid data.
FunctionSpec parse_spec(const nlohmann::json& doc);
FunctionSpec parse_spec_text(std::string_view text);

/// Reads inline JSON (text starting with '{') or a file path.
FunctionSpec load_spec(const std::string& path_or_json);

/// parse_spec(emit_spec(f)) == f, and emit is a fixed point after one pass.
nlohmann::ordered_json emit_spec(const FunctionSpec& f);

/// parse_spec followed by the self-map gate.
FunctionSpec parse_symbol(const nlohmann::json& doc);

}  // namespace wcop
