#pragma once

#include <string>

#include "json.hpp"
#include "scn/model.hpp"

namespace scn {

// Network text format: {"n":2,"m":2,"links":[[1],[1,2]]} with 1-based
// supplier indices, or {"tiers":[n1,...,nT],"links":[per-tier lists]} for
// multi-tier chains. Malformed input raises ValidationError.
Network network_from_json(const nlohmann::json& j);
Network load_network_text(const std::string& text);
Network load_network_file(const std::string& path);

// Deterministic re-emission of the same format (1-based indices).
std::string network_to_json(const Network& net);

// JSON string/number fragments for hand-assembled output: numbers at 12
// significant digits, non-finite values as null.
std::string json_escape(const std::string& s);
std::string json_number(double v);

// Structural subset of JSON Schema: type (string or list), properties,
// required, items, enum, additionalProperties, minItems. On mismatch returns
// false and, when error is given, the first offending path.
bool matches_schema(const nlohmann::json& value, const nlohmann::json& schema,
                    std::string* error = nullptr);

}  // namespace scn
