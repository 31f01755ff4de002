#pragma once

#include <json.hpp>

#include <string>

#include "toral/number_field.hpp"

namespace toral {

/// Builds and validates a field from a field-data document. Throws
/// ValidationError naming the offending key or failed invariant.
NumberFieldData parse_field(const nlohmann::json& doc);

NumberFieldData load_field(const std::string& path);

/// Field-data document for any field (round-trips through parse_field).
nlohmann::json field_to_json(const NumberFieldData& field);

} // namespace toral
