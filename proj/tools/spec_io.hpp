#pragma once

#include <string>

#include "conedet/boundary.hpp"
#include "conedet/cone.hpp"
#include "json.hpp"

namespace conedet::io {

using json = nlohmann::ordered_json;

// Throws SchemaError with a field path on any schema violation.
OperatorSpec parse_operator_spec(const json& doc);
ConeSpec parse_cone_spec(const json& doc);

// 64-bit FNV-1a of the raw document, as 16 hex digits.
std::string spec_hash(const std::string& bytes);

// Serialises with 17 significant digits for every floating value.
std::string dump(const json& j, int indent = 2);

json cplx_json(cplx z);

}  // namespace conedet::io
