// Minimal JSON-Schema-subset validator for the shipped artifact schemas.
//
// Supported keywords: "type" (string or array of strings; "integer" means a
// JSON integer), "enum", "required", "properties", "additionalProperties"
// (boolean form), "items" (single schema), "minItems", "maxItems", "minimum",
// "maximum", "anyOf", and document-local "$ref" ("#/..." JSON pointers,
// typically into "$defs").
#pragma once

#include <string>
#include <vector>

#include "approxlab/rational.hpp"

namespace approxlab {

struct SchemaIssue {
  std::string path;     // JSON pointer into the validated value
  std::string message;  // what failed
};

std::vector<SchemaIssue> schema_validate(const json& value, const json& schema);

inline bool schema_ok(const json& value, const json& schema) {
  return schema_validate(value, schema).empty();
}

}  // namespace approxlab
