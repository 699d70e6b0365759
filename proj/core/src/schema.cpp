#include "approxlab/schema.hpp"

#include <stdexcept>

namespace approxlab {

namespace {

bool type_matches(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

struct Walker {
  const json& root;
  std::vector<SchemaIssue> issues;

  const json& resolve(const json& schema) {
    const json* s = &schema;
    int hops = 0;
    while (s->is_object() && s->contains("$ref")) {
      const std::string ref = (*s)["$ref"].get<std::string>();
      if (ref.rfind("#", 0) != 0) throw std::invalid_argument("schema: only local $ref supported");
      s = &root.at(json::json_pointer(ref.substr(1)));
      if (++hops > 32) throw std::invalid_argument("schema: $ref cycle");
    }
    return *s;
  }

  void check(const json& value, const json& schema_in, const std::string& path) {
    const json& schema = resolve(schema_in);
    if (!schema.is_object()) return;  // permissive: "true" schemas

    if (schema.contains("type")) {
      const json& t = schema["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = type_matches(value, t.get<std::string>());
      } else {
        for (const json& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
      }
      if (!ok) {
        issues.push_back({path, "type mismatch (expected " + t.dump() + ")"});
        return;  // further keyword checks would only cascade
      }
    }

    if (schema.contains("enum")) {
      bool ok = false;
      for (const json& alt : schema["enum"]) ok = ok || value == alt;
      if (!ok) issues.push_back({path, "value not in enum " + schema["enum"].dump()});
    }

    if (schema.contains("minimum") && value.is_number() &&
        value.get<double>() < schema["minimum"].get<double>())
      issues.push_back({path, "below minimum " + schema["minimum"].dump()});
    if (schema.contains("maximum") && value.is_number() &&
        value.get<double>() > schema["maximum"].get<double>())
      issues.push_back({path, "above maximum " + schema["maximum"].dump()});

    if (value.is_object()) {
      if (schema.contains("required"))
        for (const json& key : schema["required"])
          if (!value.contains(key.get<std::string>()))
            issues.push_back({path, "missing required property \"" + key.get<std::string>() + "\""});
      const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
      if (props)
        for (auto it = props->begin(); it != props->end(); ++it)
          if (value.contains(it.key())) check(value[it.key()], it.value(), path + "/" + it.key());
      if (schema.contains("additionalProperties") && schema["additionalProperties"].is_boolean() &&
          !schema["additionalProperties"].get<bool>())
        for (auto it = value.begin(); it != value.end(); ++it)
          if (!props || !props->contains(it.key()))
            issues.push_back({path, "unexpected property \"" + it.key() + "\""});
    }

    if (value.is_array()) {
      if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
        issues.push_back({path, "fewer than minItems " + schema["minItems"].dump()});
      if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>())
        issues.push_back({path, "more than maxItems " + schema["maxItems"].dump()});
      if (schema.contains("items")) {
        std::size_t i = 0;
        for (const json& item : value) check(item, schema["items"], path + "/" + std::to_string(i++));
      }
    }

    if (schema.contains("anyOf")) {
      bool ok = false;
      for (const json& alt : schema["anyOf"]) {
        Walker probe{root, {}};
        probe.check(value, alt, path);
        if (probe.issues.empty()) {
          ok = true;
          break;
        }
      }
      if (!ok) issues.push_back({path, "matched no branch of anyOf"});
    }
  }
};

}  // namespace

std::vector<SchemaIssue> schema_validate(const json& value, const json& schema) {
  Walker w{schema, {}};
  w.check(value, schema, "");
  return w.issues;
}

}  // namespace approxlab
