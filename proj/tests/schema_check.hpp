#pragma once

// Minimal JSON Schema validator covering the keywords used by schemas/.
#include <string>
#include <vector>

#include "json.hpp"

namespace testing {

using json = nlohmann::json;

inline bool type_matches(const std::string& type, const json& v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "null") return v.is_null();
  return false;
}

inline void validate(const json& schema, const json& v, const std::string& path,
                     std::vector<std::string>& errors) {
  auto err = [&](const std::string& m) { errors.push_back(path + ": " + m); };
  if (schema.is_boolean()) {
    if (!schema.get<bool>()) err("not allowed");
    return;
  }
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>(), v);
    } else {
      for (const auto& x : t) ok = ok || type_matches(x.get<std::string>(), v);
    }
    if (!ok) {
      err("type mismatch, expected " + t.dump());
      return;
    }
  }
  if (schema.contains("const") && schema["const"] != v) err("const mismatch");
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) err("not in enum");
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>()) err("below minimum");
    if (schema.contains("maximum") && x > schema["maximum"].get<double>()) err("above maximum");
    if (schema.contains("exclusiveMinimum") && x <= schema["exclusiveMinimum"].get<double>())
      err("not above exclusiveMinimum");
    if (schema.contains("exclusiveMaximum") && x >= schema["exclusiveMaximum"].get<double>())
      err("not below exclusiveMaximum");
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& r : schema["required"])
        if (!v.contains(r.get<std::string>())) err("missing " + r.get<std::string>());
    const json props = schema.value("properties", json::object());
    for (const auto& [k, x] : v.items()) {
      if (props.contains(k)) {
        validate(props[k], x, path + "." + k, errors);
      } else if (schema.contains("additionalProperties")) {
        validate(schema["additionalProperties"], x, path + "." + k, errors);
      }
    }
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
      err("too few items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i)
        validate(schema["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
  }
}

inline std::vector<std::string> validate(const json& schema, const json& v) {
  std::vector<std::string> errors;
  validate(schema, v, "$", errors);
  return errors;
}

}  // namespace testing
