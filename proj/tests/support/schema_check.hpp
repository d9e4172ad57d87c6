#pragma once

// Minimal structural validator for the draft-07 subset used by the shipped
// schemas: object "required"/"properties", "items", and primitive "type".

#include <string>

#include <json.hpp>

namespace geodiam::testing {

inline bool type_matches(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "null") return value.is_null();
  return false;
}

inline bool validate_schema(const nlohmann::json& value,
                            const nlohmann::json& schema, std::string* error) {
  if (schema.contains("type") &&
      !type_matches(value, schema["type"].get<std::string>())) {
    if (error) *error = "type mismatch, expected " + schema["type"].dump();
    return false;
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) {
        if (error) *error = "missing required key " + key.dump();
        return false;
      }
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (auto it = schema["properties"].begin(); it != schema["properties"].end();
         ++it) {
      if (value.contains(it.key()) &&
          !validate_schema(value[it.key()], it.value(), error)) {
        if (error) *error = "at ." + it.key() + ": " + *error;
        return false;
      }
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (const auto& item : value) {
      if (!validate_schema(item, schema["items"], error)) {
        if (error) *error = "in items: " + *error;
        return false;
      }
    }
  }
  return true;
}

}  // namespace geodiam::testing
