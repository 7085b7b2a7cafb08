#pragma once

// Minimal JSON-Schema (draft-07 subset) checker for validating the CLI's
// --json outputs against the schemas shipped under schemas/. Supports the
// keywords those schemas use: type, required, properties, items, enum,
// minimum, maximum, exclusiveMinimum, minItems, maxItems.

#include <string>

#include <nlohmann/json.hpp>

namespace testutil {

inline bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    return false;
}

inline void check_schema(const nlohmann::json& value, const nlohmann::json& schema,
                         const std::string& where, std::string& error) {
    if (!error.empty()) return;
    if (schema.contains("type") && !type_matches(value, schema["type"].get<std::string>())) {
        error = where + ": expected type " + schema["type"].get<std::string>();
        return;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& v : schema["enum"]) found = found || v == value;
        if (!found) {
            error = where + ": value not in enum";
            return;
        }
    }
    if (value.is_number()) {
        const double d = value.get<double>();
        if (schema.contains("minimum") && d < schema["minimum"].get<double>()) {
            error = where + ": below minimum";
            return;
        }
        if (schema.contains("maximum") && d > schema["maximum"].get<double>()) {
            error = where + ": above maximum";
            return;
        }
        if (schema.contains("exclusiveMinimum") &&
            d <= schema["exclusiveMinimum"].get<double>()) {
            error = where + ": not above exclusiveMinimum";
            return;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!value.contains(key.get<std::string>())) {
                    error = where + ": missing required key " + key.get<std::string>();
                    return;
                }
            }
        }
        if (schema.contains("properties")) {
            for (const auto& [key, sub] : schema["properties"].items()) {
                if (value.contains(key)) {
                    check_schema(value[key], sub, where + "." + key, error);
                }
            }
        }
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>()) {
            error = where + ": too few items";
            return;
        }
        if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>()) {
            error = where + ": too many items";
            return;
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                check_schema(value[i], schema["items"],
                             where + "[" + std::to_string(i) + "]", error);
            }
        }
    }
}

/// Returns an empty string when the value validates.
inline std::string validate_against_schema(const nlohmann::json& value,
                                           const nlohmann::json& schema) {
    std::string error;
    check_schema(value, schema, "$", error);
    return error;
}

}  // namespace testutil
