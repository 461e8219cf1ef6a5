#pragma once

// Minimal JSON Schema checker covering exactly the draft-07 subset that
// schemas/output.schema.json uses: $ref into #/definitions, oneOf,
// type (single or list, including "null"), properties / required /
// additionalProperties, items, minimum, pattern. Failures return a
// human-readable reason so test output points at the offending branch.

#include <optional>
#include <regex>
#include <string>

#include "json.hpp"

namespace schema_check {

using Json = nlohmann::json;

inline bool type_matches(const Json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline std::optional<std::string> validate(const Json& value, const Json& schema,
                                           const Json& root, const std::string& path);

inline std::optional<std::string> validate_ref(const Json& value, const std::string& ref,
                                               const Json& root, const std::string& path) {
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) {
        return path + ": unsupported $ref " + ref;
    }
    const std::string name = ref.substr(prefix.size());
    if (!root.contains("definitions") || !root["definitions"].contains(name)) {
        return path + ": dangling $ref " + ref;
    }
    return validate(value, root["definitions"][name], root, path);
}

inline std::optional<std::string> validate(const Json& value, const Json& schema,
                                           const Json& root, const std::string& path) {
    if (schema.contains("$ref")) {
        return validate_ref(value, schema["$ref"].get<std::string>(), root, path);
    }

    if (schema.contains("oneOf")) {
        int matches = 0;
        for (const Json& branch : schema["oneOf"]) {
            if (!validate(value, branch, root, path).has_value()) {
                ++matches;
            }
        }
        if (matches != 1) {
            return path + ": matched " + std::to_string(matches) + " oneOf branches, want 1";
        }
        return std::nullopt;
    }

    if (schema.contains("type")) {
        const Json& type = schema["type"];
        bool ok = false;
        if (type.is_array()) {
            for (const Json& t : type) {
                ok = ok || type_matches(value, t.get<std::string>());
            }
        } else {
            ok = type_matches(value, type.get<std::string>());
        }
        if (!ok) {
            return path + ": type mismatch, got " + std::string(value.type_name());
        }
    }

    // "minimum" applies only when the value is a number (null passes for
    // the ["integer","null"] union).
    if (schema.contains("minimum") && value.is_number()) {
        if (value.get<double>() < schema["minimum"].get<double>()) {
            return path + ": below minimum " + schema["minimum"].dump();
        }
    }

    if (schema.contains("pattern") && value.is_string()) {
        const std::regex re(schema["pattern"].get<std::string>());
        if (!std::regex_search(value.get<std::string>(), re)) {
            return path + ": string '" + value.get<std::string>() + "' fails pattern " +
                   schema["pattern"].get<std::string>();
        }
    }

    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const Json& key : schema["required"]) {
                if (!value.contains(key.get<std::string>())) {
                    return path + ": missing required key " + key.get<std::string>();
                }
            }
        }
        const Json props =
            schema.contains("properties") ? schema["properties"] : Json::object();
        for (const auto& [key, member] : value.items()) {
            if (props.contains(key)) {
                if (auto err = validate(member, props[key], root, path + "." + key)) {
                    return err;
                }
            } else if (schema.contains("additionalProperties") &&
                       schema["additionalProperties"].is_boolean() &&
                       !schema["additionalProperties"].get<bool>()) {
                return path + ": unexpected key " + key;
            }
        }
    }

    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (auto err =
                    validate(value[i], schema["items"], root, path + "[" + std::to_string(i) + "]")) {
                return err;
            }
        }
    }

    return std::nullopt;
}

/// Empty result means the value conforms; otherwise the first failure.
inline std::optional<std::string> check(const Json& value, const Json& schema) {
    return validate(value, schema, schema, "$");
}

}  // namespace schema_check
