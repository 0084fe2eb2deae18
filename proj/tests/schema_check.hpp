#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace lienard::testing {

/// Checks `instance` against the miniature JSON-Schema dialect used by the
/// documents under schemas/: `type` (one name or a list of alternatives),
/// `required`, `properties`, `items` (one schema for every element), and
/// `enum`. Returns "" when the instance conforms, otherwise a message
/// naming the first offending path.
inline std::string schema_violation(const nlohmann::json& schema,
                                    const nlohmann::json& instance,
                                    const std::string& path = "$") {
    auto type_ok = [&](const std::string& t) {
        if (t == "object") return instance.is_object();
        if (t == "array") return instance.is_array();
        if (t == "string") return instance.is_string();
        if (t == "number") return instance.is_number();
        if (t == "integer") return instance.is_number_integer();
        if (t == "boolean") return instance.is_boolean();
        if (t == "null") return instance.is_null();
        return false;
    };

    if (schema.contains("type")) {
        const auto& ty = schema.at("type");
        bool ok = false;
        if (ty.is_string())
            ok = type_ok(ty.get<std::string>());
        else
            for (const auto& t : ty) ok = ok || type_ok(t.get<std::string>());
        if (!ok) return path + ": type mismatch (got " + instance.type_name() + ")";
        // A null admitted by a union carries no members left to check.
        if (instance.is_null()) return "";
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema.at("enum")) ok = ok || (v == instance);
        if (!ok) return path + ": value not in enum";
    }

    if (instance.is_object()) {
        if (schema.contains("required"))
            for (const auto& name : schema.at("required"))
                if (!instance.contains(name.get<std::string>()))
                    return path + ": missing required key '" + name.get<std::string>() + "'";
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema.at("properties").items())
                if (instance.contains(key)) {
                    std::string err = schema_violation(sub, instance.at(key), path + "." + key);
                    if (!err.empty()) return err;
                }
    }

    if (instance.is_array() && schema.contains("items")) {
        std::size_t k = 0;
        for (const auto& el : instance) {
            std::string err =
                schema_violation(schema.at("items"), el, path + "[" + std::to_string(k) + "]");
            if (!err.empty()) return err;
            ++k;
        }
    }

    return "";
}

inline nlohmann::json load_schema(const std::string& name) {
    const std::string file = std::string(SCHEMA_DIR) + "/" + name + ".schema.json";
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open schema " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return nlohmann::json::parse(buf.str());
}

/// "" when `document` (JSON text) conforms to schemas/<name>.schema.json.
inline std::string document_violation(const std::string& name, const std::string& document) {
    return schema_violation(load_schema(name), nlohmann::json::parse(document));
}

}  // namespace lienard::testing
