#pragma once

// Schema helpers shared by the document loaders. Every failure carries the
// JSON pointer of the offending field.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "flexplan/errors.hpp"

namespace flexplan::detail {

using nlohmann::json;

inline std::string join_path(const std::string& parent, const std::string& key) {
    return parent + "/" + key;
}

inline std::string join_path(const std::string& parent, std::size_t index) {
    return parent + "/" + std::to_string(index);
}

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(join_path(path, key), "missing required field");
    return *it;
}

inline double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) throw SchemaError(path, "expected a number");
    double v = value.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "value must be finite");
    return v;
}

inline double require_number(const json& obj, const std::string& key, const std::string& path) {
    return as_number(require(obj, key, path), join_path(path, key));
}

inline double optional_number(const json& obj, const std::string& key, const std::string& path,
                              double fallback) {
    if (!obj.contains(key)) return fallback;
    return as_number(obj.at(key), join_path(path, key));
}

inline std::int64_t require_integer(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d)) return static_cast<std::int64_t>(d);
    }
    throw SchemaError(join_path(path, key), "expected an integer");
}

inline std::string require_string(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) throw SchemaError(join_path(path, key), "expected a string");
    return v.get<std::string>();
}

inline bool optional_bool(const json& obj, const std::string& key, const std::string& path, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw SchemaError(join_path(path, key), "expected a boolean");
    return v.get<bool>();
}

inline const json& require_array(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_array()) throw SchemaError(join_path(path, key), "expected an array");
    return v;
}

inline void require_schema_version(const json& doc, std::int64_t expected) {
    std::int64_t version = require_integer(doc, "schema_version", "");
    if (version != expected) {
        throw SchemaError("/schema_version", "unsupported schema version " + std::to_string(version));
    }
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("", path.string() + ": " + e.what());
    }
}

}  // namespace flexplan::detail
