// Copyright 2026 The twirlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twirlkit/config.h"

#include <cstdio>
#include <map>

#include "twirlkit/errors.h"

namespace twirlkit {

// Generated from schemas/*.schema.json at configure time.
const std::map<std::string, std::string> &schema_texts();

namespace {

std::string pointer_join(const std::string &base, const std::string &token) {
    std::string escaped;
    for (char c : token) {
        if (c == '~') {
            escaped += "~0";
        } else if (c == '/') {
            escaped += "~1";
        } else {
            escaped += c;
        }
    }
    return base + "/" + escaped;
}

const Json &resolve(const Json &schema, const Json &root) {
    if (!schema.contains("$ref")) {
        return schema;
    }
    std::string ref = schema["$ref"].get<std::string>();
    if (ref.rfind("#", 0) != 0) {
        throw ValidationError("Only local schema references are supported: " + ref);
    }
    return root.at(Json::json_pointer(ref.substr(1)));
}

bool has_type(const Json &v, const std::string &type) {
    if (type == "object") {
        return v.is_object();
    }
    if (type == "array") {
        return v.is_array();
    }
    if (type == "string") {
        return v.is_string();
    }
    if (type == "boolean") {
        return v.is_boolean();
    }
    if (type == "integer") {
        return v.is_number_integer();
    }
    if (type == "number") {
        return v.is_number();
    }
    if (type == "null") {
        return v.is_null();
    }
    throw ValidationError("Unknown schema type: " + type);
}

void validate_at(const Json &v, const Json &schema_in, const Json &root, const std::string &path) {
    const Json &schema = resolve(schema_in, root);
    if (schema.contains("type")) {
        std::vector<std::string> types;
        if (schema["type"].is_array()) {
            types = schema["type"].get<std::vector<std::string>>();
        } else {
            types.push_back(schema["type"].get<std::string>());
        }
        bool ok = false;
        for (const auto &t : types) {
            ok = ok || has_type(v, t);
        }
        if (!ok) {
            throw ConfigError(path, "expected " + schema["type"].dump() + ", got " + v.type_name() + ".");
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto &e : schema["enum"]) {
            ok = ok || e == v;
        }
        if (!ok) {
            throw ConfigError(path, "value " + v.dump() + " is not one of " + schema["enum"].dump() + ".");
        }
    }
    if (v.is_number()) {
        double x = v.get<double>();
        if (schema.contains("minimum") && x < schema["minimum"].get<double>()) {
            throw ConfigError(path, "value " + v.dump() + " is below the minimum " + schema["minimum"].dump() + ".");
        }
        if (schema.contains("maximum") && x > schema["maximum"].get<double>()) {
            throw ConfigError(path, "value " + v.dump() + " is above the maximum " + schema["maximum"].dump() + ".");
        }
        if (schema.contains("exclusiveMinimum") && x <= schema["exclusiveMinimum"].get<double>()) {
            throw ConfigError(path, "value " + v.dump() + " must exceed " + schema["exclusiveMinimum"].dump() + ".");
        }
        if (schema.contains("exclusiveMaximum") && x >= schema["exclusiveMaximum"].get<double>()) {
            throw ConfigError(path, "value " + v.dump() + " must be below " + schema["exclusiveMaximum"].dump() + ".");
        }
    }
    if (v.is_array()) {
        if (schema.contains("minItems") && v.size() < schema["minItems"].get<size_t>()) {
            throw ConfigError(path, "needs at least " + schema["minItems"].dump() + " items.");
        }
        if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<size_t>()) {
            throw ConfigError(path, "allows at most " + schema["maxItems"].dump() + " items.");
        }
        if (schema.contains("items")) {
            for (size_t i = 0; i < v.size(); i++) {
                validate_at(v[i], schema["items"], root, path + "/" + std::to_string(i));
            }
        }
    }
    if (v.is_object()) {
        if (schema.contains("required")) {
            for (const auto &key : schema["required"]) {
                if (!v.contains(key.get<std::string>())) {
                    throw ConfigError(pointer_join(path, key.get<std::string>()), "required member is missing.");
                }
            }
        }
        const Json empty = Json::object();
        const Json &props = schema.contains("properties") ? schema["properties"] : empty;
        bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
        for (const auto &[key, value] : v.items()) {
            if (props.contains(key)) {
                validate_at(value, props[key], root, pointer_join(path, key));
            } else if (closed) {
                throw ConfigError(pointer_join(path, key), "unknown key.");
            }
        }
    }
}

Json defaults_at(const Json &v, const Json &schema_in, const Json &root) {
    const Json &schema = resolve(schema_in, root);
    Json out = v;
    if (v.is_object() && schema.contains("properties")) {
        for (const auto &[key, sub_in] : schema["properties"].items()) {
            const Json &sub = resolve(sub_in, root);
            if (out.contains(key)) {
                out[key] = defaults_at(out[key], sub, root);
            } else if (sub.contains("default")) {
                out[key] = defaults_at(sub["default"], sub, root);
            }
        }
    }
    if (v.is_array() && schema.contains("items")) {
        for (auto &item : out) {
            item = defaults_at(item, schema["items"], root);
        }
    }
    return out;
}

}  // namespace

const std::vector<std::string> &schema_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[name, text] : schema_texts()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

const std::string &embedded_schema_text(const std::string &name) {
    auto it = schema_texts().find(name);
    if (it == schema_texts().end()) {
        throw ValidationError("No schema named '" + name + "'.");
    }
    return it->second;
}

const Json &embedded_schema(const std::string &name) {
    static const std::map<std::string, Json> parsed = [] {
        std::map<std::string, Json> out;
        for (const auto &[n, text] : schema_texts()) {
            out[n] = Json::parse(text);
        }
        return out;
    }();
    auto it = parsed.find(name);
    if (it == parsed.end()) {
        throw ValidationError("No schema named '" + name + "'.");
    }
    return it->second;
}

void validate_json(const Json &doc, const Json &schema) {
    validate_at(doc, schema, schema, "");
}

Json with_defaults(const Json &doc, const Json &schema) {
    return defaults_at(doc, schema, schema);
}

Json load_config(const std::string &subcommand, const Json &doc) {
    std::string name = subcommand;
    for (char &c : name) {
        if (c == '-') {
            c = '_';
        }
    }
    if (name == "manifest") {
        throw ValidationError("Unknown subcommand: " + subcommand);
    }
    const Json &schema = embedded_schema(name);
    validate_json(doc, schema);
    return with_defaults(doc, schema);
}

uint64_t fnv1a_64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const Json &config) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)fnv1a_64(config.dump()));
    return buf;
}

}  // namespace twirlkit
