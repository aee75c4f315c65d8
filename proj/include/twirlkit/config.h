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

#ifndef TWIRLKIT_CONFIG_H
#define TWIRLKIT_CONFIG_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace twirlkit {

using Json = nlohmann::json;

/// Schema names: one per subcommand (dashes replaced by underscores) plus "manifest".
const std::vector<std::string> &schema_names();

/// Raw text of a schema compiled into the binary. Throws ValidationError for unknown names.
const std::string &embedded_schema_text(const std::string &name);
const Json &embedded_schema(const std::string &name);

/// Checks `doc` against a JSON Schema subset: type, enum, properties, required, additionalProperties,
/// items, minItems, maxItems, minimum, maximum, exclusiveMinimum, exclusiveMaximum and local $ref.
/// Throws ConfigError carrying the JSON pointer of the first violation.
void validate_json(const Json &doc, const Json &schema);

/// Copy of `doc` with schema defaults filled in for absent object members, recursively.
Json with_defaults(const Json &doc, const Json &schema);

/// Validates a subcommand config and fills defaults.
Json load_config(const std::string &subcommand, const Json &doc);

uint64_t fnv1a_64(std::string_view bytes);

/// 16 hex digits of FNV-1a over the compact serialization (keys sorted).
std::string config_hash(const Json &config);

}  // namespace twirlkit

#endif
