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

#ifndef TWIRLKIT_ERRORS_H
#define TWIRLKIT_ERRORS_H

#include <stdexcept>
#include <string>

namespace twirlkit {

/// Operands disagree on qubit count, or an index is out of range.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `position` is the offending character index.
struct ParseError : std::invalid_argument {
    size_t position;
    ParseError(const std::string &msg, size_t position) : std::invalid_argument(msg), position(position) {
    }
};

/// Argument values outside their documented domain.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The request is well formed but not handled by this implementation.
struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configuration document failed schema validation. `pointer` is the JSON pointer of the offending value.
struct ConfigError : std::invalid_argument {
    std::string pointer;
    ConfigError(const std::string &pointer, const std::string &msg)
        : std::invalid_argument((pointer.empty() ? std::string("/") : pointer) + ": " + msg), pointer(pointer) {
    }
};

/// A size limit (dense simulation, enumeration, expansion) would be exceeded.
struct CapExceededError : std::length_error {
    using std::length_error::length_error;
};

}  // namespace twirlkit

#endif
