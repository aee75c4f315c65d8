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

#ifndef TWIRLKIT_PAULI_H
#define TWIRLKIT_PAULI_H

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace twirlkit {

using Rng = std::mt19937_64;

/// An n-qubit Pauli operator i^log_i * P_0 ⊗ ... ⊗ P_{n-1}.
///
/// Qubit q is stored at bit (q % 64) of word (q / 64). The pair (x, z) = (1, 1) is the Hermitian Y,
/// so a Hermitian Pauli always has log_i in {0, 2}.
struct PauliOp {
    size_t n = 0;
    std::vector<uint64_t> xs;
    std::vector<uint64_t> zs;
    uint8_t log_i = 0;

    PauliOp() = default;
    explicit PauliOp(size_t n);

    /// Single non-identity factor `c` in {I, X, Y, Z} on qubit q.
    static PauliOp single(size_t n, size_t q, char c);

    size_t num_words() const {
        return xs.size();
    }
    bool x(size_t q) const {
        return (xs[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs[q >> 6] >> (q & 63)) & 1;
    }
    /// Character I, X, Y or Z at qubit q.
    char at(size_t q) const;
    void set(size_t q, bool x, bool z);
    void set(size_t q, char c);

    bool is_identity_up_to_sign() const;
    bool is_identity() const {
        return log_i == 0 && is_identity_up_to_sign();
    }
    bool same_bits(const PauliOp &other) const {
        return n == other.n && xs == other.xs && zs == other.zs;
    }
    /// Copy with sign +1.
    PauliOp unsigned_copy() const;

    bool operator==(const PauliOp &other) const {
        return same_bits(other) && log_i == other.log_i;
    }
    bool operator!=(const PauliOp &other) const {
        return !(*this == other);
    }
    /// Ordering on (bits, sign); only meaningful for use as a map key.
    bool operator<(const PauliOp &other) const;

    std::string str() const;
};

struct PauliOpHash {
    size_t operator()(const PauliOp &p) const;
};

/// Group product a·b with exact phase.
PauliOp pauli_mul(const PauliOp &a, const PauliOp &b);

/// Log base i of the phase picked up by `lhs *= rhs` when both are treated as bit patterns with sign +1.
/// Leaves lhs holding the bits of the product; lhs.log_i is not touched.
uint8_t mul_bits_inplace(PauliOp &lhs, const PauliOp &rhs);

bool commutes(const PauliOp &a, const PauliOp &b);

size_t weight(const PauliOp &p);

PauliOp random_pauli(size_t n, bool exclude_identity, Rng &rng);

/// Parses e.g. "XIZ", "-iY", "+X_Z". '_' is accepted as identity.
PauliOp parse_pauli(std::string_view text);

std::string format_pauli(const PauliOp &p);

}  // namespace twirlkit

#endif
