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

#include "twirlkit/pauli.h"

#include <algorithm>
#include <bit>

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

size_t words_for(size_t n) {
    return (n + 63) / 64;
}

void require_same_n(const PauliOp &a, const PauliOp &b) {
    if (a.n != b.n) {
        throw DimensionError(
            "Pauli size mismatch: " + std::to_string(a.n) + " vs " + std::to_string(b.n) + " qubits.");
    }
}

}  // namespace

PauliOp::PauliOp(size_t n) : n(n), xs(words_for(n), 0), zs(words_for(n), 0), log_i(0) {
}

PauliOp PauliOp::single(size_t n, size_t q, char c) {
    PauliOp p(n);
    if (q >= n) {
        throw DimensionError("Qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits.");
    }
    p.set(q, c);
    return p;
}

char PauliOp::at(size_t q) const {
    return "IXZY"[x(q) + 2 * z(q)];
}

void PauliOp::set(size_t q, bool x, bool z) {
    uint64_t m = uint64_t{1} << (q & 63);
    xs[q >> 6] = (xs[q >> 6] & ~m) | (x ? m : 0);
    zs[q >> 6] = (zs[q >> 6] & ~m) | (z ? m : 0);
}

void PauliOp::set(size_t q, char c) {
    switch (c) {
        case 'I':
        case '_':
            set(q, false, false);
            break;
        case 'X':
            set(q, true, false);
            break;
        case 'Y':
            set(q, true, true);
            break;
        case 'Z':
            set(q, false, true);
            break;
        default:
            throw ParseError(std::string("Not a Pauli character: '") + c + "'.", q);
    }
}

bool PauliOp::is_identity_up_to_sign() const {
    for (size_t w = 0; w < xs.size(); w++) {
        if (xs[w] | zs[w]) {
            return false;
        }
    }
    return true;
}

PauliOp PauliOp::unsigned_copy() const {
    PauliOp r = *this;
    r.log_i = 0;
    return r;
}

bool PauliOp::operator<(const PauliOp &other) const {
    if (n != other.n) {
        return n < other.n;
    }
    if (xs != other.xs) {
        return xs < other.xs;
    }
    if (zs != other.zs) {
        return zs < other.zs;
    }
    return log_i < other.log_i;
}

std::string PauliOp::str() const {
    return format_pauli(*this);
}

size_t PauliOpHash::operator()(const PauliOp &p) const {
    uint64_t h = 0xcbf29ce484222325ULL ^ p.n ^ (uint64_t{p.log_i} << 56);
    for (size_t w = 0; w < p.xs.size(); w++) {
        h = (h ^ p.xs[w]) * 0x100000001b3ULL;
        h = (h ^ (p.zs[w] + 0x9e3779b97f4a7c15ULL)) * 0x100000001b3ULL;
    }
    return (size_t)h;
}

uint8_t mul_bits_inplace(PauliOp &lhs, const PauliOp &rhs) {
    require_same_n(lhs, rhs);
    unsigned plus = 0;
    unsigned minus = 0;
    for (size_t w = 0; w < lhs.xs.size(); w++) {
        uint64_t x1 = lhs.xs[w], z1 = lhs.zs[w];
        uint64_t x2 = rhs.xs[w], z2 = rhs.zs[w];
        uint64_t anti = (x1 & z2) ^ (z1 & x2);
        // XY, YZ and ZX pick up +i; the reversed orders pick up -i.
        uint64_t pos = ((x1 & ~z1 & x2) | (x1 & z1 & ~x2) | (~x1 & z1 & ~z2)) & anti;
        plus += std::popcount(pos);
        minus += std::popcount(anti & ~pos);
        lhs.xs[w] = x1 ^ x2;
        lhs.zs[w] = z1 ^ z2;
    }
    return (uint8_t)((plus + 3 * minus) & 3);
}

PauliOp pauli_mul(const PauliOp &a, const PauliOp &b) {
    PauliOp r = a;
    uint8_t k = mul_bits_inplace(r, b);
    r.log_i = (uint8_t)((a.log_i + b.log_i + k) & 3);
    return r;
}

bool commutes(const PauliOp &a, const PauliOp &b) {
    require_same_n(a, b);
    uint64_t acc = 0;
    for (size_t w = 0; w < a.xs.size(); w++) {
        acc ^= (a.xs[w] & b.zs[w]) ^ (a.zs[w] & b.xs[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

size_t weight(const PauliOp &p) {
    size_t total = 0;
    for (size_t w = 0; w < p.xs.size(); w++) {
        total += std::popcount(p.xs[w] | p.zs[w]);
    }
    return total;
}

PauliOp random_pauli(size_t n, bool exclude_identity, Rng &rng) {
    if (n == 0) {
        throw ValidationError("random_pauli needs n >= 1.");
    }
    PauliOp p(n);
    uint64_t last_mask = (n % 64 == 0) ? ~uint64_t{0} : ((uint64_t{1} << (n % 64)) - 1);
    while (true) {
        for (size_t w = 0; w < p.xs.size(); w++) {
            uint64_t m = (w + 1 == p.xs.size()) ? last_mask : ~uint64_t{0};
            p.xs[w] = rng() & m;
            p.zs[w] = rng() & m;
        }
        if (!exclude_identity || !p.is_identity_up_to_sign()) {
            return p;
        }
    }
}

PauliOp parse_pauli(std::string_view text) {
    uint8_t log_i = 0;
    size_t k = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        log_i = text[k] == '-' ? 2 : 0;
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        log_i = (uint8_t)((log_i + 1) & 3);
        k++;
    }
    PauliOp p(text.size() - k);
    for (size_t q = 0; k + q < text.size(); q++) {
        char c = text[k + q];
        if (c != 'I' && c != '_' && c != 'X' && c != 'Y' && c != 'Z') {
            throw ParseError(
                "Invalid Pauli character '" + std::string(1, c) + "' at index " + std::to_string(k + q) + ".", k + q);
        }
        p.set(q, c);
    }
    p.log_i = log_i;
    return p;
}

std::string format_pauli(const PauliOp &p) {
    static const char *prefixes[4] = {"+", "+i", "-", "-i"};
    std::string out = prefixes[p.log_i & 3];
    out.reserve(out.size() + p.n);
    for (size_t q = 0; q < p.n; q++) {
        out.push_back(p.at(q));
    }
    return out;
}

}  // namespace twirlkit
