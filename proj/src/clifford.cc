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

#include "twirlkit/clifford.h"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

inline void flip_sign(PauliOp &p) {
    p.log_i ^= 2;
}

void h_inplace(PauliOp &p, size_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && z) {
        flip_sign(p);
    }
    p.set(q, z, x);
}

void s_inplace(PauliOp &p, size_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && z) {
        flip_sign(p);
    }
    p.set(q, x, z ^ x);
}

void cnot_inplace(PauliOp &p, size_t c, size_t t) {
    bool xc = p.x(c), zc = p.z(c), xt = p.x(t), zt = p.z(t);
    if (xc && zt && !(xt ^ zc)) {
        flip_sign(p);
    }
    p.set(t, xt ^ xc, zt);
    p.set(c, xc, zc ^ zt);
}

void cz_inplace(PauliOp &p, size_t a, size_t b) {
    bool xa = p.x(a), za = p.z(a), xb = p.x(b), zb = p.z(b);
    if (xa && xb && (za ^ zb)) {
        flip_sign(p);
    }
    p.set(a, xa, za ^ xb);
    p.set(b, xb, zb ^ xa);
}

size_t arity(GateKind k) {
    switch (k) {
        case GateKind::H:
        case GateKind::S:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
            return 1;
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
            return 2;
        case GateKind::MultiCNOT:
            return 0;
    }
    return 0;
}

}  // namespace

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CZ:
            return "CZ";
        case GateKind::SWAP:
            return "SWAP";
        case GateKind::MultiCNOT:
            return "MultiCNOT";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string &name) {
    static const std::map<std::string, GateKind> table = {
        {"H", GateKind::H},       {"S", GateKind::S},       {"X", GateKind::X},
        {"Y", GateKind::Y},       {"Z", GateKind::Z},       {"CNOT", GateKind::CNOT},
        {"CZ", GateKind::CZ},     {"SWAP", GateKind::SWAP}, {"MultiCNOT", GateKind::MultiCNOT},
    };
    auto it = table.find(name);
    if (it == table.end()) {
        throw ValidationError("Unknown gate kind '" + name + "'.");
    }
    return it->second;
}

void validate_gate(size_t n, const GateSpec &gate) {
    size_t a = arity(gate.kind);
    if (a != 0 && gate.qubits.size() != a) {
        throw ValidationError(
            std::string("Gate ") + gate_name(gate.kind) + " takes " + std::to_string(a) + " qubit(s), got " +
            std::to_string(gate.qubits.size()) + ".");
    }
    if (gate.kind == GateKind::MultiCNOT && gate.qubits.empty()) {
        throw ValidationError("MultiCNOT needs a control qubit.");
    }
    for (size_t q : gate.qubits) {
        if (q >= n) {
            throw DimensionError(
                std::string("Gate ") + gate_name(gate.kind) + " qubit " + std::to_string(q) + " out of range for " +
                std::to_string(n) + " qubits.");
        }
    }
    std::set<size_t> seen(gate.qubits.begin(), gate.qubits.end());
    if (seen.size() != gate.qubits.size()) {
        throw ValidationError(std::string("Gate ") + gate_name(gate.kind) + " repeats a qubit.");
    }
}

void conjugate_by_gate_inplace(PauliOp &p, const GateSpec &g) {
    const auto &q = g.qubits;
    switch (g.kind) {
        case GateKind::H:
            h_inplace(p, q[0]);
            break;
        case GateKind::S:
            s_inplace(p, q[0]);
            break;
        case GateKind::X:
            if (p.z(q[0])) {
                flip_sign(p);
            }
            break;
        case GateKind::Y:
            if (p.x(q[0]) ^ p.z(q[0])) {
                flip_sign(p);
            }
            break;
        case GateKind::Z:
            if (p.x(q[0])) {
                flip_sign(p);
            }
            break;
        case GateKind::CNOT:
            cnot_inplace(p, q[0], q[1]);
            break;
        case GateKind::CZ:
            cz_inplace(p, q[0], q[1]);
            break;
        case GateKind::SWAP: {
            bool xa = p.x(q[0]), za = p.z(q[0]);
            p.set(q[0], p.x(q[1]), p.z(q[1]));
            p.set(q[1], xa, za);
            break;
        }
        case GateKind::MultiCNOT:
            for (size_t k = 1; k < q.size(); k++) {
                cnot_inplace(p, q[0], q[k]);
            }
            break;
    }
}

void conjugate_by_gates_inplace(PauliOp &p, const std::vector<GateSpec> &gates) {
    for (const auto &g : gates) {
        conjugate_by_gate_inplace(p, g);
    }
}

std::vector<GateSpec> inverse_gates(const std::vector<GateSpec> &gates) {
    std::vector<GateSpec> out;
    out.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        if (it->kind == GateKind::S) {
            out.push_back(*it);
            out.push_back(*it);
        }
        out.push_back(*it);
    }
    return out;
}

CliffordOp::CliffordOp(size_t n) : n(n) {
    image_x.reserve(n);
    image_z.reserve(n);
    for (size_t q = 0; q < n; q++) {
        image_x.push_back(PauliOp::single(n, q, 'X'));
        image_z.push_back(PauliOp::single(n, q, 'Z'));
    }
}

CliffordOp CliffordOp::gate(size_t n, const GateSpec &g) {
    return from_gates(n, {g});
}

bool CliffordOp::is_identity() const {
    return *this == CliffordOp(n);
}

bool CliffordOp::is_valid() const {
    if (image_x.size() != n || image_z.size() != n) {
        return false;
    }
    for (size_t i = 0; i < n; i++) {
        const PauliOp *row[2] = {&image_x[i], &image_z[i]};
        for (const PauliOp *p : row) {
            if (p->n != n || (p->log_i & 1) || p->is_identity_up_to_sign()) {
                return false;
            }
        }
        if (commutes(image_x[i], image_z[i])) {
            return false;
        }
        for (size_t j = i + 1; j < n; j++) {
            if (!commutes(image_x[i], image_x[j]) || !commutes(image_x[i], image_z[j]) ||
                !commutes(image_z[i], image_x[j]) || !commutes(image_z[i], image_z[j])) {
                return false;
            }
        }
    }
    return true;
}

bool CliffordOp::operator==(const CliffordOp &other) const {
    return n == other.n && image_x == other.image_x && image_z == other.image_z;
}

std::string CliffordOp::str() const {
    std::string out;
    for (size_t q = 0; q < n; q++) {
        out += "X" + std::to_string(q) + " -> " + format_pauli(image_x[q]) + "\n";
        out += "Z" + std::to_string(q) + " -> " + format_pauli(image_z[q]) + "\n";
    }
    return out;
}

PauliOp conjugate(const CliffordOp &c, const PauliOp &p) {
    if (c.n != p.n) {
        throw DimensionError(
            "Clifford acts on " + std::to_string(c.n) + " qubits, Pauli has " + std::to_string(p.n) + ".");
    }
    PauliOp r(p.n);
    unsigned phase = p.log_i;
    for (size_t w = 0; w < p.xs.size(); w++) {
        uint64_t bits = p.xs[w] | p.zs[w];
        while (bits) {
            size_t q = w * 64 + (size_t)std::countr_zero(bits);
            bits &= bits - 1;
            bool x = p.x(q), z = p.z(q);
            if (x && z) {
                phase += 1;  // Y = i X Z
            }
            if (x) {
                phase += mul_bits_inplace(r, c.image_x[q]) + c.image_x[q].log_i;
            }
            if (z) {
                phase += mul_bits_inplace(r, c.image_z[q]) + c.image_z[q].log_i;
            }
        }
    }
    r.log_i = (uint8_t)(phase & 3);
    return r;
}

CliffordOp compose(const CliffordOp &a, const CliffordOp &b) {
    if (a.n != b.n) {
        throw DimensionError("Clifford size mismatch in compose.");
    }
    CliffordOp r;
    r.n = a.n;
    r.image_x.reserve(a.n);
    r.image_z.reserve(a.n);
    for (size_t q = 0; q < a.n; q++) {
        r.image_x.push_back(conjugate(a, b.image_x[q]));
        r.image_z.push_back(conjugate(a, b.image_z[q]));
    }
    return r;
}

CliffordOp inverse(const CliffordOp &c) {
    size_t n = c.n;
    CliffordOp r(n);
    for (size_t i = 0; i < n; i++) {
        PauliOp px(n), pz(n);
        for (size_t j = 0; j < n; j++) {
            // Symplectic transpose: bits of C† X_i C and C† Z_i C read off the columns of the images.
            px.set(j, c.image_z[j].z(i), c.image_x[j].z(i));
            pz.set(j, c.image_z[j].x(i), c.image_x[j].x(i));
        }
        PauliOp cx = conjugate(c, px);
        PauliOp cz = conjugate(c, pz);
        px.log_i = (uint8_t)((4 - cx.log_i) & 3);
        pz.log_i = (uint8_t)((4 - cz.log_i) & 3);
        r.image_x[i] = std::move(px);
        r.image_z[i] = std::move(pz);
    }
    return r;
}

CliffordOp from_gates(size_t n, const std::vector<GateSpec> &gates) {
    for (const auto &g : gates) {
        validate_gate(n, g);
    }
    CliffordOp r(n);
    for (size_t q = 0; q < n; q++) {
        conjugate_by_gates_inplace(r.image_x[q], gates);
        conjugate_by_gates_inplace(r.image_z[q], gates);
    }
    return r;
}

const std::vector<std::vector<GateSpec>> &single_qubit_clifford_words() {
    static const std::vector<std::vector<GateSpec>> words = [] {
        std::vector<std::vector<GateSpec>> found;
        std::set<std::pair<std::string, std::string>> seen;
        std::queue<std::vector<GateSpec>> todo;
        todo.push({});
        while (!todo.empty()) {
            auto word = todo.front();
            todo.pop();
            CliffordOp c = from_gates(1, word);
            auto key = std::make_pair(format_pauli(c.image_x[0]), format_pauli(c.image_z[0]));
            if (!seen.insert(key).second) {
                continue;
            }
            found.push_back(word);
            for (GateKind k : {GateKind::H, GateKind::S}) {
                auto next = word;
                next.push_back(GateSpec{k, {0}});
                todo.push(next);
            }
        }
        if (found.size() != 24) {
            throw std::logic_error("single-qubit Clifford enumeration did not find 24 elements");
        }
        return found;
    }();
    return words;
}

std::vector<GateSpec> single_qubit_clifford_gates(size_t index, size_t q) {
    auto word = single_qubit_clifford_words().at(index);
    for (auto &g : word) {
        g.qubits[0] = q;
    }
    return word;
}

CliffordOp random_single_qubit_clifford(Rng &rng) {
    std::uniform_int_distribution<size_t> pick(0, 23);
    return from_gates(1, single_qubit_clifford_words()[pick(rng)]);
}

namespace {

/// Uniform nonzero coefficient vector over the 2m coordinates (x bit of qubit j = e_j, z bit = f_j).
PauliOp uniform_nonzero_coefficients(size_t m, Rng &rng) {
    PauliOp c(m);
    if (2 * m <= 63) {
        std::uniform_int_distribution<uint64_t> dist(1, (uint64_t{1} << (2 * m)) - 1);
        uint64_t v = dist(rng);
        for (size_t j = 0; j < m; j++) {
            c.set(j, (v >> (2 * j)) & 1, (v >> (2 * j + 1)) & 1);
        }
        return c;
    }
    do {
        c = random_pauli(m, false, rng);
    } while (c.is_identity_up_to_sign());
    return c;
}

/// Linear combination of basis vectors (pairs e_j, f_j) with the coefficient bits of c.
PauliOp combine(const std::vector<PauliOp> &e, const std::vector<PauliOp> &f, const PauliOp &c, size_t n) {
    PauliOp v(n);
    for (size_t j = 0; j < c.n; j++) {
        if (c.x(j)) {
            mul_bits_inplace(v, e[j]);
        }
        if (c.z(j)) {
            mul_bits_inplace(v, f[j]);
        }
    }
    v.log_i = 0;
    return v;
}

inline bool form(const PauliOp &a, const PauliOp &b) {
    return !commutes(a, b);
}

/// b <- b + <b,w> v + <b,v> w, the projection onto the symplectic complement of span{v, w}.
void project_out(PauliOp &b, const PauliOp &v, const PauliOp &w) {
    bool bw = form(b, w);
    bool bv = form(b, v);
    if (bw) {
        mul_bits_inplace(b, v);
    }
    if (bv) {
        mul_bits_inplace(b, w);
    }
    b.log_i = 0;
}

}  // namespace

CliffordOp random_clifford(size_t n, Rng &rng) {
    if (n == 0) {
        throw ValidationError("random_clifford needs n >= 1.");
    }
    std::vector<PauliOp> e, f;
    for (size_t q = 0; q < n; q++) {
        e.push_back(PauliOp::single(n, q, 'X'));
        f.push_back(PauliOp::single(n, q, 'Z'));
    }
    CliffordOp r(n);
    std::bernoulli_distribution coin(0.5);
    for (size_t i = 0; i < n; i++) {
        size_t m = e.size();
        PauliOp c = uniform_nonzero_coefficients(m, rng);
        PauliOp d = random_pauli(m, false, rng);
        if (commutes(c, d)) {
            size_t j = 0;
            while (!c.x(j) && !c.z(j)) {
                j++;
            }
            // Flipping the partner coordinate of a set coordinate toggles the form value.
            if (c.x(j)) {
                d.set(j, d.x(j), !d.z(j));
            } else {
                d.set(j, !d.x(j), d.z(j));
            }
        }
        PauliOp v = combine(e, f, c, n);
        PauliOp w = combine(e, f, d, n);

        std::vector<PauliOp> rest;
        rest.reserve(2 * m);
        for (size_t j = 0; j < m; j++) {
            rest.push_back(e[j]);
            rest.push_back(f[j]);
        }
        for (auto &b : rest) {
            project_out(b, v, w);
        }
        e.clear();
        f.clear();
        while (true) {
            auto a_it = std::find_if(rest.begin(), rest.end(), [](const PauliOp &p) {
                return !p.is_identity_up_to_sign();
            });
            if (a_it == rest.end()) {
                break;
            }
            PauliOp a = *a_it;
            auto b_it = std::find_if(rest.begin(), rest.end(), [&](const PauliOp &p) {
                return form(a, p);
            });
            if (b_it == rest.end()) {
                throw std::logic_error("random_clifford: degenerate complement");
            }
            PauliOp b = *b_it;
            for (auto &p : rest) {
                project_out(p, a, b);
            }
            e.push_back(a);
            f.push_back(b);
        }

        v.log_i = coin(rng) ? 2 : 0;
        w.log_i = coin(rng) ? 2 : 0;
        r.image_x[i] = std::move(v);
        r.image_z[i] = std::move(w);
    }
    return r;
}

std::vector<GateSpec> gates_mapping_to_z0(const PauliOp &q, int *sign_out) {
    if (q.is_identity_up_to_sign()) {
        throw ValidationError("Cannot map the identity onto Z.");
    }
    std::vector<GateSpec> gates;
    std::vector<size_t> support;
    for (size_t k = 0; k < q.n; k++) {
        char c = q.at(k);
        if (c == 'I') {
            continue;
        }
        support.push_back(k);
        if (c == 'X') {
            gates.push_back({GateKind::H, {k}});
        } else if (c == 'Y') {
            for (int s = 0; s < 3; s++) {
                gates.push_back({GateKind::S, {k}});
            }
            gates.push_back({GateKind::H, {k}});
        }
    }
    size_t pivot = support[0];
    for (size_t j = 1; j < support.size(); j++) {
        gates.push_back({GateKind::CNOT, {support[j], pivot}});
    }
    if (pivot != 0) {
        gates.push_back({GateKind::SWAP, {0, pivot}});
    }
    if (sign_out) {
        PauliOp img = q;
        conjugate_by_gates_inplace(img, gates);
        *sign_out = img.log_i == 0 ? 1 : -1;
        if (img.log_i & 1) {
            throw ValidationError("Rotation axis must be Hermitian.");
        }
    }
    return gates;
}

}  // namespace twirlkit
