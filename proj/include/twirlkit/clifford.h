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

#ifndef TWIRLKIT_CLIFFORD_H
#define TWIRLKIT_CLIFFORD_H

#include <string>
#include <vector>

#include "twirlkit/pauli.h"

namespace twirlkit {

enum class GateKind { H, S, X, Y, Z, CNOT, CZ, SWAP, MultiCNOT };

/// A Clifford gate. For CNOT the qubits are (control, target); for MultiCNOT the first qubit is
/// the control and the rest are targets.
struct GateSpec {
    GateKind kind;
    std::vector<size_t> qubits;

    bool operator==(const GateSpec &other) const = default;
};

const char *gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

/// Throws DimensionError / ValidationError for bad indices or arity.
void validate_gate(size_t n, const GateSpec &gate);

/// p <- G p G† in place, touching only the gate's qubits.
void conjugate_by_gate_inplace(PauliOp &p, const GateSpec &gate);

/// p <- (G_k ... G_1) p (G_k ... G_1)† for the gate list [G_1, ..., G_k].
void conjugate_by_gates_inplace(PauliOp &p, const std::vector<GateSpec> &gates);

/// The gate list implementing the inverse unitary (up to global phase).
std::vector<GateSpec> inverse_gates(const std::vector<GateSpec> &gates);

/// Clifford operator stored by the images of the generators: image_x[i] = C X_i C†, image_z[i] = C Z_i C†.
struct CliffordOp {
    size_t n = 0;
    std::vector<PauliOp> image_x;
    std::vector<PauliOp> image_z;

    CliffordOp() = default;
    /// Identity.
    explicit CliffordOp(size_t n);

    static CliffordOp gate(size_t n, const GateSpec &gate);

    bool is_identity() const;
    /// Checks the commutation relations and Hermiticity of every image.
    bool is_valid() const;

    bool operator==(const CliffordOp &other) const;
    bool operator!=(const CliffordOp &other) const {
        return !(*this == other);
    }

    std::string str() const;
};

/// C p C† with exact sign.
PauliOp conjugate(const CliffordOp &c, const PauliOp &p);

/// The operator that applies b first and then a.
CliffordOp compose(const CliffordOp &a, const CliffordOp &b);

CliffordOp inverse(const CliffordOp &c);

/// Gates applied left to right: from_gates(n, {G1, G2}) = G2·G1.
CliffordOp from_gates(size_t n, const std::vector<GateSpec> &gates);

/// The 24 single-qubit Clifford operators (phases quotiented), each as a short H/S word on qubit 0.
/// Element 0 is the identity.
const std::vector<std::vector<GateSpec>> &single_qubit_clifford_words();

/// Same gate words retargeted at qubit q.
std::vector<GateSpec> single_qubit_clifford_gates(size_t index, size_t q);

CliffordOp random_single_qubit_clifford(Rng &rng);

/// Exactly uniform over the n-qubit Clifford group modulo phase.
CliffordOp random_clifford(size_t n, Rng &rng);

/// Gates W with W q W† = ±Z on qubit 0 (sign reported through `sign_out` as +1 or -1).
/// Basis changes on the support, a CNOT fan-in to the first support qubit, then a SWAP onto qubit 0.
std::vector<GateSpec> gates_mapping_to_z0(const PauliOp &q, int *sign_out = nullptr);

}  // namespace twirlkit

#endif
