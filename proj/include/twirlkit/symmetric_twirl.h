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

#ifndef TWIRLKIT_SYMMETRIC_TWIRL_H
#define TWIRLKIT_SYMMETRIC_TWIRL_H

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

#include "twirlkit/channel.h"

namespace twirlkit {

enum class SymmetryPreset { RzFirstQubit, TGate, Toffoli, PauliRotation, Custom };

const char *symmetry_preset_name(SymmetryPreset p);

/// Registers and frame of the Pauli subgroup Q = W†(I^{n1} ⊗ {I,Z}^{n2} ⊗ I^{n3})W.
/// Register 1 is qubits [0, n1), register 2 is [n1, n1 + n2), register 3 is the rest.
struct SymmetrySpec {
    size_t n1 = 0;
    size_t n2 = 0;
    size_t n3 = 0;
    SymmetryPreset preset = SymmetryPreset::Custom;
    PauliOp axis;
    /// Gate list for W; empty means identity.
    std::vector<GateSpec> w_gates;
    /// Frame W† shared by every twirled atom, or null when W is the identity.
    std::shared_ptr<const Frame> output_frame;

    size_t n() const {
        return n1 + n2 + n3;
    }
    bool is_rz_type() const {
        return n1 == 0 && n2 == 1 && w_gates.empty();
    }

    static SymmetrySpec rz_first_qubit(size_t n);
    static SymmetrySpec t_gate(size_t n);
    static SymmetrySpec toffoli(size_t n);
    /// W maps the axis to ±Z on qubit 0.
    static SymmetrySpec pauli_rotation(const PauliOp &axis);
    static SymmetrySpec custom(size_t n1, size_t n2, size_t n3, std::vector<GateSpec> w_gates);

    /// Independent generators W†Z_jW for j in register 2.
    std::vector<PauliOp> subgroup_generators() const;
};

/// Paulis with |tr[P U]| > tol·2^m, returned as an independent generating set of the group they generate.
std::vector<PauliOp> pauli_subgroup_of_unitary(const Eigen::MatrixXcd &u, double tol = 1e-9);

/// All elements (sign dropped) of the group generated by `generators`.
std::vector<PauliOp> pauli_group_elements(const std::vector<PauliOp> &generators, size_t n);

/// Exact twirl over the symmetric Clifford group of `spec`. Only Point atoms are accepted.
PauliChannel twirl_channel(const PauliChannel &ch, const SymmetrySpec &spec);

/// k-sparse twirl for the Rz-type symmetry on qubit 0. Atoms must be single-qubit Paulis on qubit 0.
PauliChannel twirl_channel_ksparse(const PauliChannel &ch, size_t k);

/// Twirl of a Pauli channel composed with a coherent Z rotation by `coherent_angle` on qubit 0.
/// The rotation commutes with every gadget and passes through.
std::pair<PauliChannel, double> twirl_general_noise(
    const PauliChannel &pauli_part, double coherent_angle, const SymmetrySpec &spec);

}  // namespace twirlkit

#endif
