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

#include "twirlkit/symmetric_twirl.h"

#include <cmath>

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

constexpr size_t kMaxDenseSubgroupQubits = 6;

std::vector<size_t> register_range(size_t begin, size_t end) {
    std::vector<size_t> r;
    for (size_t q = begin; q < end; q++) {
        r.push_back(q);
    }
    return r;
}

PauliOp restrict_to(const PauliOp &p, size_t begin, size_t end) {
    PauliOp r(end - begin);
    for (size_t q = begin; q < end; q++) {
        r.set(q - begin, p.x(q), p.z(q));
    }
    return r;
}

SymmetrySpec finish(SymmetrySpec s) {
    for (const auto &g : s.w_gates) {
        validate_gate(s.n(), g);
    }
    if (!s.w_gates.empty()) {
        s.output_frame = std::make_shared<Frame>(s.n(), inverse_gates(s.w_gates));
    }
    return s;
}

/// Adds v to a GF(2) row-echelon basis; returns false when v is already in the span.
bool insert_independent(std::vector<std::pair<size_t, PauliOp>> &basis, PauliOp v) {
    v.log_i = 0;
    for (const auto &[pivot, b] : basis) {
        bool bit = pivot < v.n ? v.x(pivot) : v.z(pivot - v.n);
        if (bit) {
            mul_bits_inplace(v, b);
        }
    }
    v.log_i = 0;
    for (size_t k = 0; k < 2 * v.n; k++) {
        bool bit = k < v.n ? v.x(k) : v.z(k - v.n);
        if (bit) {
            for (auto &[pivot, b] : basis) {
                bool bb = k < b.n ? b.x(k) : b.z(k - b.n);
                if (bb) {
                    mul_bits_inplace(b, v);
                    b.log_i = 0;
                }
            }
            basis.push_back({k, v});
            return true;
        }
    }
    return false;
}

}  // namespace

const char *symmetry_preset_name(SymmetryPreset p) {
    switch (p) {
        case SymmetryPreset::RzFirstQubit:
            return "RzFirstQubit";
        case SymmetryPreset::TGate:
            return "TGate";
        case SymmetryPreset::Toffoli:
            return "Toffoli";
        case SymmetryPreset::PauliRotation:
            return "PauliRotation";
        case SymmetryPreset::Custom:
            return "Custom";
    }
    return "?";
}

SymmetrySpec SymmetrySpec::rz_first_qubit(size_t n) {
    if (n == 0) {
        throw ValidationError("Symmetry spec needs n >= 1.");
    }
    SymmetrySpec s;
    s.n1 = 0;
    s.n2 = 1;
    s.n3 = n - 1;
    s.preset = SymmetryPreset::RzFirstQubit;
    return finish(s);
}

SymmetrySpec SymmetrySpec::t_gate(size_t n) {
    SymmetrySpec s = rz_first_qubit(n);
    s.preset = SymmetryPreset::TGate;
    return s;
}

SymmetrySpec SymmetrySpec::toffoli(size_t n) {
    if (n < 3) {
        throw ValidationError("Toffoli symmetry needs n >= 3.");
    }
    SymmetrySpec s;
    s.n1 = 0;
    s.n2 = 3;
    s.n3 = n - 3;
    s.preset = SymmetryPreset::Toffoli;
    s.w_gates = {GateSpec{GateKind::H, {2}}};
    return finish(s);
}

SymmetrySpec SymmetrySpec::pauli_rotation(const PauliOp &axis) {
    SymmetrySpec s;
    s.n1 = 0;
    s.n2 = 1;
    s.n3 = axis.n - 1;
    s.preset = SymmetryPreset::PauliRotation;
    s.axis = axis.unsigned_copy();
    s.w_gates = gates_mapping_to_z0(axis);
    return finish(s);
}

SymmetrySpec SymmetrySpec::custom(size_t n1, size_t n2, size_t n3, std::vector<GateSpec> w_gates) {
    if (n1 + n2 + n3 == 0) {
        throw ValidationError("Symmetry spec needs at least one qubit.");
    }
    SymmetrySpec s;
    s.n1 = n1;
    s.n2 = n2;
    s.n3 = n3;
    s.preset = SymmetryPreset::Custom;
    s.w_gates = std::move(w_gates);
    return finish(s);
}

std::vector<PauliOp> SymmetrySpec::subgroup_generators() const {
    std::vector<PauliOp> out;
    for (size_t q = n1; q < n1 + n2; q++) {
        PauliOp z = PauliOp::single(n(), q, 'Z');
        if (output_frame) {
            z = conjugate(output_frame->op, z);
        }
        out.push_back(z.unsigned_copy());
    }
    return out;
}

std::vector<PauliOp> pauli_subgroup_of_unitary(const Eigen::MatrixXcd &u, double tol) {
    if (u.rows() != u.cols() || u.rows() == 0 || (u.rows() & (u.rows() - 1))) {
        throw DimensionError("Unitary must be a square 2^m x 2^m matrix.");
    }
    size_t dim = (size_t)u.rows();
    size_t m = (size_t)std::countr_zero(dim);
    if (m > kMaxDenseSubgroupQubits) {
        throw CapExceededError("pauli_subgroup_of_unitary is limited to " + std::to_string(kMaxDenseSubgroupQubits) +
                               " qubits.");
    }
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).norm() > std::max(tol, 1e-9) * dim) {
        throw ValidationError("Input matrix is not unitary.");
    }
    std::vector<std::pair<size_t, PauliOp>> basis;
    for (size_t xbits = 0; xbits < dim; xbits++) {
        for (size_t zbits = 0; zbits < dim; zbits++) {
            std::complex<double> tr = 0;
            for (size_t k = 0; k < dim; k++) {
                double sign = (std::popcount(zbits & k) & 1) ? -1.0 : 1.0;
                tr += sign * u(k, k ^ xbits);
            }
            if (std::abs(tr) <= tol * (double)dim) {
                continue;
            }
            PauliOp p(m);
            for (size_t q = 0; q < m; q++) {
                size_t bit = size_t{1} << (m - 1 - q);
                p.set(q, xbits & bit, zbits & bit);
            }
            insert_independent(basis, p);
        }
    }
    std::vector<PauliOp> out;
    for (auto &[pivot, b] : basis) {
        if (!b.is_identity_up_to_sign()) {
            out.push_back(b);
        }
    }
    return out;
}

std::vector<PauliOp> pauli_group_elements(const std::vector<PauliOp> &generators, size_t n) {
    std::vector<std::pair<size_t, PauliOp>> basis;
    for (const auto &g : generators) {
        insert_independent(basis, g);
    }
    if (basis.size() > 20) {
        throw CapExceededError("Group too large to enumerate.");
    }
    std::vector<PauliOp> out;
    for (size_t mask = 0; mask < (size_t{1} << basis.size()); mask++) {
        PauliOp p(n);
        for (size_t k = 0; k < basis.size(); k++) {
            if (mask >> k & 1) {
                mul_bits_inplace(p, basis[k].second);
            }
        }
        out.push_back(p);
    }
    return out;
}

PauliChannel twirl_channel(const PauliChannel &ch, const SymmetrySpec &spec) {
    size_t n = spec.n();
    if (ch.n() != n) {
        throw DimensionError("Channel and symmetry spec sizes differ.");
    }
    if (!ch.point_atoms_only()) {
        throw UnsupportedError("twirl_channel accepts only Point atoms.");
    }
    auto reg1 = register_range(0, spec.n1);
    auto reg2 = register_range(spec.n1, spec.n1 + spec.n2);
    auto reg3 = register_range(spec.n1 + spec.n2, n);
    std::vector<ChannelAtom> out;
    for (const auto &atom : ch.atoms()) {
        PauliOp p = atom.ensemble.point_value();
        if (spec.output_frame) {
            p = conjugate(spec.output_frame->inv, p);
        }
        PauliOp p1 = restrict_to(p, 0, spec.n1);
        PauliOp p2 = restrict_to(p, spec.n1, spec.n1 + spec.n2);
        PauliOp p3 = restrict_to(p, spec.n1 + spec.n2, n);
        bool p2_diagonal = true;
        for (size_t j = 0; j < p2.n; j++) {
            p2_diagonal &= !p2.x(j);
        }
        bool p3_trivial = p3.is_identity_up_to_sign();
        std::vector<EnsembleFactor> factors;
        if (!reg1.empty()) {
            factors.push_back(EnsembleFactor::point(reg1, p1));
        }
        if (!p2_diagonal) {
            factors.push_back(EnsembleFactor::diagonal_iz_coset(reg2, p2));
            if (!reg3.empty()) {
                factors.push_back(EnsembleFactor::full_group(reg3));
            }
        } else if (!p3_trivial) {
            if (!reg2.empty()) {
                factors.push_back(EnsembleFactor::diagonal_iz(reg2));
            }
            factors.push_back(EnsembleFactor::full_group_minus_identity(reg3));
        } else {
            out.push_back(atom);
            continue;
        }
        out.push_back({atom.prob, PauliEnsemble(n, std::move(factors), spec.output_frame)});
    }
    return PauliChannel(n, std::move(out));
}

PauliChannel twirl_channel_ksparse(const PauliChannel &ch, size_t k) {
    size_t n = ch.n();
    if (k < 1 || k > n) {
        throw ValidationError("k-sparse twirl needs 1 <= k <= n.");
    }
    if (!ch.point_atoms_only()) {
        throw UnsupportedError("twirl_channel_ksparse accepts only Point atoms.");
    }
    auto rest = register_range(1, n);
    std::vector<ChannelAtom> out;
    for (const auto &atom : ch.atoms()) {
        PauliOp p = atom.ensemble.point_value();
        if (weight(p) != 1 || p.at(0) == 'I') {
            throw UnsupportedError("k-sparse twirl accepts only single-qubit errors on qubit 0.");
        }
        if (p.at(0) == 'Z') {
            out.push_back(atom);
            continue;
        }
        std::vector<EnsembleFactor> factors = {EnsembleFactor::xy_set(0)};
        if (!rest.empty()) {
            factors.push_back(EnsembleFactor::weight_at_most(rest, k - 1));
        }
        out.push_back({atom.prob, PauliEnsemble(n, std::move(factors))});
    }
    return PauliChannel(n, std::move(out));
}

std::pair<PauliChannel, double> twirl_general_noise(
    const PauliChannel &pauli_part, double coherent_angle, const SymmetrySpec &spec) {
    if (!spec.is_rz_type()) {
        throw UnsupportedError("Coherent pass-through is defined for the Rz-type symmetry only.");
    }
    return {twirl_channel(pauli_part, spec), coherent_angle};
}

}  // namespace twirlkit
