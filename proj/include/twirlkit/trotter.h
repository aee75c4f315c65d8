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

#ifndef TWIRLKIT_TROTTER_H
#define TWIRLKIT_TROTTER_H

#include <string>

#include "twirlkit/circuit.h"

namespace twirlkit {

enum class ModelKind { Heisenberg1D, Heisenberg2D, TFIM2D, FermiHubbard2D };

const char *model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string &name);

/// Order of the terms within one Trotter step. ByBond applies every Pauli type of a bond before
/// moving to the next bond; ByPauli applies all X bonds, then all Y bonds, then all Z bonds.
enum class TermOrder { ByBond, ByPauli };

const char *term_order_name(TermOrder order);
TermOrder term_order_from_name(const std::string &name);

/// Lattice Hamiltonian with open boundaries. Heisenberg1D uses lx as its length.
struct HamiltonianModel {
    ModelKind kind = ModelKind::Heisenberg1D;
    size_t lx = 1;
    size_t ly = 1;
    double coupling = 1;
    double field = 1;
    double hopping = 1;
    double interaction = 1;
    TermOrder term_order = TermOrder::ByBond;

    size_t num_qubits() const;
};

struct HamiltonianTerm {
    PauliOp pauli;
    double coefficient;
};

/// Terms of one Trotter step in their application order.
std::vector<HamiltonianTerm> hamiltonian_terms(const HamiltonianModel &model);

/// Nearest-neighbour bonds of an lx × ly grid in row-major order, horizontal bonds before vertical ones.
std::vector<std::pair<size_t, size_t>> grid_bonds(size_t lx, size_t ly);

/// First-order Trotter circuit: one rotation layer per term per step, sharing `noise`.
LogicalCircuit build_trotter_circuit(const HamiltonianModel &model, size_t steps, double dt, bool clifford_sim,
                                     std::shared_ptr<const NoiseModel> noise);

}  // namespace twirlkit

#endif
