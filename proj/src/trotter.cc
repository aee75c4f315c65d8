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

#include "twirlkit/trotter.h"

#include <numbers>

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

PauliOp two_site(size_t n, size_t a, size_t b, char c) {
    PauliOp p(n);
    p.set(a, c);
    p.set(b, c);
    return p;
}

/// Jordan-Wigner string c_i Z...Z c_j.
PauliOp jw_string(size_t n, size_t i, size_t j, char c) {
    if (i > j) {
        std::swap(i, j);
    }
    PauliOp p(n);
    p.set(i, c);
    for (size_t q = i + 1; q < j; q++) {
        p.set(q, 'Z');
    }
    p.set(j, c);
    return p;
}

/// Snake ordering: even rows left to right, odd rows right to left.
size_t snake_index(size_t lx, size_t site) {
    size_t x = site % lx;
    size_t y = site / lx;
    return y * lx + (y % 2 == 0 ? x : lx - 1 - x);
}

}  // namespace

const char *model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Heisenberg1D:
            return "Heisenberg1D";
        case ModelKind::Heisenberg2D:
            return "Heisenberg2D";
        case ModelKind::TFIM2D:
            return "TFIM2D";
        case ModelKind::FermiHubbard2D:
            return "FermiHubbard2D";
    }
    return "?";
}

ModelKind model_kind_from_name(const std::string &name) {
    for (auto k : {ModelKind::Heisenberg1D, ModelKind::Heisenberg2D, ModelKind::TFIM2D, ModelKind::FermiHubbard2D}) {
        if (name == model_kind_name(k)) {
            return k;
        }
    }
    throw ValidationError("Unknown model '" + name + "'.");
}

const char *term_order_name(TermOrder order) {
    return order == TermOrder::ByBond ? "by_bond" : "by_pauli";
}

TermOrder term_order_from_name(const std::string &name) {
    for (auto o : {TermOrder::ByBond, TermOrder::ByPauli}) {
        if (name == term_order_name(o)) {
            return o;
        }
    }
    throw ValidationError("Unknown term order '" + name + "'.");
}

size_t HamiltonianModel::num_qubits() const {
    switch (kind) {
        case ModelKind::Heisenberg1D:
            return lx;
        case ModelKind::FermiHubbard2D:
            return 2 * lx * ly;
        default:
            return lx * ly;
    }
}

std::vector<std::pair<size_t, size_t>> grid_bonds(size_t lx, size_t ly) {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t y = 0; y < ly; y++) {
        for (size_t x = 0; x + 1 < lx; x++) {
            out.push_back({y * lx + x, y * lx + x + 1});
        }
    }
    for (size_t y = 0; y + 1 < ly; y++) {
        for (size_t x = 0; x < lx; x++) {
            out.push_back({y * lx + x, (y + 1) * lx + x});
        }
    }
    return out;
}

std::vector<HamiltonianTerm> hamiltonian_terms(const HamiltonianModel &m) {
    if (m.lx == 0 || m.ly == 0) {
        throw ValidationError("Lattice dimensions must be positive.");
    }
    if (m.kind == ModelKind::Heisenberg1D && m.ly != 1) {
        throw ValidationError("Heisenberg1D uses lx only (ly must be 1).");
    }
    size_t n = m.num_qubits();
    std::vector<HamiltonianTerm> out;
    auto bonds = grid_bonds(m.lx, m.ly);
    switch (m.kind) {
        case ModelKind::Heisenberg1D:
        case ModelKind::Heisenberg2D:
            if (m.term_order == TermOrder::ByBond) {
                for (auto [a, b] : bonds) {
                    for (char c : std::string("XYZ")) {
                        out.push_back({two_site(n, a, b, c), m.coupling});
                    }
                }
            } else {
                for (char c : std::string("XYZ")) {
                    for (auto [a, b] : bonds) {
                        out.push_back({two_site(n, a, b, c), m.coupling});
                    }
                }
            }
            break;
        case ModelKind::TFIM2D:
            for (auto [a, b] : bonds) {
                out.push_back({two_site(n, a, b, 'Z'), m.coupling});
            }
            for (size_t q = 0; q < n; q++) {
                out.push_back({PauliOp::single(n, q, 'X'), m.field});
            }
            break;
        case ModelKind::FermiHubbard2D: {
            size_t sites = m.lx * m.ly;
            auto hop = [&](size_t spin, std::pair<size_t, size_t> bond, char c) {
                size_t i = spin * sites + snake_index(m.lx, bond.first);
                size_t j = spin * sites + snake_index(m.lx, bond.second);
                out.push_back({jw_string(n, i, j, c), -m.hopping / 2});
            };
            if (m.term_order == TermOrder::ByBond) {
                for (size_t spin = 0; spin < 2; spin++) {
                    for (auto bond : bonds) {
                        hop(spin, bond, 'X');
                        hop(spin, bond, 'Y');
                    }
                }
            } else {
                for (char c : std::string("XY")) {
                    for (size_t spin = 0; spin < 2; spin++) {
                        for (auto bond : bonds) {
                            hop(spin, bond, c);
                        }
                    }
                }
            }
            for (size_t s = 0; s < sites; s++) {
                out.push_back({two_site(n, s, sites + s, 'Z'), m.interaction / 4});
            }
            for (size_t q = 0; q < n; q++) {
                out.push_back({PauliOp::single(n, q, 'Z'), -m.interaction / 4});
            }
            break;
        }
    }
    return out;
}

LogicalCircuit build_trotter_circuit(const HamiltonianModel &model, size_t steps, double dt, bool clifford_sim,
                                     std::shared_ptr<const NoiseModel> noise) {
    if (steps == 0) {
        throw ValidationError("Trotter circuit needs at least one step.");
    }
    auto terms = hamiltonian_terms(model);
    LogicalCircuit c(model.num_qubits());
    for (size_t t = 0; t < steps; t++) {
        for (const auto &term : terms) {
            double angle = clifford_sim ? std::numbers::pi / 4 : term.coefficient * dt;
            c.add_rotation(term.pauli, angle, noise);
        }
    }
    return c;
}

}  // namespace twirlkit
