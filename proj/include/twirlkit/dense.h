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

#ifndef TWIRLKIT_DENSE_H
#define TWIRLKIT_DENSE_H

#include <Eigen/Dense>
#include <functional>

#include "twirlkit/circuit.h"

namespace twirlkit {

/// Largest qubit count the dense simulator accepts: 10, or TWIRLKIT_DENSE_CAP when set.
size_t dense_qubit_cap();

/// Throws CapExceededError when n is above the dense cap.
void check_dense_cap(size_t n);

using DenseMatrix = Eigen::MatrixXcd;

/// Basis index convention: qubit 0 is the most significant bit.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// Validates hermiticity, unit trace and positivity.
    DensityMatrix(size_t n, DenseMatrix m);

    static DensityMatrix zero_state(size_t n);
    static DensityMatrix maximally_mixed(size_t n);
    static DensityMatrix from_pure(size_t n, const Eigen::VectorXcd &psi);

    size_t n() const {
        return n_;
    }
    const DenseMatrix &matrix() const {
        return m_;
    }

    /// Empty string when valid, otherwise the violated property.
    static std::string check(const DenseMatrix &m);

   private:
    size_t n_ = 0;
    DenseMatrix m_;
};

DenseMatrix dense_pauli(const PauliOp &p);
DenseMatrix dense_gate(size_t n, const GateSpec &g);

/// In-place operator updates; `m` need not be a density matrix.
void pauli_left_inplace(DenseMatrix &m, const PauliOp &p);
void pauli_right_inplace(DenseMatrix &m, const PauliOp &p);
void apply_gate_inplace(DenseMatrix &m, size_t n, const GateSpec &g);
/// U m U† for U = cos θ·I + i sin θ·axis.
void apply_rotation_inplace(DenseMatrix &m, const PauliOp &axis, double theta);
/// Scales every Pauli component of m by fidelity(P).
void apply_pauli_transfer_inplace(DenseMatrix &m, size_t n, const std::function<double(const PauliOp &)> &fidelity);
/// C m C† for a tableau-only Clifford.
void apply_clifford_inplace(DenseMatrix &m, const CliffordOp &c);
/// Kraus form of a Pauli channel when its expansion is small, Pauli transfer otherwise.
void apply_channel_inplace(DenseMatrix &m, const PauliChannel &ch);

DensityMatrix apply_unitary(const DensityMatrix &rho, const DenseMatrix &u);
DensityMatrix apply_rotation(const DensityMatrix &rho, const PauliOp &axis, double theta);
DensityMatrix apply_channel(const DensityMatrix &rho, const PauliChannel &ch);

double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// Total-variation distance of computational-basis outcomes after the basis change c.
double tv_distance_clifford_basis(const DensityMatrix &a, const DensityMatrix &b, const CliffordOp &c);

enum class BasisEnsemble { Clifford, Haar };

/// Mean total-variation distance of computational-basis outcomes after random basis changes.
Estimate tv_distance_random_bases(const DensityMatrix &a, const DensityMatrix &b, size_t num_bases, Rng &rng,
                                  BasisEnsemble ensemble = BasisEnsemble::Clifford);

DenseMatrix haar_unitary(size_t dim, Rng &rng);
Eigen::VectorXcd haar_state(size_t n, Rng &rng);

/// Runs the circuit on an arbitrary operator. Sampled layers draw one gadget each.
void evolve_operator_inplace(DenseMatrix &m, const LogicalCircuit &c, bool noisy, Rng &rng);

/// Ideal and noisy output states; sampled layers are averaged over `shots` runs.
std::pair<DensityMatrix, DensityMatrix> simulate_pair(const LogicalCircuit &c, const DensityMatrix &input,
                                                      size_t shots, Rng &rng);

/// 2^{-n} tr[P·Φ_noisy(U† P U)] evaluated densely; sampled layers are averaged over `shots` runs.
double dense_effective_fidelity(const LogicalCircuit &c, const PauliOp &p, size_t shots, Rng &rng);

struct DistanceScanRow {
    size_t n;
    size_t steps;
    double theta;
    Estimate trace_distance;
    Estimate tv_distance;
};

struct DistanceScanOptions {
    double theta = 0;
    double p_tot = 1;
    size_t num_inputs = 4;
    size_t num_bases = 8;
    BasisEnsemble bases = BasisEnsemble::Clifford;
};

/// Ideal state versus the rescaled virtual state R·ρ_noisy + (1 − R)·I/2^n for Trotterized 1D Heisenberg
/// circuits with single-qubit depolarizing noise after each rotation, p_err = p_tot / L.
std::vector<DistanceScanRow> run_distance_scan(const std::vector<size_t> &n_list, const std::vector<size_t> &steps_list,
                                const DistanceScanOptions &options, uint64_t seed);

}  // namespace twirlkit

#endif
