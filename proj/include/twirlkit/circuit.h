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

#ifndef TWIRLKIT_CIRCUIT_H
#define TWIRLKIT_CIRCUIT_H

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "twirlkit/noise_model.h"

namespace twirlkit {

struct CliffordLayer {
    CliffordOp op;
    CliffordOp inv;
    /// Gate-level form when known; empty for tableau-only layers.
    std::vector<GateSpec> gates;
};

/// exp(i·angle·axis) followed by noise, realised as W† [noise ∘ exp(i·angle'·Z0)] W with W·axis·W† = ±Z0.
struct RotationLayer {
    PauliOp axis;
    double angle = 0;
    std::shared_ptr<const NoiseModel> noise;
    std::vector<GateSpec> w_gates;
    std::vector<GateSpec> w_inv_gates;
    /// Angle of the equivalent rotation about Z on qubit 0 (sign of the frame folded in).
    double frame_angle = 0;
};

using Layer = std::variant<CliffordLayer, RotationLayer>;

class LogicalCircuit {
   public:
    LogicalCircuit() = default;
    explicit LogicalCircuit(size_t n);

    size_t n() const {
        return n_;
    }
    const std::vector<Layer> &layers() const {
        return layers_;
    }
    size_t num_rotation_layers() const;

    void add_clifford(const CliffordOp &op);
    void add_clifford_gates(const std::vector<GateSpec> &gates);
    /// A null noise model means a noiseless rotation.
    void add_rotation(const PauliOp &axis, double angle, std::shared_ptr<const NoiseModel> noise);

    /// Appends every layer of `other`.
    void append(const LogicalCircuit &other);

   private:
    size_t n_ = 0;
    std::vector<Layer> layers_;
};

struct Estimate {
    double mean = 0;
    double std_error = 0;
};

/// Sample mean and its standard error (0 for fewer than two samples).
Estimate mean_estimate(const std::vector<double> &samples);

/// Runs body(i) for every i < count on up to `threads` workers. The first worker exception is rethrown.
void parallel_for(size_t count, size_t threads, const std::function<void(size_t)> &body);

/// 2^{-n} tr[N_eff(p) p] for the circuit's effective noise. Sampled layers are averaged over `shots` draws.
Estimate effective_fidelity(const LogicalCircuit &c, const PauliOp &p, size_t shots, Rng &rng);

/// U† p U for the ideal circuit unitary U (signs dropped).
PauliOp heisenberg_image(const LogicalCircuit &c, const PauliOp &p);

/// Π over noisy rotation layers of s_l / u_l.
double optimal_rescale_coefficient(const LogicalCircuit &c);

struct BiasResult {
    double mean_bias = 0;
    double std_error = 0;
    double rescale = 1;
};

/// Mean over uniformly random nonidentity Paulis of |R·|f| − 1|. Each observable draws from its own stream
/// seeded by (seed, index), so the result does not depend on the thread count.
BiasResult average_bias(const LogicalCircuit &c, size_t num_paulis, size_t shots, uint64_t seed,
                        size_t threads = 1);

/// Stream for work item `index` under a master seed.
Rng derived_rng(uint64_t seed, uint64_t index, uint64_t salt = 0);

/// Uniformly random Clifford layers alternating with noise-only layers (angle 0 about Z on qubit 0).
LogicalCircuit random_clifford_circuit(size_t n, size_t num_layers, std::shared_ptr<const NoiseModel> noise, Rng &rng);

}  // namespace twirlkit

#endif
