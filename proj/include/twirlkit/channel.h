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

#ifndef TWIRLKIT_CHANNEL_H
#define TWIRLKIT_CHANNEL_H

#include <map>
#include <optional>
#include <vector>

#include "twirlkit/ensemble.h"

namespace twirlkit {

struct ChannelAtom {
    double prob;
    PauliEnsemble ensemble;
};

/// Pauli channel ρ -> identity_prob ρ + Σ_atoms prob E_{E~ensemble}[E ρ E].
class PauliChannel {
   public:
    PauliChannel() = default;
    /// Zero-probability atoms are dropped. Atoms whose ensemble contains the identity are rejected.
    PauliChannel(size_t n, std::vector<ChannelAtom> atoms);

    size_t n() const {
        return n_;
    }
    const std::vector<ChannelAtom> &atoms() const {
        return atoms_;
    }
    double identity_prob() const {
        return identity_prob_;
    }
    double p_err() const {
        return p_err_;
    }
    bool point_atoms_only() const;

   private:
    size_t n_ = 0;
    std::vector<ChannelAtom> atoms_;
    double identity_prob_ = 1;
    double p_err_ = 0;
};

PauliChannel make_identity_channel(size_t n);
PauliChannel make_single_qubit_pauli_noise(size_t n, size_t target_qubit, double px, double py, double pz);
PauliChannel make_white_noise(size_t n, double p_err);

double ensemble_mean_chi(const PauliEnsemble &e, const PauliOp &p);

/// tr[N(P) P] / 2^n.
double pauli_fidelity(const PauliChannel &ch, const PauliOp &p);

/// A group of nonidentity Paulis that all carry the same error probability, stored as a fraction of p_err.
struct ProbabilityCell {
    BigInt count;
    long double share_each;
};

/// Partition of the channel's error support into equal-probability cells, by inclusion-exclusion over
/// atom intersections.
std::vector<ProbabilityCell> probability_cells(const PauliChannel &ch);

/// Σ over nonidentity Paulis of p_i².
double sum_squared_error_probs(const PauliChannel &ch);

double distance_v(const PauliChannel &ch);
double diamond_distance_normalized(const PauliChannel &ch);

double unitarity(const PauliChannel &ch);
double avg_noise_strength(const PauliChannel &ch);

/// None for the identity outcome.
std::optional<PauliOp> sample_error(const PauliChannel &ch, Rng &rng);

/// Explicit distribution including the identity. Refuses above `max_qubits`.
std::map<PauliOp, double> expand(const PauliChannel &ch, size_t max_qubits = 8);

}  // namespace twirlkit

#endif
