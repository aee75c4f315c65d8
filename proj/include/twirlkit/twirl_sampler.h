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

#ifndef TWIRLKIT_TWIRL_SAMPLER_H
#define TWIRLKIT_TWIRL_SAMPLER_H

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "twirlkit/channel.h"

namespace twirlkit {

using Rational = boost::multiprecision::cpp_rational;

/// A symmetric Clifford D drawn by one of the Rz-type samplers. The twirled error is D† E D.
///
/// `gates` is a circuit for D. The construction steps (MultiCNOT, local Cliffords, optional S) build D†,
/// so `gates` lists their inverses in reverse order.
struct TwirlGadget {
    std::vector<GateSpec> gates;
    CliffordOp gate;
    CliffordOp gate_inv;
    std::vector<size_t> support;

    /// D† e D.
    PauliOp twirled_error(const PauliOp &e) const;
};

enum class SamplerMode { Full, KSparse };

/// Probability of each target size k' for the k-sparse sampler, k' = 0..k-1.
std::vector<Rational> ksparse_size_weights(size_t n, size_t k);

/// Gadget from an explicit choice of targets (sorted, from 1..n-1), Clifford word indices and S bit.
TwirlGadget make_twirl_gadget(size_t n, const std::vector<size_t> &targets, const std::vector<size_t> &cliffords,
                              bool s_gate);

TwirlGadget sample_full_twirl_gate(size_t n, Rng &rng);
TwirlGadget sample_ksparse_twirl_gate(size_t n, size_t k, Rng &rng);

struct WeightedGadget {
    Rational probability;
    TwirlGadget gadget;
};

/// Exact outcome distribution of a sampler. Refuses when it would exceed `cap` entries.
std::vector<WeightedGadget> enumerate_sampler_distribution(
    size_t n, SamplerMode mode, size_t k = 0, size_t cap = size_t{1} << 20);

/// Exact distribution of D† e D over an enumerated sampler distribution; signs dropped.
std::map<PauliOp, Rational> average_twirled_error(const std::vector<WeightedGadget> &dist, const PauliOp &e);

/// Exact error distribution of a channel whose atom probabilities are given as rationals.
std::map<PauliOp, Rational> expand_rational(const PauliChannel &ch, const std::vector<Rational> &atom_probs);

}  // namespace twirlkit

#endif
