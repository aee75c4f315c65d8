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

#include "twirlkit/twirl_sampler.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "twirlkit/errors.h"

namespace twirlkit {

PauliOp TwirlGadget::twirled_error(const PauliOp &e) const {
    return conjugate(gate_inv, e);
}

std::vector<Rational> ksparse_size_weights(size_t n, size_t k) {
    if (n == 0 || k < 1 || k > n) {
        throw ValidationError("k-sparse sampler needs 1 <= k <= n.");
    }
    std::vector<BigInt> w;
    BigInt binom = 1;
    BigInt pow3 = 1;
    for (size_t j = 0; j < k; j++) {
        w.push_back(binom * pow3);
        binom = binom * (n - 1 - j) / (j + 1);
        pow3 *= 3;
    }
    BigInt total = std::accumulate(w.begin(), w.end(), BigInt{0});
    std::vector<Rational> out;
    for (const auto &x : w) {
        out.push_back(Rational(x, total));
    }
    return out;
}

TwirlGadget make_twirl_gadget(size_t n, const std::vector<size_t> &targets, const std::vector<size_t> &cliffords,
                              bool s_gate) {
    if (targets.size() != cliffords.size()) {
        throw ValidationError("One Clifford index per target is required.");
    }
    std::vector<GateSpec> steps;
    if (!targets.empty()) {
        std::vector<size_t> qs = {0};
        qs.insert(qs.end(), targets.begin(), targets.end());
        steps.push_back(GateSpec{GateKind::MultiCNOT, qs});
    }
    for (size_t j = 0; j < targets.size(); j++) {
        auto word = single_qubit_clifford_gates(cliffords[j], targets[j]);
        steps.insert(steps.end(), word.begin(), word.end());
    }
    if (s_gate) {
        steps.push_back(GateSpec{GateKind::S, {0}});
    }
    TwirlGadget g;
    g.gate_inv = from_gates(n, steps);
    g.gates = inverse_gates(steps);
    g.gate = inverse(g.gate_inv);
    if (s_gate || !targets.empty()) {
        g.support.push_back(0);
    }
    g.support.insert(g.support.end(), targets.begin(), targets.end());
    return g;
}

namespace {

TwirlGadget sample_with_targets(size_t n, std::vector<size_t> targets, Rng &rng) {
    std::sort(targets.begin(), targets.end());
    std::uniform_int_distribution<size_t> pick24(0, 23);
    std::vector<size_t> cliffords;
    for (size_t j = 0; j < targets.size(); j++) {
        cliffords.push_back(pick24(rng));
    }
    bool s_gate = std::bernoulli_distribution(0.5)(rng);
    return make_twirl_gadget(n, targets, cliffords, s_gate);
}

template <typename F>
void for_each_subset_of_size(size_t n_idle, size_t size, F &&f) {
    std::vector<bool> sel(n_idle, false);
    std::fill(sel.end() - size, sel.end(), true);
    do {
        std::vector<size_t> t;
        for (size_t j = 0; j < n_idle; j++) {
            if (sel[j]) {
                t.push_back(j + 1);
            }
        }
        f(t);
    } while (std::next_permutation(sel.begin(), sel.end()));
}

}  // namespace

TwirlGadget sample_full_twirl_gate(size_t n, Rng &rng) {
    if (n == 0) {
        throw ValidationError("Sampler needs n >= 1.");
    }
    std::bernoulli_distribution join(0.75);
    std::vector<size_t> targets;
    for (size_t q = 1; q < n; q++) {
        if (join(rng)) {
            targets.push_back(q);
        }
    }
    return sample_with_targets(n, targets, rng);
}

TwirlGadget sample_ksparse_twirl_gate(size_t n, size_t k, Rng &rng) {
    auto weights = ksparse_size_weights(n, k);
    std::vector<double> w;
    for (const auto &x : weights) {
        w.push_back(x.convert_to<double>());
    }
    size_t size = std::discrete_distribution<size_t>(w.begin(), w.end())(rng);
    std::vector<size_t> idle(n - 1);
    std::iota(idle.begin(), idle.end(), size_t{1});
    std::vector<size_t> targets;
    std::sample(idle.begin(), idle.end(), std::back_inserter(targets), size, rng);
    return sample_with_targets(n, targets, rng);
}

std::vector<WeightedGadget> enumerate_sampler_distribution(size_t n, SamplerMode mode, size_t k, size_t cap) {
    if (n == 0) {
        throw ValidationError("Sampler needs n >= 1.");
    }
    size_t max_size = n - 1;
    std::vector<Rational> size_prob(n);
    std::vector<BigInt> binom(n, 0);
    binom[0] = 1;
    for (size_t j = 1; j < n; j++) {
        binom[j] = binom[j - 1] * (n - j) / j;
    }
    if (mode == SamplerMode::Full) {
        for (size_t j = 0; j < n; j++) {
            Rational p = binom[j];
            for (size_t i = 0; i < j; i++) {
                p *= Rational(3, 4);
            }
            for (size_t i = j; i < n - 1; i++) {
                p *= Rational(1, 4);
            }
            size_prob[j] = p;
        }
    } else {
        auto w = ksparse_size_weights(n, k);
        max_size = k - 1;
        for (size_t j = 0; j < k; j++) {
            size_prob[j] = w[j];
        }
    }
    BigInt count = 0;
    BigInt pow24 = 1;
    for (size_t j = 0; j <= max_size; j++) {
        count += binom[j] * pow24 * 2;
        pow24 *= 24;
    }
    if (count > cap) {
        throw CapExceededError("Sampler enumeration has " + count.str() + " outcomes, above the cap.");
    }
    std::vector<WeightedGadget> out;
    for (size_t size = 0; size <= max_size; size++) {
        if (size_prob[size] == 0) {
            continue;
        }
        Rational each = size_prob[size] / Rational(binom[size]) / 2;
        for (size_t i = 0; i < size; i++) {
            each /= 24;
        }
        for_each_subset_of_size(n - 1, size, [&](const std::vector<size_t> &targets) {
            std::vector<size_t> cl(size, 0);
            while (true) {
                for (bool s : {false, true}) {
                    out.push_back({each, make_twirl_gadget(n, targets, cl, s)});
                }
                size_t j = 0;
                while (j < size && ++cl[j] == 24) {
                    cl[j++] = 0;
                }
                if (j == size) {
                    break;
                }
            }
        });
    }
    return out;
}

std::map<PauliOp, Rational> average_twirled_error(const std::vector<WeightedGadget> &dist, const PauliOp &e) {
    std::map<PauliOp, Rational> out;
    for (const auto &w : dist) {
        out[w.gadget.twirled_error(e).unsigned_copy()] += w.probability;
    }
    return out;
}

std::map<PauliOp, Rational> expand_rational(const PauliChannel &ch, const std::vector<Rational> &atom_probs) {
    if (atom_probs.size() != ch.atoms().size()) {
        throw ValidationError("One rational probability per atom is required.");
    }
    std::map<PauliOp, Rational> out;
    Rational total = 0;
    for (size_t a = 0; a < atom_probs.size(); a++) {
        const auto &e = ch.atoms()[a].ensemble;
        Rational each = atom_probs[a] / Rational(e.cardinality());
        for (const auto &m : e.members()) {
            out[m.unsigned_copy()] += each;
        }
        total += atom_probs[a];
    }
    if (total != 1) {
        out[PauliOp(ch.n())] += 1 - total;
    }
    return out;
}

}  // namespace twirlkit
