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

#ifndef TWIRLKIT_TESTS_RANDOM_CHANNELS_TEST_H
#define TWIRLKIT_TESTS_RANDOM_CHANNELS_TEST_H

#include <algorithm>
#include <memory>

#include "dense_util.test.h"
#include "twirlkit/channel.h"

namespace twirlkit::testing {

/// Random structured ensemble with no identity member. Frames are attached with probability 1/2.
inline PauliEnsemble random_ensemble(size_t n, Rng &rng, bool allow_frame = true) {
    while (true) {
        std::vector<size_t> order(n);
        for (size_t q = 0; q < n; q++) {
            order[q] = q;
        }
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<EnsembleFactor> factors;
        size_t pos = 0;
        while (pos < n) {
            size_t len = 1 + rng() % (n - pos);
            std::vector<size_t> reg(order.begin() + pos, order.begin() + pos + len);
            pos += len;
            switch (rng() % 6) {
                case 0:
                    factors.push_back(EnsembleFactor::point(reg, random_pauli(len, false, rng)));
                    break;
                case 1:
                    factors.push_back(EnsembleFactor::full_group(reg));
                    break;
                case 2:
                    factors.push_back(EnsembleFactor::full_group_minus_identity(reg));
                    break;
                case 3:
                    factors.push_back(EnsembleFactor::diagonal_iz_coset(reg, random_pauli(len, false, rng)));
                    break;
                case 4:
                    for (size_t q : reg) {
                        factors.push_back(EnsembleFactor::xy_set(q));
                    }
                    break;
                default:
                    factors.push_back(EnsembleFactor::weight_at_most(reg, rng() % (len + 1)));
                    break;
            }
        }
        std::shared_ptr<const Frame> frame;
        if (allow_frame && (rng() & 1)) {
            frame = std::make_shared<Frame>(n, random_gates(n, 8, rng));
        }
        PauliEnsemble e(n, factors, frame);
        if (!e.contains_identity()) {
            return e;
        }
    }
}

inline PauliChannel random_channel(size_t n, Rng &rng, size_t max_atoms = 3, bool allow_frame = true) {
    size_t k = 1 + rng() % max_atoms;
    std::vector<ChannelAtom> atoms;
    std::uniform_real_distribution<double> u(0.01, 1.0);
    double budget = u(rng);
    std::vector<double> w(k);
    double total = 0;
    for (auto &x : w) {
        x = u(rng);
        total += x;
    }
    for (size_t j = 0; j < k; j++) {
        atoms.push_back({budget * w[j] / total, random_ensemble(n, rng, allow_frame)});
    }
    return PauliChannel(n, atoms);
}

/// Kraus-form channel action on a dense operator, from the explicit expansion.
inline Mat apply_expanded(const std::map<PauliOp, double> &dist, const Mat &rho) {
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const auto &[p, q] : dist) {
        Mat m = pauli_matrix(p);
        out += q * m * rho * m.adjoint();
    }
    return out;
}

}  // namespace twirlkit::testing

#endif
