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

#include "twirlkit/channel.h"

#include <cmath>
#include <map>

#include "gtest/gtest.h"

#include "dense_util.test.h"
#include "random_channels.test.h"
#include "stats_util.test.h"
#include "twirlkit/errors.h"

using namespace twirlkit;
using namespace twirlkit::testing;

namespace {

double brute_fidelity(const PauliChannel &ch, const PauliOp &p) {
    double f = 0;
    for (const auto &[e, q] : expand(ch)) {
        f += q * (commutes(e, p) ? 1 : -1);
    }
    return f;
}

double brute_distance(const PauliChannel &ch, bool two_norm) {
    size_t nonid = (size_t{1} << (2 * ch.n())) - 1;
    auto dist = expand(ch);
    double acc = 0;
    for (size_t idx = 1; idx <= nonid; idx++) {
        PauliOp p(ch.n());
        for (size_t q = 0; q < ch.n(); q++) {
            p.set(q, (idx >> (2 * q)) & 1, (idx >> (2 * q + 1)) & 1);
        }
        double share = (dist.count(p) ? dist[p] : 0.0) / ch.p_err();
        double d = share - 1.0 / (double)nonid;
        acc += two_norm ? d * d : std::fabs(d);
    }
    return two_norm ? std::sqrt(acc) : acc;
}

std::vector<size_t> range(size_t a, size_t b) {
    std::vector<size_t> r;
    for (size_t k = a; k < b; k++) {
        r.push_back(k);
    }
    return r;
}

}  // namespace

TEST(noise_channel, single_qubit_constructors) {
    auto dep = make_single_qubit_pauli_noise(2, 0, 0.1, 0.1, 0.1);
    EXPECT_NEAR(dep.p_err(), 0.3, 1e-15);
    EXPECT_EQ(dep.atoms().size(), 3u);
    auto xy = make_single_qubit_pauli_noise(4, 0, 0.005, 0.005, 0);
    EXPECT_EQ(xy.atoms().size(), 2u);
    EXPECT_NEAR(xy.p_err(), 0.01, 1e-15);
    auto id = make_single_qubit_pauli_noise(1, 0, 0, 0, 0);
    EXPECT_TRUE(id.atoms().empty());
    EXPECT_EQ(id.identity_prob(), 1);
    EXPECT_THROW(make_single_qubit_pauli_noise(1, 0, 0.5, 0.5, 0.5), ValidationError);
    EXPECT_THROW(make_single_qubit_pauli_noise(1, 0, -0.1, 0, 0), ValidationError);
    EXPECT_THROW(make_single_qubit_pauli_noise(1, 1, 0.1, 0, 0), DimensionError);
}

TEST(noise_channel, white_noise) {
    auto wn = make_white_noise(1, 0.3);
    auto dist = expand(wn);
    EXPECT_NEAR(dist[parse_pauli("I")], 0.7, 1e-15);
    for (auto s : {"X", "Y", "Z"}) {
        EXPECT_NEAR(dist[parse_pauli(s)], 0.1, 1e-15);
    }
    for (size_t n = 1; n <= 6; n++) {
        auto w = make_white_noise(n, 0.2);
        Rng rng(n);
        double expected = 1 - 0.2 * std::ldexp(1.0, 2 * n) / (std::ldexp(1.0, 2 * n) - 1);
        for (int k = 0; k < 10; k++) {
            EXPECT_NEAR(pauli_fidelity(w, random_pauli(n, true, rng)), expected, 1e-14);
        }
    }
    EXPECT_TRUE(make_white_noise(2, 0).atoms().empty());
    EXPECT_THROW(make_white_noise(2, 1.5), ValidationError);
}

TEST(noise_channel, mean_chi_examples) {
    auto pz = PauliEnsemble::point(parse_pauli("ZI"));
    EXPECT_EQ(ensemble_mean_chi(pz, parse_pauli("XI")), -1);
    PauliEnsemble full(2, {EnsembleFactor::full_group({0})});
    EXPECT_EQ(ensemble_mean_chi(full, parse_pauli("ZX")), 0);
    EXPECT_EQ(ensemble_mean_chi(full, parse_pauli("IX")), 1);

    PauliEnsemble wam(4, {EnsembleFactor::point({0}, parse_pauli("X")), EnsembleFactor::weight_at_most({1, 2, 3}, 1)});
    auto members = wam.members();
    EXPECT_EQ(members.size(), 10u);
    auto query = parse_pauli("IXZI");
    double brute = 0;
    for (const auto &m : members) {
        brute += commutes(m, query) ? 1 : -1;
    }
    EXPECT_DOUBLE_EQ(ensemble_mean_chi(wam, query), brute / 10);
    EXPECT_DOUBLE_EQ(brute / 10, 0.2);
}

TEST(noise_channel, fidelity_examples) {
    auto dep = make_single_qubit_pauli_noise(2, 0, 0.1, 0.1, 0.1);
    EXPECT_NEAR(pauli_fidelity(dep, parse_pauli("ZI")), 0.6, 1e-15);
    EXPECT_EQ(pauli_fidelity(dep, parse_pauli("II")), 1);
    Rng rng(3);
    for (int k = 0; k < 20; k++) {
        auto ch = random_channel(3, rng);
        EXPECT_NEAR(pauli_fidelity(ch, PauliOp(3)), 1, 1e-15);
    }
}

TEST(noise_channel, fidelity_matches_expansion) {
    Rng rng(17);
    for (size_t n = 1; n <= 5; n++) {
        for (int trial = 0; trial < 25; trial++) {
            auto ch = random_channel(n, rng);
            double total = 0;
            for (auto &kv : expand(ch)) {
                total += kv.second;
            }
            EXPECT_NEAR(total, 1, 1e-12);
            for (int k = 0; k < 8; k++) {
                auto p = random_pauli(n, false, rng);
                double f = pauli_fidelity(ch, p);
                EXPECT_NEAR(f, brute_fidelity(ch, p), 1e-12);
                EXPECT_LE(std::fabs(f), 1 + 1e-12);
            }
        }
    }
}

TEST(noise_channel, membership_and_sampling_consistent) {
    Rng rng(5);
    for (int trial = 0; trial < 30; trial++) {
        auto e = random_ensemble(4, rng);
        auto members = e.members();
        EXPECT_EQ(BigInt(members.size()), e.cardinality());
        std::set<PauliOp> unique(members.begin(), members.end());
        EXPECT_EQ(unique.size(), members.size());
        for (const auto &m : members) {
            EXPECT_TRUE(e.contains(m));
        }
        for (int k = 0; k < 20; k++) {
            EXPECT_TRUE(unique.count(e.sample(rng)));
        }
    }
}

TEST(noise_channel, distances_match_brute_force) {
    Rng rng(23);
    for (size_t n = 1; n <= 4; n++) {
        for (int trial = 0; trial < 25; trial++) {
            auto ch = random_channel(n, rng, 3, trial % 2 == 0);
            EXPECT_NEAR(distance_v(ch), brute_distance(ch, true), 1e-10);
            EXPECT_NEAR(diamond_distance_normalized(ch), brute_distance(ch, false), 1e-10);
            double sq = 0;
            for (auto &[p, q] : expand(ch)) {
                if (!p.is_identity_up_to_sign()) {
                    sq += q * q;
                }
            }
            EXPECT_NEAR(sum_squared_error_probs(ch), sq, 1e-13);
        }
    }
}

TEST(noise_channel, distance_examples) {
    for (size_t n : {1, 2, 5, 20, 64}) {
        EXPECT_EQ(distance_v(make_white_noise(n, 0.37)), 0.0);
        EXPECT_EQ(diamond_distance_normalized(make_white_noise(n, 0.01)), 0.0);
    }
    auto dep = make_single_qubit_pauli_noise(20, 0, 0.01, 0.01, 0.01);
    EXPECT_NEAR(distance_v(dep), 1 / std::sqrt(3.0), 1e-9);
    auto z = make_single_qubit_pauli_noise(1, 0, 0, 0, 0.2);
    EXPECT_NEAR(diamond_distance_normalized(z), 4.0 / 3, 1e-15);
    EXPECT_THROW(distance_v(make_identity_channel(2)), ValidationError);
    EXPECT_THROW(diamond_distance_normalized(make_identity_channel(2)), ValidationError);

    // Overlapping atoms: X point inside an XY x Full set.
    PauliEnsemble big(2, {EnsembleFactor::xy_set(0), EnsembleFactor::full_group({1})});
    PauliChannel ch(2, {{0.1, big}, {0.05, PauliEnsemble::point(parse_pauli("XI"))}});
    EXPECT_NEAR(distance_v(ch), brute_distance(ch, true), 1e-12);
}

TEST(noise_channel, unitarity_and_strength) {
    auto id = make_identity_channel(3);
    EXPECT_EQ(unitarity(id), 1);
    EXPECT_EQ(avg_noise_strength(id), 1);
    auto dep = make_single_qubit_pauli_noise(1, 0, 0.1, 0.1, 0.1);
    EXPECT_NEAR(avg_noise_strength(dep), 0.6, 1e-15);
    EXPECT_NEAR(unitarity(dep), 0.36, 1e-15);

    Rng rng(31);
    for (size_t n = 1; n <= 3; n++) {
        double d2 = std::ldexp(1.0, 2 * n);
        for (int trial = 0; trial < 15; trial++) {
            auto ch = trial == 0 ? make_white_noise(n, 0.3) : random_channel(n, rng);
            std::vector<Mat> kraus;
            for (auto &[p, q] : expand(ch)) {
                kraus.push_back(std::sqrt(q) * pauli_matrix(p));
            }
            double uu = 0, ss = 0;
            for (const auto &a : kraus) {
                ss += std::norm(a.trace());
                for (const auto &b : kraus) {
                    uu += std::norm((a * b.adjoint()).trace());
                }
            }
            EXPECT_NEAR(unitarity(ch), (uu - 1) / (d2 - 1), 1e-12);
            EXPECT_NEAR(avg_noise_strength(ch), (ss - 1) / (d2 - 1), 1e-12);
            EXPECT_LE(unitarity(ch), 1 + 1e-15);
            EXPECT_LE(avg_noise_strength(ch), 1 + 1e-15);
            EXPECT_LT(unitarity(ch), 1);
            EXPECT_LT(avg_noise_strength(ch), 1);
        }
    }
}

TEST(noise_channel, sample_error_distribution) {
    Rng rng(41);
    EXPECT_FALSE(sample_error(make_identity_channel(2), rng).has_value());
    auto wn = make_white_noise(1, 0.3);
    std::map<std::string, double> counts;
    for (int k = 0; k < 100000; k++) {
        auto e = sample_error(wn, rng);
        counts[e ? format_pauli(*e) : "none"] += 1;
    }
    EXPECT_GT(chi_square_pvalue({counts["none"], counts["+X"], counts["+Y"], counts["+Z"]}, {0.7, 0.1, 0.1, 0.1}),
              0.001);

    PauliEnsemble twirled(3, {EnsembleFactor::xy_set(0), EnsembleFactor::full_group({1, 2})});
    PauliChannel ch(3, {{1.0, twirled}});
    std::map<std::string, double> c2;
    for (int k = 0; k < 64000; k++) {
        c2[format_pauli(*sample_error(ch, rng))] += 1;
    }
    ASSERT_EQ(c2.size(), 32u);
    std::vector<double> v;
    for (auto &kv : c2) {
        v.push_back(kv.second);
    }
    EXPECT_GT(chi_square_uniform_pvalue(v), 0.001);
}

TEST(noise_channel, expand_cap_and_validation) {
    EXPECT_THROW(expand(make_white_noise(9, 0.1)), CapExceededError);
    EXPECT_THROW(PauliChannel(2, {{0.1, PauliEnsemble(2, {EnsembleFactor::full_group({0, 1})})}}), ValidationError);
    EXPECT_THROW(PauliEnsemble(3, {EnsembleFactor::full_group({0, 1}), EnsembleFactor::xy_set(1)}), ValidationError);
    EXPECT_THROW(EnsembleFactor::full_group({}), ValidationError);
    EXPECT_EQ(weight_at_most_count(63, 63), BigInt(1) << 126);
    EXPECT_EQ(EnsembleFactor::weight_at_most(range(0, 5), 2).cardinality(), BigInt(1 + 15 + 90));
}
