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

#include "twirlkit/clifford.h"

#include <map>
#include <set>

#include "gtest/gtest.h"

#include "dense_util.test.h"
#include "stats_util.test.h"
#include "twirlkit/errors.h"

using namespace twirlkit;
using namespace twirlkit::testing;

namespace {

/// True when U P U† equals the matrix of `image` exactly, sign included.
bool dense_conjugation_matches(const Mat &u, const PauliOp &p, const PauliOp &image) {
    return (u * pauli_matrix(p) * u.adjoint() - pauli_matrix(image)).norm() < 1e-9;
}

CliffordOp g1(GateKind k, size_t q, size_t n = 1) {
    return CliffordOp::gate(n, GateSpec{k, {q}});
}

}  // namespace

TEST(clifford, conjugate_examples) {
    EXPECT_EQ(conjugate(g1(GateKind::H, 0), parse_pauli("X")), parse_pauli("Z"));
    EXPECT_EQ(conjugate(g1(GateKind::S, 0), parse_pauli("X")), parse_pauli("Y"));
    auto cx = CliffordOp::gate(2, GateSpec{GateKind::CNOT, {0, 1}});
    EXPECT_EQ(conjugate(cx, parse_pauli("XI")), parse_pauli("XX"));
    EXPECT_THROW(conjugate(cx, parse_pauli("X")), DimensionError);
}

TEST(clifford, compose_examples) {
    EXPECT_TRUE(compose(g1(GateKind::H, 0), g1(GateKind::H, 0)).is_identity());
    EXPECT_EQ(compose(g1(GateKind::S, 0), g1(GateKind::S, 0)), g1(GateKind::Z, 0));
    auto a = CliffordOp::gate(2, GateSpec{GateKind::CNOT, {0, 1}});
    auto b = CliffordOp::gate(2, GateSpec{GateKind::CNOT, {1, 0}});
    auto ab = compose(a, b);
    Mat u = gate_matrix(2, {GateKind::CNOT, {0, 1}}) * gate_matrix(2, {GateKind::CNOT, {1, 0}});
    for (auto s : {"XI", "IX", "ZI", "IZ", "YY"}) {
        auto p = parse_pauli(s);
        EXPECT_TRUE(dense_conjugation_matches(u, p, conjugate(ab, p))) << s;
        EXPECT_EQ(conjugate(ab, p), conjugate(a, conjugate(b, p)));
    }
    EXPECT_THROW(compose(a, g1(GateKind::H, 0)), DimensionError);
}

TEST(clifford, inverse_examples) {
    EXPECT_EQ(inverse(g1(GateKind::H, 0)), g1(GateKind::H, 0));
    auto sdg = inverse(g1(GateKind::S, 0));
    EXPECT_EQ(conjugate(sdg, parse_pauli("X")), parse_pauli("-Y"));
    Mat sdg_m(2, 2);
    sdg_m << 1, 0, 0, cd(0, -1);
    EXPECT_TRUE(dense_conjugation_matches(sdg_m, parse_pauli("X"), parse_pauli("-Y")));
    Rng rng(7);
    auto c = random_clifford(3, rng);
    EXPECT_TRUE(compose(c, inverse(c)).is_identity());
    EXPECT_TRUE(compose(inverse(c), c).is_identity());
}

TEST(clifford, from_gates_examples) {
    auto c = from_gates(2, {{GateKind::CNOT, {0, 1}}});
    EXPECT_EQ(c.image_x[0], parse_pauli("XX"));
    auto m = from_gates(3, {{GateKind::MultiCNOT, {0, 1, 2}}});
    EXPECT_EQ(m.image_x[0], parse_pauli("XXX"));
    EXPECT_EQ(m.image_z[1], parse_pauli("ZZI"));
    EXPECT_EQ(m, from_gates(3, {{GateKind::CNOT, {0, 1}}, {GateKind::CNOT, {0, 2}}}));
    auto hs = from_gates(1, {{GateKind::H, {0}}, {GateKind::S, {0}}});
    Mat u = gate_matrix(1, {GateKind::S, {0}}) * gate_matrix(1, {GateKind::H, {0}});
    EXPECT_TRUE(dense_conjugation_matches(u, parse_pauli("X"), hs.image_x[0]));
    EXPECT_THROW(from_gates(2, {{GateKind::H, {2}}}), DimensionError);
    EXPECT_THROW(from_gates(2, {{GateKind::CNOT, {1, 1}}}), ValidationError);
    EXPECT_THROW(from_gates(2, {{GateKind::CNOT, {1}}}), ValidationError);
}

TEST(clifford, conjugate_matches_dense_random_circuits) {
    Rng rng(99);
    for (size_t n = 1; n <= 4; n++) {
        for (int trial = 0; trial < 40; trial++) {
            auto gates = random_gates(n, 12, rng);
            auto c = from_gates(n, gates);
            ASSERT_TRUE(c.is_valid());
            Mat u = gates_matrix(n, gates);
            for (int k = 0; k < 5; k++) {
                auto p = random_pauli(n, false, rng);
                p.log_i = (uint8_t)(rng() & 3);
                auto img = conjugate(c, p);
                EXPECT_TRUE(dense_conjugation_matches(u, p, img));
                PauliOp direct = p;
                conjugate_by_gates_inplace(direct, gates);
                EXPECT_EQ(direct, img);
                PauliOp back = img;
                conjugate_by_gates_inplace(back, inverse_gates(gates));
                EXPECT_EQ(back, p);
            }
            auto ci = inverse(c);
            ASSERT_TRUE(ci.is_valid());
            auto p = random_pauli(n, false, rng);
            EXPECT_EQ(conjugate(c, conjugate(ci, p)), p);
            auto c2 = from_gates(n, random_gates(n, 6, rng));
            ASSERT_TRUE(compose(c, c2).is_valid());
        }
    }
}

TEST(clifford, single_qubit_group) {
    const auto &words = single_qubit_clifford_words();
    ASSERT_EQ(words.size(), 24u);
    EXPECT_TRUE(words[0].empty());
    Rng rng(1);
    std::map<std::string, double> counts;
    std::map<std::string, double> x_image_sum;
    for (int k = 0; k < 100000; k++) {
        auto c = random_single_qubit_clifford(rng);
        counts[c.str()] += 1;
    }
    ASSERT_EQ(counts.size(), 24u);
    std::vector<double> c;
    for (auto &kv : counts) {
        c.push_back(kv.second);
    }
    EXPECT_GT(chi_square_uniform_pvalue(c), 0.001);
    double id = counts[CliffordOp(1).str()];
    double sigma = std::sqrt(100000.0 * (1.0 / 24) * (23.0 / 24));
    EXPECT_NEAR(id, 100000.0 / 24, 3 * sigma);

    // The signed images of X over the whole group cancel in every Pauli coordinate.
    std::map<char, int> coeff;
    for (const auto &w : words) {
        auto img = from_gates(1, w).image_x[0];
        coeff[img.at(0)] += img.log_i == 0 ? 1 : -1;
    }
    for (auto &kv : coeff) {
        EXPECT_EQ(kv.second, 0);
    }
}

TEST(clifford, random_clifford_single_qubit_matches_group) {
    Rng rng(8);
    std::set<std::string> all;
    for (const auto &w : single_qubit_clifford_words()) {
        all.insert(from_gates(1, w).str());
    }
    std::map<std::string, double> counts;
    for (int k = 0; k < 48000; k++) {
        auto c = random_clifford(1, rng);
        ASSERT_TRUE(all.count(c.str()));
        counts[c.str()] += 1;
    }
    ASSERT_EQ(counts.size(), 24u);
    std::vector<double> c;
    for (auto &kv : counts) {
        c.push_back(kv.second);
    }
    EXPECT_GT(chi_square_uniform_pvalue(c), 0.001);
}

TEST(clifford, random_clifford_two_qubit_group_size) {
    // |C_2 / U(1)| = 2^(n^2 + 2n) * prod_j (4^j - 1) = 2^8 * 3 * 15.
    const size_t group_size = 11520;
    Rng rng(12);
    std::map<std::string, int> counts;
    const int draws = 400000;
    for (int k = 0; k < draws; k++) {
        auto c = random_clifford(2, rng);
        ASSERT_TRUE(c.is_valid());
        counts[c.str()] += 1;
    }
    EXPECT_EQ(counts.size(), group_size);
    std::vector<double> buckets(64, 0);
    for (auto &kv : counts) {
        buckets[std::hash<std::string>()(kv.first) % 64] += kv.second;
    }
    std::map<size_t, double> bucket_sizes;
    for (auto &kv : counts) {
        bucket_sizes[std::hash<std::string>()(kv.first) % 64] += 1;
    }
    std::vector<double> probs(64);
    for (size_t b = 0; b < 64; b++) {
        probs[b] = bucket_sizes[b] / (double)group_size;
    }
    EXPECT_GT(chi_square_pvalue(buckets, probs), 0.001);
}

TEST(clifford, random_clifford_image_uniform) {
    Rng rng(21);
    for (size_t n = 1; n <= 3; n++) {
        auto p = PauliOp::single(n, 0, 'X');
        std::map<std::string, double> counts;
        size_t draws = 40000;
        for (size_t k = 0; k < draws; k++) {
            counts[format_pauli(conjugate(random_clifford(n, rng), p).unsigned_copy())] += 1;
        }
        size_t nonid = (size_t{1} << (2 * n)) - 1;
        ASSERT_EQ(counts.size(), nonid);
        std::vector<double> c;
        for (auto &kv : counts) {
            c.push_back(kv.second);
        }
        EXPECT_GT(chi_square_uniform_pvalue(c), 0.001);
        double fixed = counts[format_pauli(p)] / (double)draws;
        EXPECT_NEAR(fixed, 1.0 / (double)nonid, 4 * std::sqrt(1.0 / nonid / draws));
    }
}

TEST(clifford, random_clifford_large_is_valid) {
    Rng rng(4);
    for (size_t n : {5, 33, 70}) {
        auto c = random_clifford(n, rng);
        EXPECT_TRUE(c.is_valid());
        EXPECT_TRUE(compose(c, inverse(c)).is_identity());
    }
}

TEST(clifford, gates_mapping_to_z0) {
    Rng rng(6);
    for (size_t n = 1; n <= 5; n++) {
        for (int k = 0; k < 30; k++) {
            auto q = random_pauli(n, true, rng);
            int sign = 0;
            auto gates = gates_mapping_to_z0(q, &sign);
            auto img = q;
            conjugate_by_gates_inplace(img, gates);
            EXPECT_TRUE(img.same_bits(PauliOp::single(n, 0, 'Z')));
            EXPECT_EQ(img.log_i, sign == 1 ? 0 : 2);
        }
    }
    EXPECT_THROW(gates_mapping_to_z0(parse_pauli("II")), ValidationError);
}
