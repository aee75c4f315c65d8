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

#include "twirlkit/pauli.h"

#include <map>

#include "gtest/gtest.h"

#include "dense_util.test.h"
#include "stats_util.test.h"
#include "twirlkit/errors.h"

using namespace twirlkit;
using namespace twirlkit::testing;

TEST(pauli, product_examples) {
    EXPECT_EQ(pauli_mul(parse_pauli("X"), parse_pauli("Z")), parse_pauli("-iY"));
    EXPECT_EQ(pauli_mul(parse_pauli("IX"), parse_pauli("IX")), parse_pauli("II"));
    auto r = pauli_mul(parse_pauli("XZ"), parse_pauli("ZZ"));
    EXPECT_EQ(r, parse_pauli("-iYI"));
    EXPECT_TRUE(r.x(0) && !r.x(1) && r.z(0) && !r.z(1));
    EXPECT_EQ(r.log_i, 3);
}

TEST(pauli, product_size_mismatch) {
    EXPECT_THROW(pauli_mul(parse_pauli("X"), parse_pauli("XX")), DimensionError);
    EXPECT_THROW(commutes(parse_pauli("X"), parse_pauli("XX")), DimensionError);
}

TEST(pauli, commutes_examples) {
    EXPECT_FALSE(commutes(parse_pauli("X"), parse_pauli("Z")));
    EXPECT_TRUE(commutes(parse_pauli("XZ"), parse_pauli("XZ")));
    EXPECT_TRUE(commutes(parse_pauli("XYI"), parse_pauli("ZZX")));
    auto a = pauli_matrix(parse_pauli("XYI"));
    auto b = pauli_matrix(parse_pauli("ZZX"));
    EXPECT_LT((a * b - b * a).norm(), 1e-12);
}

TEST(pauli, weight_examples) {
    EXPECT_EQ(weight(parse_pauli("III")), 0u);
    EXPECT_EQ(weight(parse_pauli("XIZ")), 2u);
    EXPECT_EQ(weight(parse_pauli("YYY")), 3u);
}

TEST(pauli, parse_and_format) {
    auto p = parse_pauli("XIZ");
    EXPECT_EQ(p.n, 3u);
    EXPECT_TRUE(p.x(0) && !p.x(1) && !p.x(2));
    EXPECT_TRUE(!p.z(0) && !p.z(1) && p.z(2));
    EXPECT_EQ(p.log_i, 0);
    auto y = parse_pauli("-iY");
    EXPECT_EQ(y.n, 1u);
    EXPECT_EQ(y.at(0), 'Y');
    EXPECT_EQ(y.log_i, 3);
    try {
        parse_pauli("XQ");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position, 1u);
    }
    EXPECT_THROW(parse_pauli("-iXa"), ParseError);
    Rng rng(5);
    for (size_t n : {1, 7, 64, 65, 300}) {
        for (int k = 0; k < 20; k++) {
            auto q = random_pauli(n, false, rng);
            q.log_i = (uint8_t)(rng() & 3);
            EXPECT_EQ(parse_pauli(format_pauli(q)), q);
        }
    }
}

TEST(pauli, product_matches_dense_matrices) {
    Rng rng(11);
    for (size_t n = 1; n <= 4; n++) {
        for (int trial = 0; trial < 200; trial++) {
            auto a = random_pauli(n, false, rng);
            auto b = random_pauli(n, false, rng);
            auto c = random_pauli(n, false, rng);
            a.log_i = (uint8_t)(rng() & 3);
            b.log_i = (uint8_t)(rng() & 3);
            auto ab = pauli_mul(a, b);
            EXPECT_LT((pauli_matrix(ab) - pauli_matrix(a) * pauli_matrix(b)).norm(), 1e-12);
            EXPECT_EQ(pauli_mul(ab, c), pauli_mul(a, pauli_mul(b, c)));
            auto ba = pauli_mul(b, a);
            EXPECT_EQ(commutes(a, b), ab == ba);
            EXPECT_TRUE(pauli_mul(a, a).is_identity_up_to_sign());
            EXPECT_LE(weight(ab), weight(a) + weight(b));
        }
    }
}

TEST(pauli, product_across_word_boundaries) {
    Rng rng(3);
    for (int trial = 0; trial < 50; trial++) {
        auto a = random_pauli(130, false, rng);
        auto b = random_pauli(130, false, rng);
        auto ab = pauli_mul(a, b);
        unsigned phase = 0;
        for (size_t q = 0; q < 130; q++) {
            PauliOp sa = PauliOp::single(1, 0, a.at(q));
            PauliOp sb = PauliOp::single(1, 0, b.at(q));
            auto s = pauli_mul(sa, sb);
            phase += s.log_i;
            EXPECT_EQ(s.at(0), ab.at(q));
        }
        EXPECT_EQ(ab.log_i, phase % 4);
    }
}

TEST(pauli, random_pauli_uniform) {
    Rng rng(2024);
    for (size_t n = 1; n <= 3; n++) {
        for (bool exclude : {true, false}) {
            std::map<std::string, double> counts;
            for (int k = 0; k < 100000; k++) {
                auto p = random_pauli(n, exclude, rng);
                EXPECT_EQ(p.log_i, 0);
                counts[format_pauli(p)] += 1;
            }
            size_t expected = (size_t{1} << (2 * n)) - (exclude ? 1 : 0);
            ASSERT_EQ(counts.size(), expected);
            if (exclude) {
                EXPECT_EQ(counts.count("+" + std::string(n, 'I')), 0u);
            }
            std::vector<double> c;
            for (auto &kv : counts) {
                c.push_back(kv.second);
            }
            EXPECT_GT(chi_square_uniform_pvalue(c), 0.001);
        }
    }
    EXPECT_THROW(random_pauli(0, true, rng), ValidationError);
}
