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

#include "twirlkit/circuit.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "random_circuits.test.h"
#include "twirlkit/bounds.h"
#include "twirlkit/errors.h"
#include "twirlkit/trotter.h"

using namespace twirlkit;
using namespace twirlkit::testing;

namespace {

std::shared_ptr<const NoiseModel> model(const PauliChannel &ch, TwirlMode mode = TwirlMode::None, size_t k = 0,
                                        double p_d = 0, bool exact = false,
                                        GadgetNoisePlacement placement = GadgetNoisePlacement::Both) {
    NoiseModelOptions o;
    o.mode = mode;
    o.k = k;
    o.p_d = p_d;
    o.exact_gadget_average = exact;
    o.placement = placement;
    return std::make_shared<NoiseModel>(ch, o);
}

double white_factor(size_t n, double p) {
    double d = std::pow(4.0, (double)n);
    return 1 - p * d / (d - 1);
}

}  // namespace

TEST(noise_model, modes_and_names) {
    for (auto m : {TwirlMode::None, TwirlMode::Full, TwirlMode::KSparse, TwirlMode::AnalyticFull,
                   TwirlMode::AnalyticKSparse}) {
        EXPECT_EQ(twirl_mode_from_name(twirl_mode_name(m)), m);
    }
    EXPECT_THROW(twirl_mode_from_name("sparse"), ValidationError);
    EXPECT_EQ(gadget_noise_placement_from_name("after_ddag"), GadgetNoisePlacement::AfterDdag);
    auto xy = make_single_qubit_pauli_noise(3, 0, 0.01, 0.01, 0);
    EXPECT_THROW(model(xy, TwirlMode::KSparse, 0), ValidationError);
    EXPECT_THROW(model(xy, TwirlMode::Full, 0, 1.5), ValidationError);
    EXPECT_THROW(model(make_white_noise(3, 0.1), TwirlMode::AnalyticFull), UnsupportedError);
    EXPECT_THROW(model(make_single_qubit_pauli_noise(3, 1, 0.01, 0, 0), TwirlMode::AnalyticFull), UnsupportedError);
    EXPECT_FALSE(model(xy, TwirlMode::Full, 0, 0, true)->is_sampled());
    EXPECT_TRUE(model(xy, TwirlMode::Full)->is_sampled());
    EXPECT_THROW(model(xy, TwirlMode::Full)->fidelity(parse_pauli("XII")), UnsupportedError);
}

TEST(noise_model, table_matches_channel_fidelity) {
    Rng rng(1);
    for (size_t n = 1; n <= 6; n++) {
        for (size_t trial = 0; trial < 5; trial++) {
            auto base = random_local_noise(n, rng);
            for (auto [mode, k] : std::vector<std::pair<TwirlMode, size_t>>{
                     {TwirlMode::None, 0}, {TwirlMode::AnalyticFull, 0}, {TwirlMode::AnalyticKSparse, 1 + trial % n}}) {
                auto m = model(base, mode, k);
                for (size_t s = 0; s < 20; s++) {
                    PauliOp p = random_pauli(n, false, rng);
                    EXPECT_NEAR(m->fidelity(p), pauli_fidelity(m->twirled(), p), 1e-14);
                }
                EXPECT_NEAR(m->strength(), avg_noise_strength(m->twirled()), 1e-12);
                EXPECT_NEAR(m->unitarity(), unitarity(m->twirled()), 1e-12);
            }
        }
    }
}

TEST(noise_model, exact_gadget_table_without_gadget_noise_is_analytic_twirl) {
    Rng rng(2);
    for (size_t n = 1; n <= 12; n++) {
        auto base = random_local_noise(n, rng);
        for (size_t k = 1; k <= n; k++) {
            auto exact = model(base, TwirlMode::KSparse, k, 0, true);
            auto analytic = model(base, TwirlMode::AnalyticKSparse, k);
            for (size_t c = 0; c < 4; c++) {
                for (size_t w = 0; w < n; w++) {
                    EXPECT_NEAR(exact->table()[c][w], analytic->table()[c][w], 1e-12) << n << " " << k;
                }
            }
        }
        auto full = model(base, TwirlMode::Full, 0, 0, true);
        auto afull = model(base, TwirlMode::AnalyticFull);
        for (size_t c = 0; c < 4; c++) {
            for (size_t w = 0; w < n; w++) {
                EXPECT_NEAR(full->table()[c][w], afull->table()[c][w], 1e-12);
            }
        }
        EXPECT_NEAR(full->strength(), afull->strength(), 1e-12);
    }
}

TEST(noise_model, exact_gadget_table_matches_enumeration) {
    Rng rng(3);
    for (size_t n = 1; n <= 4; n++) {
        auto base = random_local_noise(n, rng);
        for (auto placement : {GadgetNoisePlacement::Both, GadgetNoisePlacement::AfterD, GadgetNoisePlacement::AfterDdag}) {
            for (size_t k = 0; k <= n; k++) {
                TwirlMode mode = k == 0 ? TwirlMode::Full : TwirlMode::KSparse;
                auto sampled = model(base, mode, k, 0.07, false, placement);
                auto exact = model(base, mode, k, 0.07, true, placement);
                auto dist = enumerate_sampler_distribution(n, k == 0 ? SamplerMode::Full : SamplerMode::KSparse, k);
                for (size_t s = 0; s < 12; s++) {
                    PauliOp p = random_pauli(n, true, rng);
                    double avg = 0;
                    for (const auto &w : dist) {
                        avg += w.probability.convert_to<double>() * sampled->gadget_fidelity(p, w.gadget);
                    }
                    EXPECT_NEAR(exact->fidelity(p), avg, 1e-12) << n << " " << k << " " << format_pauli(p);
                }
            }
        }
    }
}

TEST(circuit_engine, single_layer_examples) {
    const size_t n = 3;
    auto base = make_single_qubit_pauli_noise(n, 0, 0.05, 0.02, 0.01);
    PauliOp axis = parse_pauli("YXI");
    LogicalCircuit c(n);
    c.add_rotation(axis, 0, model(base));
    Rng rng(4);
    auto w = gates_mapping_to_z0(axis);
    for (size_t s = 0; s < 20; s++) {
        PauliOp p = random_pauli(n, true, rng);
        PauliOp framed = p;
        conjugate_by_gates_inplace(framed, w);
        auto est = effective_fidelity(c, p, 1, rng);
        EXPECT_DOUBLE_EQ(est.mean, pauli_fidelity(base, framed));
        EXPECT_EQ(est.std_error, 0);
    }
    EXPECT_THROW(effective_fidelity(c, PauliOp(n), 1, rng), ValidationError);
    LogicalCircuit bad(n);
    bad.add_rotation(axis, 0.3, model(base));
    EXPECT_THROW(effective_fidelity(bad, parse_pauli("XII"), 1, rng), UnsupportedError);
    EXPECT_THROW(bad.add_rotation(PauliOp(n), 0, nullptr), ValidationError);
    EXPECT_THROW(bad.add_rotation(parse_pauli("XI"), 0, nullptr), DimensionError);
}

TEST(circuit_engine, white_noise_layers) {
    Rng rng(5);
    for (size_t n : {1, 2, 5}) {
        double p = 0.01;
        auto wn = model(make_white_noise(n, p));
        LogicalCircuit c(n);
        size_t layers = 7;
        for (size_t l = 0; l < layers; l++) {
            c.add_clifford(random_clifford(n, rng));
            c.add_rotation(random_pauli(n, true, rng), std::numbers::pi / 4, wn);
        }
        double expected = std::pow(white_factor(n, p), (double)layers);
        for (size_t s = 0; s < 10; s++) {
            EXPECT_NEAR(effective_fidelity(c, random_pauli(n, true, rng), 1, rng).mean, expected, 1e-14);
        }
        EXPECT_NEAR(optimal_rescale_coefficient(c), 1 / expected, 1e-12 / expected);
        auto bias = average_bias(c, 50, 1, 9);
        EXPECT_NEAR(bias.mean_bias, 0, 1e-12);
    }
}

TEST(circuit_engine, rescale_examples) {
    LogicalCircuit c(4);
    c.add_rotation(parse_pauli("XXII"), 0, model(make_identity_channel(4)));
    EXPECT_EQ(optimal_rescale_coefficient(c), 1);
    EXPECT_EQ(average_bias(c, 20, 1, 1).mean_bias, 0);

    const size_t n = 30;
    auto wn = model(make_white_noise(n, 1e-3));
    LogicalCircuit big(n);
    for (size_t l = 0; l < 1000; l++) {
        big.add_rotation(PauliOp::single(n, l % n, 'Z'), 0, wn);
    }
    EXPECT_NEAR(optimal_rescale_coefficient(big), std::exp(1.0), 0.01);
}

TEST(circuit_engine, noiseless_bias_is_zero) {
    HamiltonianModel m;
    m.kind = ModelKind::Heisenberg2D;
    m.lx = 2;
    m.ly = 2;
    auto c = build_trotter_circuit(m, 3, 0, true, nullptr);
    EXPECT_EQ(average_bias(c, 30, 1, 2).mean_bias, 0);
}

TEST(circuit_engine, multiplicativity) {
    Rng rng(6);
    for (size_t trial = 0; trial < 20; trial++) {
        size_t n = 2 + trial % 4;
        auto a = random_analytic_circuit(n, 8, rng);
        auto b = random_analytic_circuit(n, 8, rng);
        LogicalCircuit ab = a;
        ab.append(b);
        PauliOp p = random_pauli(n, true, rng);
        double fb = effective_fidelity(b, p, 1, rng).mean;
        double fa = effective_fidelity(a, heisenberg_image(b, p), 1, rng).mean;
        EXPECT_NEAR(effective_fidelity(ab, p, 1, rng).mean, fa * fb, 1e-14);
    }
}

TEST(circuit_engine, frame_independence) {
    Rng rng(7);
    for (size_t trial = 0; trial < 10; trial++) {
        size_t n = 2 + trial % 3;
        auto a = random_analytic_circuit(n, 6, rng);
        auto b = random_analytic_circuit(n, 6, rng);
        CliffordOp c = random_clifford(n, rng);
        LogicalCircuit plain = a;
        plain.append(b);
        LogicalCircuit framed = a;
        framed.add_clifford(c);
        framed.add_clifford(inverse(c));
        framed.append(b);
        EXPECT_DOUBLE_EQ(average_bias(plain, 40, 1, 3).mean_bias, average_bias(framed, 40, 1, 3).mean_bias);
    }
}

TEST(circuit_engine, twirl_does_not_increase_bias) {
    for (auto kind : {ModelKind::Heisenberg2D, ModelKind::TFIM2D}) {
        for (size_t side : {2, 3}) {
            HamiltonianModel m;
            m.kind = kind;
            m.lx = side;
            m.ly = side;
            size_t n = m.num_qubits();
            size_t steps = 10;
            double layers = (double)(hamiltonian_terms(m).size() * steps);
            auto base = make_single_qubit_pauli_noise(n, 0, 0.5 / layers, 0.5 / layers, 0);
            auto none = build_trotter_circuit(m, steps, 0, true, model(base));
            auto full = build_trotter_circuit(m, steps, 0, true, model(base, TwirlMode::AnalyticFull));
            EXPECT_LE(average_bias(full, 300, 1, 5).mean_bias, average_bias(none, 300, 1, 5).mean_bias);
        }
    }
}

TEST(circuit_engine, sampled_twirl_converges_to_analytic) {
    HamiltonianModel m;
    m.kind = ModelKind::Heisenberg1D;
    m.lx = 4;
    auto base = make_single_qubit_pauli_noise(4, 0, 0.02, 0.03, 0.0);
    Rng rng(8);
    for (auto [mode, amode, k] : std::vector<std::tuple<TwirlMode, TwirlMode, size_t>>{
             {TwirlMode::Full, TwirlMode::AnalyticFull, 0}, {TwirlMode::KSparse, TwirlMode::AnalyticKSparse, 2}}) {
        auto sampled = build_trotter_circuit(m, 2, 0, true, model(base, mode, k));
        auto analytic = build_trotter_circuit(m, 2, 0, true, model(base, amode, k));
        for (size_t s = 0; s < 5; s++) {
            PauliOp p = random_pauli(4, true, rng);
            auto est = effective_fidelity(sampled, p, 2000, rng);
            double exact = effective_fidelity(analytic, p, 1, rng).mean;
            EXPECT_GT(est.std_error, 0);
            EXPECT_LE(std::abs(est.mean - exact), 3 * est.std_error + 1e-12) << format_pauli(p);
        }
    }
}

TEST(circuit_engine, bias_is_thread_count_independent) {
    HamiltonianModel m;
    m.kind = ModelKind::Heisenberg2D;
    m.lx = 3;
    m.ly = 2;
    auto base = make_single_qubit_pauli_noise(6, 0, 0.01, 0.01, 0);
    auto c = build_trotter_circuit(m, 3, 0, true, model(base, TwirlMode::Full, 0, 0.001));
    auto one = average_bias(c, 40, 5, 77, 1);
    auto four = average_bias(c, 40, 5, 77, 4);
    EXPECT_EQ(one.mean_bias, four.mean_bias);
    EXPECT_EQ(one.std_error, four.std_error);
    EXPECT_NE(one.mean_bias, average_bias(c, 40, 5, 78, 1).mean_bias);
    EXPECT_THROW(average_bias(c, 0, 1, 1), ValidationError);
}

TEST(trotter, term_counts) {
    HamiltonianModel h1;
    h1.kind = ModelKind::Heisenberg1D;
    h1.lx = 4;
    EXPECT_EQ(build_trotter_circuit(h1, 1, 0.1, false, nullptr).num_rotation_layers(), 9u);
    HamiltonianModel h2;
    h2.kind = ModelKind::Heisenberg2D;
    h2.lx = 2;
    h2.ly = 2;
    auto c = build_trotter_circuit(h2, 100, 0.1, true, nullptr);
    EXPECT_EQ(c.num_rotation_layers(), 1200u);
    for (const auto &l : c.layers()) {
        EXPECT_DOUBLE_EQ(std::get<RotationLayer>(l).angle, std::numbers::pi / 4);
    }
    EXPECT_EQ(grid_bonds(3, 3).size(), 12u);
    EXPECT_EQ(grid_bonds(6, 6).size(), 60u);

    auto terms = hamiltonian_terms(h2);
    EXPECT_EQ(format_pauli(terms[0].pauli), "+XXII");
    EXPECT_EQ(format_pauli(terms[1].pauli), "+YYII");
    EXPECT_EQ(format_pauli(terms[2].pauli), "+ZZII");
    EXPECT_EQ(format_pauli(terms[3].pauli), "+IIXX");
    h2.term_order = TermOrder::ByPauli;
    terms = hamiltonian_terms(h2);
    EXPECT_EQ(format_pauli(terms[0].pauli), "+XXII");
    EXPECT_EQ(format_pauli(terms[4].pauli), "+YYII");
    EXPECT_EQ(format_pauli(terms[8].pauli), "+ZZII");

    HamiltonianModel t;
    t.kind = ModelKind::TFIM2D;
    t.lx = 3;
    t.ly = 2;
    t.field = 0.7;
    auto tt = hamiltonian_terms(t);
    EXPECT_EQ(tt.size(), 7u + 6u);
    EXPECT_EQ(tt.back().coefficient, 0.7);

    HamiltonianModel f;
    f.kind = ModelKind::FermiHubbard2D;
    f.lx = 2;
    f.ly = 2;
    f.hopping = 1;
    f.interaction = 2;
    f.term_order = TermOrder::ByPauli;
    auto ft = hamiltonian_terms(f);
    EXPECT_EQ(f.num_qubits(), 8u);
    EXPECT_EQ(ft.size(), 2u * 2 * 4 + 4 + 8);
    // Snake order on a 2x2 grid is 0,1,3,2, so the vertical bond (1,3) joins modes 1 and 2.
    EXPECT_EQ(format_pauli(ft[0].pauli), "+XXIIIIII");
    EXPECT_EQ(format_pauli(ft[2].pauli), "+XZZXIIII");
    EXPECT_EQ(format_pauli(ft[3].pauli), "+IXXIIIII");
    EXPECT_EQ(ft[0].coefficient, -0.5);
    EXPECT_EQ(format_pauli(ft[16].pauli), "+ZIIIZIII");
    EXPECT_EQ(ft[16].coefficient, 0.5);
    EXPECT_EQ(ft.back().coefficient, -0.5);
    f.term_order = TermOrder::ByBond;
    auto fb = hamiltonian_terms(f);
    ASSERT_EQ(fb.size(), ft.size());
    EXPECT_EQ(format_pauli(fb[0].pauli), "+XXIIIIII");
    EXPECT_EQ(format_pauli(fb[1].pauli), "+YYIIIIII");
    EXPECT_EQ(format_pauli(fb[4].pauli), "+XZZXIIII");

    EXPECT_THROW(build_trotter_circuit(h1, 0, 0.1, false, nullptr), ValidationError);
    EXPECT_EQ(model_kind_from_name("TFIM2D"), ModelKind::TFIM2D);
    EXPECT_THROW(model_kind_from_name("Ising"), ValidationError);
    EXPECT_EQ(term_order_from_name("by_pauli"), TermOrder::ByPauli);
    EXPECT_THROW(term_order_from_name("random"), ValidationError);
}

TEST(bounds, overheads) {
    double p_tot = 1;
    double layers = 1e6;
    EXPECT_NEAR(overhead_rescaling(p_tot / layers, layers, 64), std::exp(2.0), 0.01);
    EXPECT_NEAR(overhead_pec(p_tot / layers, layers), std::exp(4.0), 0.1);
    EXPECT_EQ(overhead_rescaling(0, 100, 5), 1);
    double prev = 1;
    for (double l = 1; l <= 1e4; l *= 2) {
        double r = overhead_rescaling(1e-3, l, 30);
        EXPECT_GE(r, overhead_lower_bound(1e-3, l, 30));
        EXPECT_GT(r, prev);
        prev = r;
    }
    EXPECT_LT(overhead_rescaling(1e-4, 100, 3), overhead_rescaling(1e-3, 100, 3));
    EXPECT_THROW(overhead_pec(1.0, 10), ValidationError);
    EXPECT_THROW(overhead_rescaling(0.9, 10, 1), ValidationError);
}

TEST(bounds, bias_bounds) {
    EXPECT_EQ(whitenoise_bias_bound(1, 1, 100, 4), 0);
    EXPECT_NEAR(distance_bias_bound(1 / std::sqrt(3.0), 1, 1200), 0.0167, 5e-5);
    EXPECT_THROW(whitenoise_bias_bound(0.5, 0, 1, 1), ValidationError);
    EXPECT_THROW(distance_bias_bound(1, 1, 0), ValidationError);
}

TEST(bounds, random_clifford_bias_below_bound) {
    const size_t n = 4;
    const size_t layers = 50;
    double p = 1.0 / layers;
    auto noise = model(make_single_qubit_pauli_noise(n, 0, p / 3, p / 3, p / 3));
    Rng rng(10);
    double sum = 0;
    const size_t draws = 200;
    double r = 0;
    for (size_t d = 0; d < draws; d++) {
        auto c = random_clifford_circuit(n, layers, noise, rng);
        r = optimal_rescale_coefficient(c);
        PauliOp p0 = random_pauli(n, true, rng);
        sum += std::abs(r * effective_fidelity(c, p0, 1, rng).mean - 1);
    }
    double bound = whitenoise_bias_bound(noise->strength(), noise->unitarity(), layers, n);
    EXPECT_LE(sum / draws, bound);
    EXPECT_NEAR(r, std::pow(noise->strength() / noise->unitarity(), (double)layers), 1e-9);
}
