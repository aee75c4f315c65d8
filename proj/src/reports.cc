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

#include "twirlkit/reports.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "twirlkit/bounds.h"
#include "twirlkit/budget.h"
#include "twirlkit/errors.h"
#include "twirlkit/symmetric_twirl.h"

namespace twirlkit {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string num(size_t x) {
    return std::to_string(x);
}

std::vector<size_t> size_list(const Json &a) {
    return a.get<std::vector<size_t>>();
}

size_t layer_count(const HamiltonianModel &m, size_t steps) {
    return hamiltonian_terms(m).size() * steps;
}

CsvTable twirl_verify(const Json &cfg, const std::string &hash) {
    CsvTable t;
    t.header = {"config_hash", "n", "mode", "k", "error", "max_discrepancy", "fixed_point"};
    size_t n = cfg["n"].get<size_t>();
    bool sparse = cfg["mode"] == "ksparse";
    size_t k = sparse ? cfg["k"].get<size_t>() : 0;
    for (const auto &e : cfg["errors"]) {
        char c = e.get<std::string>()[0];
        auto r = verify_sampler_twirl(n, sparse ? SamplerMode::KSparse : SamplerMode::Full, k, c);
        t.rows.push_back({hash, num(n), sparse ? "ksparse" : "full", num(k), std::string(1, c),
                          r.max_discrepancy.str(), r.fixed_point ? "true" : "false"});
    }
    return t;
}

CsvTable bias_scan(const Json &cfg, const std::string &hash, const RunOptions &o, bool gadget) {
    CsvTable t;
    t.header = {"config_hash", "model", "side", "n", "layers", "p_err", "mode", "k"};
    if (gadget) {
        t.header.push_back("ratio");
    }
    for (const char *h : {"p_d", "placement", "mean_bias", "std_error", "rescale"}) {
        t.header.push_back(h);
    }
    size_t steps = cfg["steps"].get<size_t>();
    std::vector<double> ratios = gadget ? cfg["ratios"].get<std::vector<double>>() : std::vector<double>{0};
    for (size_t side : size_list(cfg["model"]["sides"])) {
        HamiltonianModel m = model_from_config(cfg["model"], side);
        size_t n = m.num_qubits();
        size_t layers = layer_count(m, steps);
        double p_err = cfg["p_tot"].get<double>() / (double)layers;
        PauliChannel base = noise_from_config(cfg["noise"], n, p_err);
        for (double ratio : ratios) {
            for (const auto &tw : cfg["twirls"]) {
                NoiseModelOptions opts = twirl_from_config(tw);
                if (gadget) {
                    opts.p_d = ratio * p_err;
                }
                auto noise = std::make_shared<NoiseModel>(base, opts);
                auto c = build_trotter_circuit(m, steps, cfg["dt"].get<double>(), cfg["clifford_sim"].get<bool>(), noise);
                auto b = average_bias(c, cfg["num_paulis"].get<size_t>(), cfg["shots"].get<size_t>(), o.seed, o.threads);
                std::vector<std::string> row = {hash, model_kind_name(m.kind), num(side), num(n), num(layers), num(p_err),
                                                twirl_mode_name(opts.mode), num(opts.k)};
                if (gadget) {
                    row.push_back(num(ratio));
                }
                for (const auto &cell : {num(opts.p_d), std::string(gadget_noise_placement_name(opts.placement)),
                                         num(b.mean_bias), num(b.std_error), num(b.rescale)}) {
                    row.push_back(cell);
                }
                t.rows.push_back(row);
            }
        }
    }
    return t;
}

CsvTable overhead(const Json &cfg, const std::string &hash) {
    CsvTable t;
    t.header = {"config_hash", "n", "p_err", "layers", "p_tot", "rescaling", "pec", "lower_bound"};
    double p = cfg["p_err"].get<double>();
    size_t n = cfg["n"].get<size_t>();
    for (double l : cfg["layers"].get<std::vector<double>>()) {
        t.rows.push_back({hash, num(n), num(p), num(l), num(p * l), num(overhead_rescaling(p, l, n)),
                          num(overhead_pec(p, l)), num(overhead_lower_bound(p, l, n))});
    }
    return t;
}

CsvTable wn_bound(const Json &cfg, const std::string &hash, const RunOptions &o) {
    CsvTable t;
    t.header = {"config_hash", "n", "layers", "p_tot", "mean_bias", "std_error", "rescale", "bound", "distance_bound"};
    size_t n = cfg["n"].get<size_t>();
    double p_tot = cfg["p_tot"].get<double>();
    for (size_t l : size_list(cfg["layers"])) {
        auto r = white_noise_bias_run(cfg["noise"], n, l, p_tot, cfg["draws"].get<size_t>(), o.seed, o.threads);
        t.rows.push_back({hash, num(n), num(l), num(p_tot), num(r.bias.mean), num(r.bias.std_error), num(r.rescale),
                          num(r.bound), num(r.distance_bound)});
    }
    return t;
}

CsvTable figs2(const Json &cfg, const std::string &hash, const RunOptions &o) {
    CsvTable t;
    t.header = {"config_hash", "n", "steps", "theta", "trace_distance", "trace_std_error", "tv_distance", "tv_std_error"};
    DistanceScanOptions opts;
    opts.theta = cfg["theta"].get<double>();
    opts.p_tot = cfg["p_tot"].get<double>();
    opts.num_inputs = cfg["num_inputs"].get<size_t>();
    opts.num_bases = cfg["num_bases"].get<size_t>();
    opts.bases = cfg["bases"] == "haar" ? BasisEnsemble::Haar : BasisEnsemble::Clifford;
    for (const auto &r : run_distance_scan(size_list(cfg["n_list"]), size_list(cfg["steps_list"]), opts, o.seed)) {
        t.rows.push_back({hash, num(r.n), num(r.steps), num(r.theta), num(r.trace_distance.mean),
                          num(r.trace_distance.std_error), num(r.tv_distance.mean), num(r.tv_distance.std_error)});
    }
    return t;
}

CsvTable budget(const Json &cfg, const std::string &hash) {
    BudgetInput b;
    b.p_phys = cfg["p_phys"].get<double>();
    b.p_th = cfg["p_th"].get<double>();
    b.d = cfg["d"].get<uint64_t>();
    b.volume = cfg["V"].get<double>();
    b.p_dis = cfg["p_dis"].get<double>();
    b.n_t = cfg["n_T"].get<double>();
    b.p_rot = cfg["p_rot"].get<double>();
    b.n_rot = cfg["N_rot"].get<double>();
    auto r = error_budget(b);
    CsvTable t;
    t.header = {"config_hash", "p_dec", "N_dec", "N_dis", "N_syn", "N_err"};
    t.rows.push_back({hash, num(r.p_dec), num(r.n_dec), num(r.n_dis), num(r.n_syn), num(r.n_err)});
    return t;
}

}  // namespace

std::string CsvTable::str() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); i++) {
            out << (i ? "," : "") << cells[i];
        }
        out << "\n";
    };
    line(header);
    for (const auto &r : rows) {
        line(r);
    }
    return out.str();
}

PauliChannel noise_from_config(const Json &noise, size_t n, double p_err) {
    std::string kind = noise["kind"].get<std::string>();
    double wx = 0, wy = 0, wz = 0;
    if (kind == "none") {
        return make_identity_channel(n);
    } else if (kind == "xy") {
        wx = wy = 0.5;
    } else if (kind == "z") {
        wz = 1;
    } else if (kind == "depolarizing") {
        wx = wy = wz = 1.0 / 3;
    } else if (kind == "custom") {
        wx = noise.value("px", 0.0);
        wy = noise.value("py", 0.0);
        wz = noise.value("pz", 0.0);
        double total = wx + wy + wz;
        if (!(total > 0)) {
            throw ConfigError("/noise", "custom noise needs a positive weight.");
        }
        wx /= total;
        wy /= total;
        wz /= total;
    } else {
        throw ConfigError("/noise/kind", "unknown noise kind '" + kind + "'.");
    }
    return make_single_qubit_pauli_noise(n, 0, wx * p_err, wy * p_err, wz * p_err);
}

HamiltonianModel model_from_config(const Json &model, size_t side) {
    HamiltonianModel m;
    m.kind = model_kind_from_name(model["kind"].get<std::string>());
    m.lx = side;
    m.ly = m.kind == ModelKind::Heisenberg1D ? 1 : side;
    m.coupling = model.value("coupling", 1.0);
    m.field = model.value("field", 1.0);
    m.hopping = model.value("hopping", 1.0);
    m.interaction = model.value("interaction", 1.0);
    m.term_order = term_order_from_name(model.value("term_order", std::string("by_bond")));
    return m;
}

NoiseModelOptions twirl_from_config(const Json &twirl) {
    NoiseModelOptions o;
    o.mode = twirl_mode_from_name(twirl["mode"].get<std::string>());
    o.k = twirl.value("k", size_t{0});
    o.p_d = twirl.value("p_d", 0.0);
    o.placement = gadget_noise_placement_from_name(twirl.value("placement", std::string("both")));
    o.exact_gadget_average = twirl.value("exact_gadget_average", false);
    return o;
}

SamplerCheck verify_sampler_twirl(size_t n, SamplerMode mode, size_t k, char error) {
    if (n > 4) {
        throw CapExceededError("Sampler enumeration is limited to n <= 4.");
    }
    SamplerCheck out;
    out.n = n;
    out.mode = mode;
    out.k = k;
    out.error = error;
    PauliOp e = PauliOp::single(n, 0, error);
    auto avg = average_twirled_error(enumerate_sampler_distribution(n, mode, k), e);
    PauliChannel ch(n, {{1.0, PauliEnsemble::point(e)}});
    auto exact = expand_rational(
        mode == SamplerMode::Full ? twirl_channel(ch, SymmetrySpec::rz_first_qubit(n)) : twirl_channel_ksparse(ch, k),
        {Rational(1)});
    std::map<PauliOp, Rational> diff = exact;
    for (const auto &[p, q] : avg) {
        diff[p] -= q;
    }
    out.max_discrepancy = 0;
    for (const auto &[p, q] : diff) {
        Rational a = q < 0 ? Rational(-q) : q;
        if (a > out.max_discrepancy) {
            out.max_discrepancy = a;
        }
    }
    out.fixed_point = avg == std::map<PauliOp, Rational>{{e, Rational(1)}};
    return out;
}

WhiteNoiseBiasRow white_noise_bias_run(const Json &noise, size_t n, size_t layers, double p_tot, size_t draws,
                                       uint64_t seed, size_t threads) {
    if (layers == 0 || draws == 0) {
        throw ValidationError("layers and draws must be at least 1.");
    }
    PauliChannel ch = noise_from_config(noise, n, p_tot / (double)layers);
    auto model = std::make_shared<NoiseModel>(ch);
    std::vector<double> bias(draws);
    double rescale = 1;
    for (size_t l = 0; l < layers; l++) {
        rescale *= model->strength() / model->unitarity();
    }
    parallel_for(draws, threads, [&](size_t d) {
        Rng rng = derived_rng(seed, d, layers);
        LogicalCircuit c = random_clifford_circuit(n, layers, model, rng);
        PauliOp p = random_pauli(n, true, rng);
        bias[d] = std::abs(rescale * std::abs(effective_fidelity(c, p, 1, rng).mean) - 1);
    });
    WhiteNoiseBiasRow row;
    row.n = n;
    row.layers = layers;
    row.bias = mean_estimate(bias);
    row.rescale = rescale;
    row.bound = whitenoise_bias_bound(model->strength(), model->unitarity(), (double)layers, n);
    row.distance_bound = distance_bias_bound(distance_v(ch), p_tot, (double)layers);
    return row;
}

std::string run_config_hash(const Json &config, uint64_t seed) {
    Json hashed = config;
    hashed["seed"] = seed;
    hashed.erase("threads");
    return config_hash(hashed);
}

CsvTable run_subcommand(const std::string &subcommand, const Json &config, const RunOptions &options) {
    std::string hash = run_config_hash(config, options.seed);
    if (subcommand == "twirl-verify") {
        return twirl_verify(config, hash);
    }
    if (subcommand == "bias-scan") {
        return bias_scan(config, hash, options, false);
    }
    if (subcommand == "gadget-scan") {
        return bias_scan(config, hash, options, true);
    }
    if (subcommand == "overhead") {
        return overhead(config, hash);
    }
    if (subcommand == "wn-bound") {
        return wn_bound(config, hash, options);
    }
    if (subcommand == "figs2") {
        return figs2(config, hash, options);
    }
    if (subcommand == "budget") {
        return budget(config, hash);
    }
    throw ValidationError("Unknown subcommand: " + subcommand);
}

}  // namespace twirlkit
