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

#include "twirlkit/noise_model.h"

#include <cmath>

#include "twirlkit/errors.h"
#include "twirlkit/symmetric_twirl.h"

namespace twirlkit {

namespace {

size_t letter_index(const PauliOp &p, size_t q) {
    return (size_t)p.x(q) + 2 * (size_t)p.z(q);
}

long double log_binom(size_t n, size_t k) {
    return std::lgamma((long double)n + 1) - std::lgamma((long double)k + 1) - std::lgamma((long double)(n - k) + 1);
}

/// Distribution of the number of targets drawn by a sampler on n qubits.
std::vector<long double> target_size_distribution(size_t n, TwirlMode mode, size_t k) {
    size_t idle = n - 1;
    std::vector<long double> out(idle + 1, 0);
    size_t top = mode == TwirlMode::KSparse ? k - 1 : idle;
    long double total = 0;
    for (size_t j = 0; j <= top; j++) {
        out[j] = std::exp(log_binom(idle, j) + j * std::log(3.0L) - (long double)idle * std::log(4.0L));
        total += out[j];
    }
    for (auto &x : out) {
        x /= total;
    }
    return out;
}

}  // namespace

const char *twirl_mode_name(TwirlMode mode) {
    switch (mode) {
        case TwirlMode::None:
            return "none";
        case TwirlMode::Full:
            return "full";
        case TwirlMode::KSparse:
            return "ksparse";
        case TwirlMode::AnalyticFull:
            return "analytic_full";
        case TwirlMode::AnalyticKSparse:
            return "analytic_ksparse";
    }
    return "?";
}

TwirlMode twirl_mode_from_name(const std::string &name) {
    for (auto m : {TwirlMode::None, TwirlMode::Full, TwirlMode::KSparse, TwirlMode::AnalyticFull,
                   TwirlMode::AnalyticKSparse}) {
        if (name == twirl_mode_name(m)) {
            return m;
        }
    }
    throw ValidationError("Unknown twirl mode '" + name + "'.");
}

const char *gadget_noise_placement_name(GadgetNoisePlacement p) {
    switch (p) {
        case GadgetNoisePlacement::Both:
            return "both";
        case GadgetNoisePlacement::AfterD:
            return "after_d";
        case GadgetNoisePlacement::AfterDdag:
            return "after_ddag";
    }
    return "?";
}

GadgetNoisePlacement gadget_noise_placement_from_name(const std::string &name) {
    for (auto p : {GadgetNoisePlacement::Both, GadgetNoisePlacement::AfterD, GadgetNoisePlacement::AfterDdag}) {
        if (name == gadget_noise_placement_name(p)) {
            return p;
        }
    }
    throw ValidationError("Unknown gadget noise placement '" + name + "'.");
}

bool is_local_to_first_qubit(const PauliChannel &ch) {
    if (!ch.point_atoms_only()) {
        return false;
    }
    for (const auto &a : ch.atoms()) {
        PauliOp p = a.ensemble.point_value();
        if (weight(p) != 1 || p.at(0) == 'I') {
            return false;
        }
    }
    return true;
}

NoiseModel::NoiseModel(PauliChannel base, NoiseModelOptions options)
    : base_(std::move(base)), twirled_(base_), options_(options) {
    size_t n = base_.n();
    if (n == 0) {
        throw ValidationError("Noise model needs n >= 1.");
    }
    if (!(options_.p_d >= 0 && options_.p_d <= 1)) {
        throw ValidationError("Gadget noise rate must lie in [0, 1].");
    }
    bool ksparse = options_.mode == TwirlMode::KSparse || options_.mode == TwirlMode::AnalyticKSparse;
    if (ksparse && (options_.k < 1 || options_.k > n)) {
        throw ValidationError("k-sparse twirl needs 1 <= k <= n.");
    }
    bool local = is_local_to_first_qubit(base_);
    if (options_.mode != TwirlMode::None && !local) {
        throw UnsupportedError("Twirled noise models need single-qubit Point noise on qubit 0.");
    }
    switch (options_.mode) {
        case TwirlMode::None:
            break;
        case TwirlMode::Full:
        case TwirlMode::AnalyticFull:
            twirled_ = twirl_channel(base_, SymmetrySpec::rz_first_qubit(n));
            break;
        case TwirlMode::KSparse:
        case TwirlMode::AnalyticKSparse:
            twirled_ = twirl_channel_ksparse(base_, options_.k);
            break;
    }
    if (options_.mode == TwirlMode::Full || options_.mode == TwirlMode::KSparse) {
        build_gadget_table();
        set_strength_from_table();
    } else if (local) {
        build_table_from_channel(twirled_);
        set_strength_from_table();
    } else {
        s_ = avg_noise_strength(twirled_);
        u_ = twirlkit::unitarity(twirled_);
    }
    if (u_ <= 0) {
        throw ValidationError("Degenerate noise layer: unitarity is zero.");
    }
}

bool NoiseModel::is_sampled() const {
    return (options_.mode == TwirlMode::Full || options_.mode == TwirlMode::KSparse) &&
           !options_.exact_gadget_average;
}

void NoiseModel::build_table_from_channel(const PauliChannel &ch) {
    size_t n = ch.n();
    table_.assign(4, std::vector<double>(n, 0));
    for (size_t c = 0; c < 4; c++) {
        for (size_t w = 0; w < n; w++) {
            PauliOp rep(n);
            rep.set(0, c & 1, c >> 1);
            for (size_t q = 1; q <= w; q++) {
                rep.set(q, 'X');
            }
            table_[c][w] = pauli_fidelity(ch, rep);
        }
    }
}

void NoiseModel::build_gadget_table() {
    size_t n = base_.n();
    size_t idle = n - 1;
    double lam[4];
    for (size_t c = 0; c < 4; c++) {
        PauliOp p(n);
        p.set(0, c & 1, c >> 1);
        lam[c] = pauli_fidelity(base_, p);
    }
    long double dep = 1 - 4 * (long double)options_.p_d / 3;
    long double cp = options_.placement != GadgetNoisePlacement::AfterD ? dep : 1;
    long double cq = options_.placement != GadgetNoisePlacement::AfterDdag ? dep : 1;
    auto sizes = target_size_distribution(n, options_.mode, options_.k);
    table_.assign(4, std::vector<double>(n, 0));
    for (size_t c = 0; c < 4; c++) {
        bool x0 = c & 1;
        bool z0 = c >> 1;
        long double a = x0 ? (2 * cq + 1) / 3 : cq;
        long double b = x0 ? (1 - 2 * cq) / 3 : -cq / 3;
        for (size_t w = 0; w <= idle; w++) {
            long double total = 0;
            for (size_t kp = 0; kp <= idle; kp++) {
                if (sizes[kp] == 0) {
                    continue;
                }
                size_t jlo = kp + w > idle ? kp + w - idle : 0;
                size_t jhi = std::min(kp, w);
                for (size_t j = jlo; j <= jhi; j++) {
                    long double hyper =
                        std::exp(log_binom(w, j) + log_binom(idle - w, kp - j) - log_binom(idle, kp));
                    long double aj = std::pow(a, (long double)j);
                    long double bj = std::pow(b, (long double)j);
                    long double parity_weight[2] = {(aj + bj) / 2, (aj - bj) / 2};
                    long double q0_part = 0;
                    for (int s = 0; s < 2; s++) {
                        bool q0_supported = s || kp > 0;
                        for (int par = 0; par < 2; par++) {
                            bool z1 = z0 ^ (s && x0) ^ par;
                            size_t c1 = (size_t)x0 + 2 * (size_t)z1;
                            long double v = parity_weight[par] * lam[c1];
                            if (q0_supported) {
                                if (c != 0) {
                                    v *= cp;
                                }
                                if (c1 != 0) {
                                    v *= cq;
                                }
                            }
                            q0_part += v / 2;
                        }
                    }
                    long double targets = std::pow(cp, (long double)j) *
                                          std::pow(cq, (long double)(x0 ? kp - j : 0));
                    total += sizes[kp] * hyper * targets * q0_part;
                }
            }
            table_[c][w] = (double)total;
        }
    }
}

void NoiseModel::set_strength_from_table() {
    size_t n = base_.n();
    size_t idle = n - 1;
    long double sum_s = 0;
    long double sum_u = 0;
    for (size_t w = 0; w <= idle; w++) {
        long double frac = std::exp(log_binom(idle, w) + w * std::log(3.0L) - (long double)n * std::log(4.0L));
        for (size_t c = 0; c < 4; c++) {
            long double l = table_[c][w];
            sum_s += frac * l;
            sum_u += frac * l * l;
        }
    }
    long double inv4n = std::ldexp(1.0L, -2 * (int)std::min<size_t>(n, 8000));
    s_ = (double)((sum_s - inv4n) / (1 - inv4n));
    u_ = (double)((sum_u - inv4n) / (1 - inv4n));
}

double NoiseModel::fidelity(const PauliOp &p) const {
    if (is_sampled()) {
        throw UnsupportedError("Sampled noise models have no deterministic fidelity.");
    }
    if (p.is_identity_up_to_sign()) {
        return 1;
    }
    if (table_.empty()) {
        return pauli_fidelity(twirled_, p);
    }
    size_t c = letter_index(p, 0);
    return table_[c][weight(p) - (c != 0)];
}

double NoiseModel::gadget_fidelity(const PauliOp &p, const TwirlGadget &gadget) const {
    PauliOp q1 = p;
    conjugate_by_gates_inplace(q1, gadget.gates);
    double dep = 1 - 4 * options_.p_d / 3;
    double cp = options_.placement != GadgetNoisePlacement::AfterD ? dep : 1;
    double cq = options_.placement != GadgetNoisePlacement::AfterDdag ? dep : 1;
    double f = pauli_fidelity(base_, q1);
    for (size_t q : gadget.support) {
        if (p.x(q) || p.z(q)) {
            f *= cp;
        }
        if (q1.x(q) || q1.z(q)) {
            f *= cq;
        }
    }
    return f;
}

TwirlGadget NoiseModel::sample_gadget(Rng &rng) const {
    if (options_.mode == TwirlMode::Full) {
        return sample_full_twirl_gate(n(), rng);
    }
    if (options_.mode == TwirlMode::KSparse) {
        return sample_ksparse_twirl_gate(n(), options_.k, rng);
    }
    throw UnsupportedError("Only sampled twirl modes draw gadgets.");
}

}  // namespace twirlkit
