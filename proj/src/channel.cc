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

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

constexpr size_t kMaxCellAtoms = 20;

long double nonidentity_count(size_t n) {
    return std::ldexp(1.0L, (int)(2 * n)) - 1.0L;
}

void require_errors(const PauliChannel &ch) {
    if (ch.p_err() <= 0) {
        throw ValidationError("Distance is undefined for a channel with p_err = 0.");
    }
}

}  // namespace

PauliChannel::PauliChannel(size_t n, std::vector<ChannelAtom> atoms) : n_(n) {
    double total = 0;
    for (auto &a : atoms) {
        if (!(a.prob >= 0) || a.prob > 1) {
            throw ValidationError("Atom probability " + std::to_string(a.prob) + " outside [0, 1].");
        }
        if (a.prob == 0) {
            continue;
        }
        if (a.ensemble.n() != n) {
            throw DimensionError("Atom ensemble acts on the wrong number of qubits.");
        }
        if (a.ensemble.contains_identity()) {
            throw ValidationError("Atom ensemble contains the identity.");
        }
        total += a.prob;
        atoms_.push_back(std::move(a));
    }
    if (total > 1 + 1e-12) {
        throw ValidationError("Atom probabilities sum to " + std::to_string(total) + " > 1.");
    }
    p_err_ = std::min(total, 1.0);
    identity_prob_ = 1 - p_err_;
}

bool PauliChannel::point_atoms_only() const {
    for (const auto &a : atoms_) {
        if (!a.ensemble.is_point()) {
            return false;
        }
    }
    return true;
}

PauliChannel make_identity_channel(size_t n) {
    return PauliChannel(n, {});
}

PauliChannel make_single_qubit_pauli_noise(size_t n, size_t target_qubit, double px, double py, double pz) {
    if (px < 0 || py < 0 || pz < 0) {
        throw ValidationError("Pauli error probabilities must be nonnegative.");
    }
    if (px + py + pz > 1 + 1e-12) {
        throw ValidationError("Pauli error probabilities sum to more than 1.");
    }
    if (target_qubit >= n) {
        throw DimensionError("Target qubit out of range.");
    }
    std::vector<ChannelAtom> atoms;
    const std::pair<char, double> parts[3] = {{'X', px}, {'Y', py}, {'Z', pz}};
    for (auto [c, p] : parts) {
        if (p > 0) {
            atoms.push_back({p, PauliEnsemble::point(PauliOp::single(n, target_qubit, c))});
        }
    }
    return PauliChannel(n, std::move(atoms));
}

PauliChannel make_white_noise(size_t n, double p_err) {
    if (p_err < 0 || p_err > 1) {
        throw ValidationError("White noise probability outside [0, 1].");
    }
    std::vector<size_t> all(n);
    for (size_t q = 0; q < n; q++) {
        all[q] = q;
    }
    std::vector<ChannelAtom> atoms;
    atoms.push_back({p_err, PauliEnsemble(n, {EnsembleFactor::full_group_minus_identity(all)})});
    return PauliChannel(n, std::move(atoms));
}

double ensemble_mean_chi(const PauliEnsemble &e, const PauliOp &p) {
    return e.mean_chi(p);
}

double pauli_fidelity(const PauliChannel &ch, const PauliOp &p) {
    if (p.n != ch.n()) {
        throw DimensionError("Pauli and channel sizes differ.");
    }
    if (p.is_identity_up_to_sign()) {
        return 1;
    }
    double f = ch.identity_prob();
    for (const auto &a : ch.atoms()) {
        f += a.prob * a.ensemble.mean_chi(p);
    }
    return f;
}

std::vector<ProbabilityCell> probability_cells(const PauliChannel &ch) {
    // Identical ensembles are merged first so the inclusion-exclusion runs over distinct sets.
    std::map<std::string, size_t> index;
    std::vector<const PauliEnsemble *> sets;
    std::vector<double> probs;
    for (const auto &a : ch.atoms()) {
        auto key = a.ensemble.key();
        auto it = index.find(key);
        if (it == index.end()) {
            index[key] = sets.size();
            sets.push_back(&a.ensemble);
            probs.push_back(a.prob);
        } else {
            probs[it->second] += a.prob;
        }
    }
    size_t m = sets.size();
    if (m > kMaxCellAtoms) {
        throw CapExceededError("Too many distinct atoms for the overlap decomposition.");
    }
    std::vector<long double> density(m);
    for (size_t k = 0; k < m; k++) {
        density[k] = (long double)(probs[k] / ch.p_err()) / to_long_double(sets[k]->cardinality());
    }
    size_t full = size_t{1} << m;
    // exact[S] starts as |∩_{a∈S} E_a| and becomes the count of Paulis in exactly the sets of S.
    std::vector<BigInt> exact(full, BigInt(0));
    for (size_t s = 1; s < full; s++) {
        std::vector<const PauliEnsemble *> chosen;
        for (size_t k = 0; k < m; k++) {
            if (s >> k & 1) {
                chosen.push_back(sets[k]);
            }
        }
        exact[s] = chosen.size() == 1 ? chosen[0]->cardinality() : intersection_cardinality(chosen);
    }
    for (size_t k = 0; k < m; k++) {
        for (size_t s = 1; s < full; s++) {
            if (!(s >> k & 1)) {
                exact[s] -= exact[s | (size_t{1} << k)];
            }
        }
    }
    std::vector<ProbabilityCell> cells;
    for (size_t s = 1; s < full; s++) {
        if (exact[s] == 0) {
            continue;
        }
        long double v = 0;
        for (size_t k = 0; k < m; k++) {
            if (s >> k & 1) {
                v += density[k];
            }
        }
        cells.push_back({exact[s], v});
    }
    return cells;
}

double sum_squared_error_probs(const PauliChannel &ch) {
    long double total = 0;
    for (const auto &c : probability_cells(ch)) {
        long double each = c.share_each * (long double)ch.p_err();
        total += to_long_double(c.count) * each * each;
    }
    return (double)total;
}

double distance_v(const PauliChannel &ch) {
    require_errors(ch);
    long double nonid = nonidentity_count(ch.n());
    long double uniform = 1.0L / nonid;
    long double covered = 0;
    long double total = 0;
    for (const auto &c : probability_cells(ch)) {
        long double count = to_long_double(c.count);
        long double d = c.share_each - uniform;
        total += count * d * d;
        covered += count;
    }
    total += (nonid - covered) * uniform * uniform;
    return (double)std::sqrt(std::max(total, 0.0L));
}

double diamond_distance_normalized(const PauliChannel &ch) {
    require_errors(ch);
    long double nonid = nonidentity_count(ch.n());
    long double uniform = 1.0L / nonid;
    long double covered = 0;
    long double total = 0;
    for (const auto &c : probability_cells(ch)) {
        long double count = to_long_double(c.count);
        total += count * std::fabs(c.share_each - uniform);
        covered += count;
    }
    total += (nonid - covered) * uniform;
    return (double)total;
}

double unitarity(const PauliChannel &ch) {
    long double nonid = nonidentity_count(ch.n());
    long double ratio = (nonid + 1) / nonid;
    long double p = ch.p_err();
    long double sq = ch.atoms().empty() ? 0.0L : (long double)sum_squared_error_probs(ch);
    return (double)(1 - ratio * 2 * p + ratio * (p * p + sq));
}

double avg_noise_strength(const PauliChannel &ch) {
    long double nonid = nonidentity_count(ch.n());
    return (double)(1 - (nonid + 1) / nonid * (long double)ch.p_err());
}

std::optional<PauliOp> sample_error(const PauliChannel &ch, Rng &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    double r = u(rng);
    if (r < ch.identity_prob() || ch.atoms().empty()) {
        return std::nullopt;
    }
    r -= ch.identity_prob();
    for (const auto &a : ch.atoms()) {
        if (r < a.prob) {
            return a.ensemble.sample(rng);
        }
        r -= a.prob;
    }
    return ch.atoms().back().ensemble.sample(rng);
}

std::map<PauliOp, double> expand(const PauliChannel &ch, size_t max_qubits) {
    if (ch.n() > max_qubits) {
        throw CapExceededError(
            "expand refuses " + std::to_string(ch.n()) + " qubits (cap " + std::to_string(max_qubits) + ").");
    }
    std::map<PauliOp, double> out;
    out[PauliOp(ch.n())] = ch.identity_prob();
    for (const auto &a : ch.atoms()) {
        auto members = a.ensemble.members();
        double each = a.prob / (double)members.size();
        for (const auto &m : members) {
            out[m] += each;
        }
    }
    return out;
}

}  // namespace twirlkit
