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

#include "twirlkit/ensemble.h"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <set>

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

using boost::multiprecision::cpp_rational;

constexpr size_t kEnumerationFallbackMaxQubits = 8;

std::vector<size_t> checked_register(std::vector<size_t> qubits, const char *what) {
    if (qubits.empty()) {
        throw ValidationError(std::string(what) + " factor needs a nonempty register.");
    }
    std::set<size_t> seen(qubits.begin(), qubits.end());
    if (seen.size() != qubits.size()) {
        throw ValidationError(std::string(what) + " factor register repeats a qubit.");
    }
    return qubits;
}

BigInt pow4(size_t m) {
    return BigInt(1) << (2 * m);
}

bool parity(uint64_t v) {
    return std::popcount(v) & 1;
}

/// Coefficients of prod over qubits of (a + b x), truncated past degree w.
std::vector<BigInt> truncated_product(const std::vector<std::pair<int, int>> &terms, size_t w) {
    std::vector<BigInt> poly(1, BigInt(1));
    for (auto [a, b] : terms) {
        std::vector<BigInt> next(std::min(poly.size() + 1, w + 1), BigInt(0));
        for (size_t j = 0; j < poly.size(); j++) {
            next[j] += poly[j] * a;
            if (j + 1 < next.size()) {
                next[j + 1] += poly[j] * b;
            }
        }
        poly = std::move(next);
    }
    return poly;
}

std::shared_ptr<const std::vector<double>> weight_chi_table(size_t m, size_t w) {
    static std::mutex mu;
    static std::map<std::pair<size_t, size_t>, std::shared_ptr<const std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, w);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    BigInt card = weight_at_most_count(m, w);
    auto table = std::make_shared<std::vector<double>>(m + 1);
    for (size_t a = 0; a <= m; a++) {
        // On a qubit where the query is nontrivial the three nonidentity choices contribute 1 - 2 = -1;
        // elsewhere all three commute.
        std::vector<std::pair<int, int>> terms;
        for (size_t q = 0; q < m; q++) {
            terms.push_back(q < a ? std::make_pair(1, -1) : std::make_pair(1, 3));
        }
        BigInt total = 0;
        for (const auto &c : truncated_product(terms, w)) {
            total += c;
        }
        (*table)[a] = cpp_rational(total, card).convert_to<double>();
    }
    cache[key] = table;
    return table;
}

/// All Paulis on the listed qubits (embedded into n qubits) selected by `keep(local)`.
template <typename F>
std::vector<PauliOp> enumerate_register(size_t n, const std::vector<size_t> &qubits, F keep) {
    size_t m = qubits.size();
    if (m > 12) {
        throw CapExceededError("Register of " + std::to_string(m) + " qubits is too large to enumerate.");
    }
    std::vector<PauliOp> out;
    PauliOp local(m);
    for (uint64_t idx = 0; idx < (uint64_t{1} << (2 * m)); idx++) {
        for (size_t j = 0; j < m; j++) {
            local.set(j, (idx >> (2 * j)) & 1, (idx >> (2 * j + 1)) & 1);
        }
        if (!keep(local)) {
            continue;
        }
        PauliOp full(n);
        for (size_t j = 0; j < m; j++) {
            full.set(qubits[j], local.x(j), local.z(j));
        }
        out.push_back(std::move(full));
    }
    return out;
}

bool same_frame(const std::shared_ptr<const Frame> &a, const std::shared_ptr<const Frame> &b, size_t n) {
    if (a == b) {
        return true;
    }
    CliffordOp ia = a ? a->op : CliffordOp(n);
    CliffordOp ib = b ? b->op : CliffordOp(n);
    for (size_t q = 0; q < n; q++) {
        if (!ia.image_x[q].same_bits(ib.image_x[q]) || !ia.image_z[q].same_bits(ib.image_z[q])) {
            return false;
        }
    }
    return true;
}

}  // namespace

const char *factor_kind_name(FactorKind kind) {
    switch (kind) {
        case FactorKind::Point:
            return "Point";
        case FactorKind::FullGroup:
            return "FullGroup";
        case FactorKind::FullGroupMinusIdentity:
            return "FullGroupMinusIdentity";
        case FactorKind::DiagonalIZ:
            return "DiagonalIZ";
        case FactorKind::XYSet:
            return "XYSet";
        case FactorKind::WeightAtMost:
            return "WeightAtMost";
    }
    return "?";
}

FactorKind factor_kind_from_name(const std::string &name) {
    for (FactorKind k : {FactorKind::Point, FactorKind::FullGroup, FactorKind::FullGroupMinusIdentity,
                         FactorKind::DiagonalIZ, FactorKind::XYSet, FactorKind::WeightAtMost}) {
        if (name == factor_kind_name(k)) {
            return k;
        }
    }
    throw ValidationError("Unknown ensemble factor kind '" + name + "'.");
}

EnsembleFactor EnsembleFactor::point(std::vector<size_t> qubits, PauliOp p) {
    EnsembleFactor f;
    f.kind = FactorKind::Point;
    f.qubits = checked_register(std::move(qubits), "Point");
    if (p.n != f.qubits.size()) {
        throw DimensionError("Point factor Pauli does not match its register size.");
    }
    f.local = p.unsigned_copy();
    return f;
}

EnsembleFactor EnsembleFactor::full_group(std::vector<size_t> qubits) {
    EnsembleFactor f;
    f.kind = FactorKind::FullGroup;
    f.qubits = checked_register(std::move(qubits), "FullGroup");
    f.local = PauliOp(f.qubits.size());
    return f;
}

EnsembleFactor EnsembleFactor::full_group_minus_identity(std::vector<size_t> qubits) {
    EnsembleFactor f = full_group(std::move(qubits));
    f.kind = FactorKind::FullGroupMinusIdentity;
    return f;
}

EnsembleFactor EnsembleFactor::diagonal_iz(std::vector<size_t> qubits) {
    EnsembleFactor f = full_group(std::move(qubits));
    f.kind = FactorKind::DiagonalIZ;
    return f;
}

EnsembleFactor EnsembleFactor::diagonal_iz_coset(std::vector<size_t> qubits, PauliOp x_offset) {
    EnsembleFactor f = diagonal_iz(std::move(qubits));
    if (x_offset.n != f.qubits.size()) {
        throw DimensionError("DiagonalIZ offset does not match its register size.");
    }
    for (size_t j = 0; j < x_offset.n; j++) {
        f.local.set(j, x_offset.x(j), false);
    }
    return f;
}

EnsembleFactor EnsembleFactor::xy_set(size_t qubit) {
    EnsembleFactor f;
    f.kind = FactorKind::XYSet;
    f.qubits = {qubit};
    f.local = PauliOp::single(1, 0, 'X');
    return f;
}

EnsembleFactor EnsembleFactor::weight_at_most(std::vector<size_t> qubits, size_t w) {
    EnsembleFactor f = full_group(std::move(qubits));
    f.kind = FactorKind::WeightAtMost;
    f.max_weight = std::min(w, f.qubits.size());
    return f;
}

BigInt EnsembleFactor::cardinality() const {
    size_t m = qubits.size();
    switch (kind) {
        case FactorKind::Point:
            return 1;
        case FactorKind::FullGroup:
            return pow4(m);
        case FactorKind::FullGroupMinusIdentity:
            return pow4(m) - 1;
        case FactorKind::DiagonalIZ:
            return BigInt(1) << m;
        case FactorKind::XYSet:
            return 2;
        case FactorKind::WeightAtMost:
            return weight_at_most_count(m, max_weight);
    }
    return 0;
}

bool EnsembleFactor::contains_identity() const {
    switch (kind) {
        case FactorKind::Point:
            return local.is_identity_up_to_sign();
        case FactorKind::FullGroup:
        case FactorKind::WeightAtMost:
            return true;
        case FactorKind::FullGroupMinusIdentity:
        case FactorKind::XYSet:
            return false;
        case FactorKind::DiagonalIZ:
            return local.is_identity_up_to_sign();
    }
    return false;
}

Frame::Frame(size_t n, std::vector<GateSpec> g) : gates(std::move(g)), op(from_gates(n, gates)), inv(inverse(op)) {
}

Frame::Frame(CliffordOp c) : op(std::move(c)), inv(inverse(op)) {
}

BigInt weight_at_most_count(size_t m, size_t w) {
    BigInt total = 0;
    BigInt term = 1;  // 3^j binom(m, j)
    for (size_t j = 0; j <= std::min(w, m); j++) {
        total += term;
        term = term * 3 * (m - j) / (j + 1);
    }
    return total;
}

PauliEnsemble::PauliEnsemble(size_t n, std::vector<EnsembleFactor> factors, std::shared_ptr<const Frame> frame)
    : n_(n), factors_(std::move(factors)), frame_(std::move(frame)) {
    if (frame_ && frame_->op.n != n) {
        throw DimensionError("Ensemble frame acts on the wrong number of qubits.");
    }
    std::vector<bool> covered(n, false);
    for (const auto &f : factors_) {
        for (size_t q : f.qubits) {
            if (q >= n) {
                throw DimensionError("Ensemble register qubit " + std::to_string(q) + " out of range.");
            }
            if (covered[q]) {
                throw ValidationError("Ensemble registers overlap at qubit " + std::to_string(q) + ".");
            }
            covered[q] = true;
        }
    }
    std::vector<size_t> rest;
    for (size_t q = 0; q < n; q++) {
        if (!covered[q]) {
            rest.push_back(q);
        }
    }
    if (!rest.empty()) {
        factors_.push_back(EnsembleFactor::point(rest, PauliOp(rest.size())));
    }
    std::sort(factors_.begin(), factors_.end(), [](const EnsembleFactor &a, const EnsembleFactor &b) {
        return a.qubits < b.qubits;
    });
    for (const auto &f : factors_) {
        Compiled c;
        c.kind = f.kind;
        c.mask.assign((n + 63) / 64, 0);
        c.embedded = PauliOp(n);
        for (size_t j = 0; j < f.qubits.size(); j++) {
            size_t q = f.qubits[j];
            c.mask[q >> 6] |= uint64_t{1} << (q & 63);
            c.embedded.set(q, f.local.x(j), f.local.z(j));
        }
        if (f.kind == FactorKind::WeightAtMost) {
            c.chi_by_weight = weight_chi_table(f.qubits.size(), f.max_weight);
        } else if (f.kind == FactorKind::FullGroupMinusIdentity) {
            long double d = to_long_double(pow4(f.qubits.size()) - 1);
            c.chi_by_weight = std::make_shared<std::vector<double>>(1, (double)(-1.0L / d));
        }
        compiled_.push_back(std::move(c));
    }
}

PauliEnsemble PauliEnsemble::point(const PauliOp &p) {
    std::vector<size_t> all(p.n);
    for (size_t q = 0; q < p.n; q++) {
        all[q] = q;
    }
    return PauliEnsemble(p.n, {EnsembleFactor::point(all, p)});
}

BigInt PauliEnsemble::cardinality() const {
    BigInt r = 1;
    for (const auto &f : factors_) {
        r *= f.cardinality();
    }
    return r;
}

bool PauliEnsemble::contains_identity() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const EnsembleFactor &f) {
        return f.contains_identity();
    });
}

bool PauliEnsemble::is_point() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const EnsembleFactor &f) {
        return f.kind == FactorKind::Point;
    });
}

PauliOp PauliEnsemble::point_value() const {
    if (!is_point()) {
        throw UnsupportedError("Ensemble is not a single Pauli.");
    }
    PauliOp p(n_);
    for (const auto &c : compiled_) {
        mul_bits_inplace(p, c.embedded);
    }
    if (frame_) {
        p = conjugate(frame_->op, p);
    }
    return p.unsigned_copy();
}

PauliOp PauliEnsemble::unframe(const PauliOp &p) const {
    if (p.n != n_) {
        throw DimensionError("Query Pauli has " + std::to_string(p.n) + " qubits, ensemble has " + std::to_string(n_));
    }
    return frame_ ? conjugate(frame_->inv, p) : p;
}

double PauliEnsemble::mean_chi(const PauliOp &p) const {
    PauliOp q = unframe(p);
    double result = 1;
    size_t words = q.xs.size();
    for (const auto &c : compiled_) {
        switch (c.kind) {
            case FactorKind::Point: {
                uint64_t acc = 0;
                for (size_t w = 0; w < words; w++) {
                    acc ^= (c.embedded.xs[w] & q.zs[w]) ^ (c.embedded.zs[w] & q.xs[w]);
                }
                if (parity(acc)) {
                    result = -result;
                }
                break;
            }
            case FactorKind::FullGroup:
            case FactorKind::FullGroupMinusIdentity: {
                bool trivial = true;
                for (size_t w = 0; w < words; w++) {
                    trivial &= ((q.xs[w] | q.zs[w]) & c.mask[w]) == 0;
                }
                if (!trivial) {
                    if (c.kind == FactorKind::FullGroup) {
                        return 0;
                    }
                    result *= (*c.chi_by_weight)[0];
                }
                break;
            }
            case FactorKind::DiagonalIZ:
            case FactorKind::XYSet: {
                uint64_t acc = 0;
                for (size_t w = 0; w < words; w++) {
                    if (q.xs[w] & c.mask[w]) {
                        return 0;
                    }
                    acc ^= c.embedded.xs[w] & q.zs[w];
                }
                if (parity(acc)) {
                    result = -result;
                }
                break;
            }
            case FactorKind::WeightAtMost: {
                size_t a = 0;
                for (size_t w = 0; w < words; w++) {
                    a += std::popcount((q.xs[w] | q.zs[w]) & c.mask[w]);
                }
                result *= (*c.chi_by_weight)[a];
                break;
            }
        }
    }
    return result;
}

bool PauliEnsemble::contains(const PauliOp &p) const {
    PauliOp q = unframe(p);
    size_t words = q.xs.size();
    for (size_t k = 0; k < compiled_.size(); k++) {
        const auto &c = compiled_[k];
        bool any = false;
        bool match_point = true;
        bool match_x = true;
        size_t wt = 0;
        for (size_t w = 0; w < words; w++) {
            uint64_t x = q.xs[w] & c.mask[w], z = q.zs[w] & c.mask[w];
            any |= (x | z) != 0;
            match_point &= x == c.embedded.xs[w] && z == c.embedded.zs[w];
            match_x &= x == c.embedded.xs[w];
            wt += std::popcount(x | z);
        }
        switch (c.kind) {
            case FactorKind::Point:
                if (!match_point) {
                    return false;
                }
                break;
            case FactorKind::FullGroup:
                break;
            case FactorKind::FullGroupMinusIdentity:
                if (!any) {
                    return false;
                }
                break;
            case FactorKind::DiagonalIZ:
            case FactorKind::XYSet:
                if (!match_x) {
                    return false;
                }
                break;
            case FactorKind::WeightAtMost:
                if (wt > factors_[k].max_weight) {
                    return false;
                }
                break;
        }
    }
    return true;
}

PauliOp PauliEnsemble::sample(Rng &rng) const {
    PauliOp p(n_);
    std::uniform_int_distribution<int> nontrivial(1, 3);
    for (size_t k = 0; k < factors_.size(); k++) {
        const auto &f = factors_[k];
        size_t m = f.qubits.size();
        switch (f.kind) {
            case FactorKind::Point:
                for (size_t j = 0; j < m; j++) {
                    p.set(f.qubits[j], f.local.x(j), f.local.z(j));
                }
                break;
            case FactorKind::FullGroup:
            case FactorKind::FullGroupMinusIdentity: {
                PauliOp r = random_pauli(m, f.kind == FactorKind::FullGroupMinusIdentity, rng);
                for (size_t j = 0; j < m; j++) {
                    p.set(f.qubits[j], r.x(j), r.z(j));
                }
                break;
            }
            case FactorKind::DiagonalIZ:
            case FactorKind::XYSet:
                for (size_t j = 0; j < m; j++) {
                    p.set(f.qubits[j], f.local.x(j), rng() & 1);
                }
                break;
            case FactorKind::WeightAtMost: {
                std::vector<long double> weights;
                long double term = 1;
                for (size_t j = 0; j <= f.max_weight; j++) {
                    weights.push_back(term);
                    term = term * 3 * (long double)(m - j) / (long double)(j + 1);
                }
                std::discrete_distribution<size_t> pick_weight(weights.begin(), weights.end());
                size_t j = pick_weight(rng);
                std::vector<size_t> order = f.qubits;
                for (size_t t = 0; t < j; t++) {
                    std::uniform_int_distribution<size_t> d(t, m - 1);
                    std::swap(order[t], order[d(rng)]);
                    int v = nontrivial(rng);
                    p.set(order[t], v & 1, v >> 1);
                }
                break;
            }
        }
    }
    if (frame_) {
        p = conjugate(frame_->op, p);
    }
    return p.unsigned_copy();
}

std::vector<PauliOp> PauliEnsemble::members(size_t cap) const {
    if (cardinality() > BigInt(cap)) {
        throw CapExceededError("Ensemble has more than " + std::to_string(cap) + " members.");
    }
    std::vector<PauliOp> acc = {PauliOp(n_)};
    for (const auto &f : factors_) {
        std::vector<PauliOp> local;
        switch (f.kind) {
            case FactorKind::Point:
                local = enumerate_register(n_, f.qubits, [&](const PauliOp &l) {
                    return l.same_bits(f.local);
                });
                break;
            case FactorKind::FullGroup:
                local = enumerate_register(n_, f.qubits, [](const PauliOp &) {
                    return true;
                });
                break;
            case FactorKind::FullGroupMinusIdentity:
                local = enumerate_register(n_, f.qubits, [](const PauliOp &l) {
                    return !l.is_identity_up_to_sign();
                });
                break;
            case FactorKind::DiagonalIZ:
            case FactorKind::XYSet:
                local = enumerate_register(n_, f.qubits, [&](const PauliOp &l) {
                    return l.xs == f.local.xs;
                });
                break;
            case FactorKind::WeightAtMost:
                local = enumerate_register(n_, f.qubits, [&](const PauliOp &l) {
                    return weight(l) <= f.max_weight;
                });
                break;
        }
        std::vector<PauliOp> next;
        next.reserve(acc.size() * local.size());
        for (const auto &a : acc) {
            for (const auto &b : local) {
                PauliOp c = a;
                mul_bits_inplace(c, b);
                next.push_back(std::move(c));
            }
        }
        acc = std::move(next);
    }
    for (auto &p : acc) {
        if (frame_) {
            p = conjugate(frame_->op, p);
        }
        p.log_i = 0;
    }
    return acc;
}

std::string PauliEnsemble::key() const {
    std::string out = "n=" + std::to_string(n_) + ";";
    for (const auto &f : factors_) {
        out += factor_kind_name(f.kind);
        out += "[";
        for (size_t q : f.qubits) {
            out += std::to_string(q) + ",";
        }
        out += "]" + format_pauli(f.local) + ":" + std::to_string(f.max_weight) + ";";
    }
    if (frame_) {
        out += "frame:";
        for (size_t q = 0; q < n_; q++) {
            out += format_pauli(frame_->op.image_x[q]) + format_pauli(frame_->op.image_z[q]);
        }
    }
    return out;
}

long double to_long_double(const BigInt &x) {
    return x.convert_to<long double>();
}

namespace {

BigInt intersection_by_enumeration(const std::vector<const PauliEnsemble *> &es) {
    size_t best = 0;
    for (size_t k = 1; k < es.size(); k++) {
        if (es[k]->cardinality() < es[best]->cardinality()) {
            best = k;
        }
    }
    BigInt count = 0;
    for (const auto &p : es[best]->members(size_t{1} << 20)) {
        bool all = true;
        for (const auto *e : es) {
            all = all && e->contains(p);
        }
        if (all) {
            count += 1;
        }
    }
    return count;
}

}  // namespace

BigInt intersection_cardinality(const std::vector<const PauliEnsemble *> &es) {
    if (es.empty()) {
        throw ValidationError("intersection_cardinality needs at least one ensemble.");
    }
    size_t n = es[0]->n();
    for (const auto *e : es) {
        if (e->n() != n) {
            throw DimensionError("Ensembles act on different numbers of qubits.");
        }
    }
    bool frames_match = true;
    for (const auto *e : es) {
        frames_match &= same_frame(e->frame(), es[0]->frame(), n);
    }
    auto fallback = [&](const std::string &why) -> BigInt {
        if (n <= kEnumerationFallbackMaxQubits) {
            return intersection_by_enumeration(es);
        }
        throw UnsupportedError("Cannot intersect ensembles: " + why + ".");
    };
    if (!frames_match) {
        return fallback("frames differ");
    }

    // Allowed single-qubit values as a 4-bit mask indexed by x + 2z.
    std::vector<unsigned> allowed(n, 0xF);
    struct Block {
        std::vector<size_t> qubits;
        bool minus_identity = false;
        size_t max_weight;
    };
    std::vector<Block> blocks;
    std::vector<int> block_of(n, -1);
    for (const auto *e : es) {
        for (const auto &f : e->factors()) {
            switch (f.kind) {
                case FactorKind::Point:
                    for (size_t j = 0; j < f.qubits.size(); j++) {
                        allowed[f.qubits[j]] &= 1u << (f.local.x(j) + 2 * f.local.z(j));
                    }
                    break;
                case FactorKind::FullGroup:
                    break;
                case FactorKind::DiagonalIZ:
                case FactorKind::XYSet:
                    for (size_t j = 0; j < f.qubits.size(); j++) {
                        allowed[f.qubits[j]] &= f.local.x(j) ? 0b1010u : 0b0101u;
                    }
                    break;
                case FactorKind::FullGroupMinusIdentity:
                case FactorKind::WeightAtMost: {
                    std::vector<size_t> reg = f.qubits;
                    std::sort(reg.begin(), reg.end());
                    int id = block_of[reg[0]];
                    if (id < 0) {
                        for (size_t q : reg) {
                            if (block_of[q] >= 0) {
                                return fallback("structured registers partially overlap");
                            }
                        }
                        id = (int)blocks.size();
                        blocks.push_back(Block{reg, false, reg.size()});
                        for (size_t q : reg) {
                            block_of[q] = id;
                        }
                    } else if (blocks[id].qubits != reg) {
                        return fallback("structured registers partially overlap");
                    }
                    if (f.kind == FactorKind::FullGroupMinusIdentity) {
                        blocks[id].minus_identity = true;
                    } else {
                        blocks[id].max_weight = std::min(blocks[id].max_weight, f.max_weight);
                    }
                    break;
                }
            }
        }
    }
    BigInt result = 1;
    for (size_t q = 0; q < n; q++) {
        if (block_of[q] < 0) {
            result *= std::popcount(allowed[q]);
        }
    }
    for (const auto &b : blocks) {
        std::vector<std::pair<int, int>> terms;
        BigInt identity_ways = 1;
        for (size_t q : b.qubits) {
            int a = allowed[q] & 1;
            terms.push_back({a, std::popcount(allowed[q] & 0b1110u)});
            identity_ways *= a;
        }
        BigInt count = 0;
        for (const auto &c : truncated_product(terms, b.max_weight)) {
            count += c;
        }
        if (b.minus_identity) {
            count -= identity_ways;
        }
        result *= count;
    }
    return result;
}

}  // namespace twirlkit
