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

#include "twirlkit/dense.h"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>

#include "twirlkit/errors.h"
#include "twirlkit/trotter.h"

namespace twirlkit {

namespace {

using cd = std::complex<double>;

constexpr size_t kDefaultDenseCap = 10;
constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPositivityTol = -1e-9;
/// Channels with at most this many error terms are applied in Kraus form.
constexpr size_t kKrausLimit = 256;

size_t bit_of(size_t n, size_t q) {
    return size_t{1} << (n - 1 - q);
}

cd i_pow(int k) {
    static const cd table[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    return table[((k % 4) + 4) % 4];
}

void masks_of(const PauliOp &p, size_t &x, size_t &z) {
    x = 0;
    z = 0;
    for (size_t q = 0; q < p.n; q++) {
        if (p.x(q)) {
            x |= bit_of(p.n, q);
        }
        if (p.z(q)) {
            z |= bit_of(p.n, q);
        }
    }
}

PauliOp from_masks(size_t n, size_t x, size_t z) {
    PauliOp p(n);
    for (size_t q = 0; q < n; q++) {
        p.set(q, x & bit_of(n, q), z & bit_of(n, q));
    }
    return p;
}

/// Phase c with P = c·X^x Z^z.
cd pauli_phase(const PauliOp &p, size_t x, size_t z) {
    return i_pow(p.log_i + std::popcount(x & z));
}

double sign_of(size_t z, size_t k) {
    return (std::popcount(z & k) & 1) ? -1.0 : 1.0;
}

void wht(std::vector<cd> &v) {
    for (size_t h = 1; h < v.size(); h <<= 1) {
        for (size_t i = 0; i < v.size(); i += 2 * h) {
            for (size_t j = i; j < i + h; j++) {
                cd a = v[j];
                cd b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

/// Per-thread buffer shaped like m. Callers swap it with m when done, so no allocation happens per layer.
DenseMatrix &scratch_like(const DenseMatrix &m) {
    thread_local DenseMatrix s;
    if (s.rows() != m.rows() || s.cols() != m.cols()) {
        s.resize(m.rows(), m.cols());
    }
    return s;
}

/// out += w·E m E† for a Pauli E.
void add_pauli_conjugate(DenseMatrix &out, const DenseMatrix &m, const PauliOp &e, double w) {
    size_t x, z;
    masks_of(e, x, z);
    size_t d = (size_t)m.rows();
    thread_local std::vector<double> sv;
    sv.resize(d);
    for (size_t k = 0; k < d; k++) {
        sv[k] = w * sign_of(z, k ^ x);
    }
    for (size_t j = 0; j < d; j++) {
        double sj = sign_of(z, j ^ x);
        const cd *src = &m(0, j ^ x);
        cd *dst = &out(0, j);
        for (size_t i = 0; i < d; i++) {
            dst[i] += (sv[i] * sj) * src[i ^ x];
        }
    }
}

/// m <- identity_weight·m + Σ weight·E m E† over the listed Paulis.
void apply_pauli_mixture(DenseMatrix &m, double identity_weight, const std::vector<std::pair<PauliOp, double>> &terms) {
    DenseMatrix &out = scratch_like(m);
    out = identity_weight * m;
    for (const auto &[e, w] : terms) {
        add_pauli_conjugate(out, m, e, w);
    }
    m.swap(out);
}

size_t num_qubits_of(const DenseMatrix &m) {
    size_t d = (size_t)m.rows();
    if (m.rows() != m.cols() || d == 0 || (d & (d - 1))) {
        throw DimensionError("Operator must be a square 2^n x 2^n matrix.");
    }
    return (size_t)std::countr_zero(d);
}

struct SingleQubitMatrix {
    cd u00, u01, u10, u11;
};

SingleQubitMatrix single_matrix(GateKind k) {
    const double s = 1 / std::sqrt(2.0);
    switch (k) {
        case GateKind::H:
            return {s, s, s, -s};
        case GateKind::S:
            return {1, 0, 0, cd(0, 1)};
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, cd(0, -1), cd(0, 1), 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        default:
            throw UnsupportedError("Not a single-qubit gate.");
    }
}

/// Basis action U|j> = phase·|target> for permutation-type gates.
std::pair<size_t, cd> permutation_action(size_t n, const GateSpec &g, size_t j) {
    switch (g.kind) {
        case GateKind::CNOT: {
            size_t c = bit_of(n, g.qubits[0]);
            size_t t = bit_of(n, g.qubits[1]);
            return {(j & c) ? j ^ t : j, 1};
        }
        case GateKind::CZ: {
            size_t a = bit_of(n, g.qubits[0]);
            size_t b = bit_of(n, g.qubits[1]);
            return {j, ((j & a) && (j & b)) ? -1 : 1};
        }
        case GateKind::SWAP: {
            size_t a = bit_of(n, g.qubits[0]);
            size_t b = bit_of(n, g.qubits[1]);
            return {bool(j & a) != bool(j & b) ? j ^ (a | b) : j, 1};
        }
        case GateKind::MultiCNOT: {
            size_t c = bit_of(n, g.qubits[0]);
            size_t t = 0;
            for (size_t k = 1; k < g.qubits.size(); k++) {
                t |= bit_of(n, g.qubits[k]);
            }
            return {(j & c) ? j ^ t : j, 1};
        }
        default:
            throw UnsupportedError("Not a permutation gate.");
    }
}

bool is_single_qubit(GateKind k) {
    return k == GateKind::H || k == GateKind::S || k == GateKind::X || k == GateKind::Y || k == GateKind::Z;
}

void gate_left(DenseMatrix &m, size_t n, const GateSpec &g) {
    size_t d = (size_t)m.rows();
    if (is_single_qubit(g.kind)) {
        auto u = single_matrix(g.kind);
        size_t b = bit_of(n, g.qubits[0]);
        for (Eigen::Index col = 0; col < m.cols(); col++) {
            for (size_t i = 0; i < d; i++) {
                if (i & b) {
                    continue;
                }
                cd a0 = m(i, col);
                cd a1 = m(i | b, col);
                m(i, col) = u.u00 * a0 + u.u01 * a1;
                m(i | b, col) = u.u10 * a0 + u.u11 * a1;
            }
        }
        return;
    }
    DenseMatrix out(m.rows(), m.cols());
    for (size_t j = 0; j < d; j++) {
        auto [i, ph] = permutation_action(n, g, j);
        out.row(i) = ph * m.row(j);
    }
    m = std::move(out);
}

/// m <- G m G† for a permutation gate, in one pass.
void permutation_conjugate(DenseMatrix &m, size_t n, const GateSpec &g) {
    size_t d = (size_t)m.rows();
    thread_local std::vector<size_t> target;
    thread_local std::vector<cd> phase;
    target.resize(d);
    phase.resize(d);
    for (size_t j = 0; j < d; j++) {
        auto [i, ph] = permutation_action(n, g, j);
        target[j] = i;
        phase[j] = ph;
    }
    DenseMatrix &out = scratch_like(m);
    for (size_t l = 0; l < d; l++) {
        cd pl = std::conj(phase[l]);
        const cd *src = &m(0, l);
        cd *dst = &out(0, target[l]);
        for (size_t j = 0; j < d; j++) {
            dst[target[j]] = phase[j] * pl * src[j];
        }
    }
    m.swap(out);
}

void gate_right_adjoint(DenseMatrix &m, size_t n, const GateSpec &g) {
    size_t d = (size_t)m.cols();
    if (is_single_qubit(g.kind)) {
        auto u = single_matrix(g.kind);
        size_t b = bit_of(n, g.qubits[0]);
        for (size_t j = 0; j < d; j++) {
            if (j & b) {
                continue;
            }
            Eigen::VectorXcd a0 = m.col(j);
            Eigen::VectorXcd a1 = m.col(j | b);
            m.col(j) = a0 * std::conj(u.u00) + a1 * std::conj(u.u01);
            m.col(j | b) = a0 * std::conj(u.u10) + a1 * std::conj(u.u11);
        }
        return;
    }
    DenseMatrix out(m.rows(), m.cols());
    for (size_t j = 0; j < d; j++) {
        auto [i, ph] = permutation_action(n, g, j);
        out.col(i) = std::conj(ph) * m.col(j);
    }
    m = std::move(out);
}

void apply_gates_inplace(DenseMatrix &m, size_t n, const std::vector<GateSpec> &gates) {
    for (const auto &g : gates) {
        apply_gate_inplace(m, n, g);
    }
}

/// Coefficients a[x·d + z] with m = Σ a·X^x Z^z.
std::vector<cd> xz_coefficients(const DenseMatrix &m) {
    size_t d = (size_t)m.rows();
    std::vector<cd> out(d * d);
    std::vector<cd> v(d);
    for (size_t x = 0; x < d; x++) {
        for (size_t k = 0; k < d; k++) {
            v[k] = m(k ^ x, k);
        }
        wht(v);
        for (size_t z = 0; z < d; z++) {
            out[x * d + z] = v[z] / (double)d;
        }
    }
    return out;
}

DenseMatrix from_xz_coefficients(const std::vector<cd> &a, size_t d) {
    DenseMatrix m(d, d);
    std::vector<cd> v(d);
    for (size_t x = 0; x < d; x++) {
        for (size_t z = 0; z < d; z++) {
            v[z] = a[x * d + z];
        }
        wht(v);
        for (size_t k = 0; k < d; k++) {
            m(k ^ x, k) = v[k];
        }
    }
    return m;
}

double trace_distance_raw(const DenseMatrix &diff) {
    DenseMatrix h = (diff + diff.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum() / 2;
}

double tv_clifford_basis(const DenseMatrix &diff, const CliffordOp &c) {
    size_t n = c.n;
    size_t d = (size_t)diff.rows();
    auto a = xz_coefficients(diff);
    std::vector<cd> diag(d, 0);
    for (size_t x = 0; x < d; x++) {
        for (size_t z = 0; z < d; z++) {
            cd coef = a[x * d + z];
            if (std::abs(coef) == 0) {
                continue;
            }
            PauliOp p = from_masks(n, x, z);
            p.log_i = (4 - std::popcount(x & z) % 4) % 4;
            PauliOp q = conjugate(c, p);
            size_t qx, qz;
            masks_of(q, qx, qz);
            if (qx != 0) {
                continue;
            }
            diag[qz] += coef * pauli_phase(q, qx, qz);
        }
    }
    wht(diag);
    double tv = 0;
    for (auto &v : diag) {
        tv += std::abs(v.real());
    }
    return tv / 2;
}

double tv_unitary_basis(const DenseMatrix &diff, const DenseMatrix &u) {
    DenseMatrix r = u * diff * u.adjoint();
    double tv = 0;
    for (Eigen::Index i = 0; i < r.rows(); i++) {
        tv += std::abs(r(i, i).real());
    }
    return tv / 2;
}

void apply_local_depolarizing(DenseMatrix &m, size_t n, size_t q, double p) {
    if (p == 0) {
        return;
    }
    std::vector<std::pair<PauliOp, double>> terms;
    for (char c : std::string("XYZ")) {
        terms.push_back({PauliOp::single(n, q, c), p / 3});
    }
    apply_pauli_mixture(m, 1 - p, terms);
}

using PauliTerms = std::vector<std::pair<PauliOp, double>>;

/// Explicit error terms, or nothing when the channel has more than kKrausLimit members.
std::optional<PauliTerms> kraus_terms(const PauliChannel &ch) {
    BigInt members = 0;
    for (const auto &a : ch.atoms()) {
        members += a.ensemble.cardinality();
    }
    if (members > kKrausLimit) {
        return std::nullopt;
    }
    PauliTerms terms;
    for (const auto &atom : ch.atoms()) {
        double each = atom.prob / (double)atom.ensemble.cardinality();
        for (const auto &e : atom.ensemble.members()) {
            terms.push_back({e, each});
        }
    }
    return terms;
}

/// Term lists memoized per channel object for the duration of one evolution.
class KrausCache {
   public:
    const std::optional<PauliTerms> &terms(const PauliChannel &ch) {
        auto it = cache_.find(&ch);
        if (it == cache_.end()) {
            it = cache_.emplace(&ch, kraus_terms(ch)).first;
        }
        return it->second;
    }

   private:
    std::map<const PauliChannel *, std::optional<PauliTerms>> cache_;
};

void apply_channel_cached(DenseMatrix &m, const PauliChannel &ch, KrausCache &cache) {
    const auto &terms = cache.terms(ch);
    if (terms) {
        apply_pauli_mixture(m, ch.identity_prob(), *terms);
        return;
    }
    apply_pauli_transfer_inplace(m, ch.n(), [&](const PauliOp &p) {
        return pauli_fidelity(ch, p);
    });
}

/// Pauli channel given in the rotation frame, applied in the circuit frame via W.
void apply_framed_channel(DenseMatrix &m, const RotationLayer &rot, const PauliChannel &ch, KrausCache &cache) {
    size_t n = rot.axis.n;
    const auto &terms = cache.terms(ch);
    if (terms) {
        PauliTerms framed = *terms;
        for (auto &[e, w] : framed) {
            conjugate_by_gates_inplace(e, rot.w_inv_gates);
        }
        apply_pauli_mixture(m, ch.identity_prob(), framed);
        return;
    }
    apply_pauli_transfer_inplace(m, n, [&](const PauliOp &p) {
        PauliOp q = p;
        conjugate_by_gates_inplace(q, rot.w_gates);
        return pauli_fidelity(ch, q);
    });
}

void apply_layer_noise(DenseMatrix &m, const RotationLayer &rot, Rng &rng, KrausCache &cache) {
    const NoiseModel &model = *rot.noise;
    size_t n = rot.axis.n;
    if (model.is_sampled()) {
        auto gadget = model.sample_gadget(rng);
        double pd = model.options().p_d;
        bool after_d = model.options().placement != GadgetNoisePlacement::AfterDdag;
        bool after_ddag = model.options().placement != GadgetNoisePlacement::AfterD;
        apply_gates_inplace(m, n, rot.w_gates);
        apply_gates_inplace(m, n, gadget.gates);
        if (after_d) {
            for (size_t q : gadget.support) {
                apply_local_depolarizing(m, n, q, pd);
            }
        }
        apply_channel_cached(m, model.base(), cache);
        apply_gates_inplace(m, n, inverse_gates(gadget.gates));
        if (after_ddag) {
            for (size_t q : gadget.support) {
                apply_local_depolarizing(m, n, q, pd);
            }
        }
        apply_gates_inplace(m, n, rot.w_inv_gates);
        return;
    }
    bool gadget_average = model.options().mode == TwirlMode::Full || model.options().mode == TwirlMode::KSparse;
    if (gadget_average) {
        apply_pauli_transfer_inplace(m, n, [&](const PauliOp &p) {
            PauliOp q = p;
            conjugate_by_gates_inplace(q, rot.w_gates);
            return model.fidelity(q);
        });
        return;
    }
    apply_framed_channel(m, rot, model.twirled(), cache);
}

void apply_layer(DenseMatrix &m, size_t n, const Layer &layer, bool noisy, bool inverse_direction, Rng &rng,
                 KrausCache &cache) {
    if (const auto *cl = std::get_if<CliffordLayer>(&layer)) {
        if (!cl->gates.empty()) {
            apply_gates_inplace(m, n, inverse_direction ? inverse_gates(cl->gates) : cl->gates);
        } else {
            apply_clifford_inplace(m, inverse_direction ? cl->inv : cl->op);
        }
        return;
    }
    const auto &rot = std::get<RotationLayer>(layer);
    apply_rotation_inplace(m, rot.axis, inverse_direction ? -rot.angle : rot.angle);
    if (noisy && rot.noise && !inverse_direction) {
        apply_layer_noise(m, rot, rng, cache);
    }
}

}  // namespace

size_t dense_qubit_cap() {
    const char *env = std::getenv("TWIRLKIT_DENSE_CAP");
    if (env != nullptr && *env != '\0') {
        char *end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) {
            return (size_t)v;
        }
        throw ValidationError("TWIRLKIT_DENSE_CAP must be a positive integer.");
    }
    return kDefaultDenseCap;
}

void check_dense_cap(size_t n) {
    if (n > dense_qubit_cap()) {
        throw CapExceededError("Dense simulation of " + std::to_string(n) + " qubits exceeds the cap of " +
                               std::to_string(dense_qubit_cap()) + ".");
    }
}

std::string DensityMatrix::check(const DenseMatrix &m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        return "not Hermitian";
    }
    if (std::abs(m.trace() - cd(1, 0)) > kTraceTol) {
        return "trace differs from 1";
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es((m + m.adjoint()) / 2, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPositivityTol) {
        return "not positive semidefinite";
    }
    return "";
}

DensityMatrix::DensityMatrix(size_t n, DenseMatrix m) : n_(n), m_(std::move(m)) {
    check_dense_cap(n);
    if ((size_t)m_.rows() != (size_t{1} << n) || m_.rows() != m_.cols()) {
        throw DimensionError("Density matrix must be 2^n x 2^n.");
    }
    std::string err = check(m_);
    if (!err.empty()) {
        throw ValidationError("Invalid density matrix: " + err + ".");
    }
}

DensityMatrix DensityMatrix::zero_state(size_t n) {
    check_dense_cap(n);
    DenseMatrix m = DenseMatrix::Zero(size_t{1} << n, size_t{1} << n);
    m(0, 0) = 1;
    return DensityMatrix(n, m);
}

DensityMatrix DensityMatrix::maximally_mixed(size_t n) {
    check_dense_cap(n);
    size_t d = size_t{1} << n;
    return DensityMatrix(n, DenseMatrix::Identity(d, d) / (double)d);
}

DensityMatrix DensityMatrix::from_pure(size_t n, const Eigen::VectorXcd &psi) {
    check_dense_cap(n);
    if ((size_t)psi.size() != (size_t{1} << n)) {
        throw DimensionError("State vector must have 2^n entries.");
    }
    Eigen::VectorXcd v = psi / psi.norm();
    return DensityMatrix(n, v * v.adjoint());
}

DenseMatrix dense_pauli(const PauliOp &p) {
    check_dense_cap(p.n);
    size_t d = size_t{1} << p.n;
    DenseMatrix m = DenseMatrix::Identity(d, d);
    pauli_left_inplace(m, p);
    return m;
}

DenseMatrix dense_gate(size_t n, const GateSpec &g) {
    check_dense_cap(n);
    validate_gate(n, g);
    size_t d = size_t{1} << n;
    DenseMatrix m = DenseMatrix::Identity(d, d);
    gate_left(m, n, g);
    return m;
}

void pauli_left_inplace(DenseMatrix &m, const PauliOp &p) {
    size_t x, z;
    masks_of(p, x, z);
    cd ph = pauli_phase(p, x, z);
    size_t d = (size_t)m.rows();
    DenseMatrix out(m.rows(), m.cols());
    for (size_t k = 0; k < d; k++) {
        out.row(k ^ x) = (ph * sign_of(z, k)) * m.row(k);
    }
    m = std::move(out);
}

void pauli_right_inplace(DenseMatrix &m, const PauliOp &p) {
    size_t x, z;
    masks_of(p, x, z);
    cd ph = pauli_phase(p, x, z);
    size_t d = (size_t)m.cols();
    DenseMatrix out(m.rows(), m.cols());
    for (size_t k = 0; k < d; k++) {
        out.col(k) = (ph * sign_of(z, k)) * m.col(k ^ x);
    }
    m = std::move(out);
}

void apply_gate_inplace(DenseMatrix &m, size_t n, const GateSpec &g) {
    validate_gate(n, g);
    if (!is_single_qubit(g.kind)) {
        permutation_conjugate(m, n, g);
        return;
    }
    gate_left(m, n, g);
    gate_right_adjoint(m, n, g);
}

void apply_rotation_inplace(DenseMatrix &m, const PauliOp &axis, double theta) {
    if (theta == 0) {
        return;
    }
    if (axis.log_i & 1) {
        throw ValidationError("Rotation axis must be Hermitian.");
    }
    double c = std::cos(theta);
    double s = std::sin(theta);
    size_t x, z;
    masks_of(axis, x, z);
    cd ph = pauli_phase(axis, x, z);
    size_t d = (size_t)m.rows();
    // P|k> = al[k]·|k ⊕ x>. Entries are updated in orbits {i, i ⊕ x} × {j, j ⊕ x}.
    thread_local std::vector<cd> al;
    al.resize(d);
    for (size_t k = 0; k < d; k++) {
        al[k] = ph * sign_of(z, k);
    }
    const double cc = c * c;
    const double ss = s * s;
    const cd ics(0, c * s);
    auto upd = [&](size_t a, size_t b, cd ab, cd axb, cd abx, cd axbx) {
        cd l = al[a ^ x];
        return cc * ab + ss * l * al[b] * axbx + ics * (l * axb - abx * al[b]);
    };
    for (size_t j = 0; j < d; j++) {
        size_t jx = j ^ x;
        if (jx < j) {
            continue;
        }
        for (size_t i = 0; i < d; i++) {
            size_t ix = i ^ x;
            if (ix < i) {
                continue;
            }
            cd m00 = m(i, j);
            if (x == 0) {
                m(i, j) = upd(i, j, m00, m00, m00, m00);
                continue;
            }
            cd m10 = m(ix, j);
            cd m01 = m(i, jx);
            cd m11 = m(ix, jx);
            m(i, j) = upd(i, j, m00, m10, m01, m11);
            m(ix, j) = upd(ix, j, m10, m00, m11, m01);
            m(i, jx) = upd(i, jx, m01, m11, m00, m10);
            m(ix, jx) = upd(ix, jx, m11, m01, m10, m00);
        }
    }
}

void apply_pauli_transfer_inplace(DenseMatrix &m, size_t n, const std::function<double(const PauliOp &)> &fidelity) {
    size_t d = (size_t)m.rows();
    std::vector<cd> v(d);
    for (size_t x = 0; x < d; x++) {
        for (size_t k = 0; k < d; k++) {
            v[k] = m(k ^ x, k);
        }
        wht(v);
        for (size_t z = 0; z < d; z++) {
            v[z] *= fidelity(from_masks(n, x, z)) / (double)d;
        }
        wht(v);
        for (size_t k = 0; k < d; k++) {
            m(k ^ x, k) = v[k];
        }
    }
}

void apply_clifford_inplace(DenseMatrix &m, const CliffordOp &c) {
    size_t n = c.n;
    size_t d = (size_t)m.rows();
    auto a = xz_coefficients(m);
    std::vector<cd> b(d * d, 0);
    for (size_t x = 0; x < d; x++) {
        for (size_t z = 0; z < d; z++) {
            cd coef = a[x * d + z];
            if (coef == cd(0, 0)) {
                continue;
            }
            PauliOp p = from_masks(n, x, z);
            p.log_i = (4 - std::popcount(x & z) % 4) % 4;
            PauliOp q = conjugate(c, p);
            size_t qx, qz;
            masks_of(q, qx, qz);
            b[qx * d + qz] += coef * pauli_phase(q, qx, qz);
        }
    }
    m = from_xz_coefficients(b, d);
}

void apply_channel_inplace(DenseMatrix &m, const PauliChannel &ch) {
    size_t n = num_qubits_of(m);
    if (n != ch.n()) {
        throw DimensionError("Channel and operator sizes differ.");
    }
    KrausCache cache;
    apply_channel_cached(m, ch, cache);
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const DenseMatrix &u) {
    if (u.rows() != rho.matrix().rows() || u.cols() != rho.matrix().cols()) {
        throw DimensionError("Unitary and state sizes differ.");
    }
    return DensityMatrix(rho.n(), u * rho.matrix() * u.adjoint());
}

DensityMatrix apply_rotation(const DensityMatrix &rho, const PauliOp &axis, double theta) {
    if (axis.n != rho.n()) {
        throw DimensionError("Axis and state sizes differ.");
    }
    DenseMatrix m = rho.matrix();
    apply_rotation_inplace(m, axis, theta);
    return DensityMatrix(rho.n(), m);
}

DensityMatrix apply_channel(const DensityMatrix &rho, const PauliChannel &ch) {
    DenseMatrix m = rho.matrix();
    apply_channel_inplace(m, ch);
    return DensityMatrix(rho.n(), m);
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.n() != b.n()) {
        throw DimensionError("State sizes differ.");
    }
    return trace_distance_raw(a.matrix() - b.matrix());
}

DenseMatrix haar_unitary(size_t dim, Rng &rng) {
    std::normal_distribution<double> g(0, 1);
    DenseMatrix z(dim, dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            z(i, j) = cd(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<DenseMatrix> qr(z);
    DenseMatrix q = qr.householderQ();
    DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (size_t j = 0; j < dim; j++) {
        cd d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

Eigen::VectorXcd haar_state(size_t n, Rng &rng) {
    check_dense_cap(n);
    std::normal_distribution<double> g(0, 1);
    Eigen::VectorXcd v(size_t{1} << n);
    for (Eigen::Index i = 0; i < v.size(); i++) {
        v(i) = cd(g(rng), g(rng));
    }
    return v / v.norm();
}

double tv_distance_clifford_basis(const DensityMatrix &a, const DensityMatrix &b, const CliffordOp &c) {
    if (a.n() != b.n() || c.n != a.n()) {
        throw DimensionError("State and basis sizes differ.");
    }
    return tv_clifford_basis(a.matrix() - b.matrix(), c);
}

Estimate tv_distance_random_bases(const DensityMatrix &a, const DensityMatrix &b, size_t num_bases, Rng &rng,
                                  BasisEnsemble ensemble) {
    if (a.n() != b.n()) {
        throw DimensionError("State sizes differ.");
    }
    if (num_bases == 0) {
        throw ValidationError("num_bases must be at least 1.");
    }
    DenseMatrix diff = a.matrix() - b.matrix();
    std::vector<double> tv;
    for (size_t i = 0; i < num_bases; i++) {
        if (ensemble == BasisEnsemble::Clifford) {
            tv.push_back(tv_clifford_basis(diff, random_clifford(a.n(), rng)));
        } else {
            tv.push_back(tv_unitary_basis(diff, haar_unitary(diff.rows(), rng)));
        }
    }
    return mean_estimate(tv);
}

void evolve_operator_inplace(DenseMatrix &m, const LogicalCircuit &c, bool noisy, Rng &rng) {
    check_dense_cap(c.n());
    if ((size_t)m.rows() != (size_t{1} << c.n())) {
        throw DimensionError("Operator and circuit sizes differ.");
    }
    KrausCache cache;
    for (const auto &layer : c.layers()) {
        apply_layer(m, c.n(), layer, noisy, false, rng, cache);
    }
}

std::pair<DensityMatrix, DensityMatrix> simulate_pair(const LogicalCircuit &c, const DensityMatrix &input,
                                                      size_t shots, Rng &rng) {
    if (input.n() != c.n()) {
        throw DimensionError("Input and circuit sizes differ.");
    }
    DenseMatrix ideal = input.matrix();
    evolve_operator_inplace(ideal, c, false, rng);
    bool sampled = false;
    for (const auto &l : c.layers()) {
        if (const auto *r = std::get_if<RotationLayer>(&l)) {
            sampled |= r->noise && r->noise->is_sampled();
        }
    }
    size_t runs = sampled ? std::max<size_t>(shots, 1) : 1;
    DenseMatrix noisy = DenseMatrix::Zero(ideal.rows(), ideal.cols());
    for (size_t s = 0; s < runs; s++) {
        DenseMatrix m = input.matrix();
        evolve_operator_inplace(m, c, true, rng);
        noisy += m / (double)runs;
    }
    return {DensityMatrix(c.n(), ideal), DensityMatrix(c.n(), noisy)};
}

double dense_effective_fidelity(const LogicalCircuit &c, const PauliOp &p, size_t shots, Rng &rng) {
    size_t n = c.n();
    check_dense_cap(n);
    DenseMatrix pm = dense_pauli(p.unsigned_copy());
    DenseMatrix back = pm;
    const auto &layers = c.layers();
    KrausCache cache;
    for (size_t i = layers.size(); i-- > 0;) {
        apply_layer(back, n, layers[i], false, true, rng, cache);
    }
    bool sampled = false;
    for (const auto &l : layers) {
        if (const auto *r = std::get_if<RotationLayer>(&l)) {
            sampled |= r->noise && r->noise->is_sampled();
        }
    }
    size_t runs = sampled ? std::max<size_t>(shots, 1) : 1;
    double total = 0;
    for (size_t s = 0; s < runs; s++) {
        DenseMatrix m = back;
        evolve_operator_inplace(m, c, true, rng);
        total += (pm * m).trace().real() / (double)(size_t{1} << n);
    }
    return total / runs;
}

std::vector<DistanceScanRow> run_distance_scan(const std::vector<size_t> &n_list, const std::vector<size_t> &steps_list,
                                const DistanceScanOptions &options, uint64_t seed) {
    if (options.num_inputs == 0 || options.num_bases == 0) {
        throw ValidationError("num_inputs and num_bases must be at least 1.");
    }
    if (!(options.p_tot >= 0)) {
        throw ValidationError("p_tot must be nonnegative.");
    }
    std::vector<DistanceScanRow> rows;
    for (size_t n : n_list) {
        check_dense_cap(n);
        if (n < 2) {
            throw ValidationError("Distance scans need n >= 2.");
        }
        HamiltonianModel model;
        model.kind = ModelKind::Heisenberg1D;
        model.lx = n;
        size_t terms = hamiltonian_terms(model).size();
        for (size_t steps : steps_list) {
            double layers = (double)(terms * steps);
            double p_err = options.p_tot / layers;
            auto noise = std::make_shared<NoiseModel>(make_single_qubit_pauli_noise(n, 0, p_err / 3, p_err / 3, p_err / 3));
            LogicalCircuit c = build_trotter_circuit(model, steps, options.theta, false, noise);
            double r = optimal_rescale_coefficient(c);
            size_t d = size_t{1} << n;
            std::vector<double> td;
            std::vector<double> tv;
            for (size_t i = 0; i < options.num_inputs; i++) {
                Rng rng = derived_rng(seed, i, n * 1000003 + steps);
                auto rho = DensityMatrix::from_pure(n, haar_state(n, rng));
                DenseMatrix ideal = rho.matrix();
                DenseMatrix noisy = rho.matrix();
                evolve_operator_inplace(ideal, c, false, rng);
                evolve_operator_inplace(noisy, c, true, rng);
                DenseMatrix virt = r * noisy + (1 - r) * DenseMatrix::Identity(d, d) / (double)d;
                DenseMatrix diff = ideal - virt;
                td.push_back(trace_distance_raw(diff));
                std::vector<double> per_basis;
                for (size_t b = 0; b < options.num_bases; b++) {
                    if (options.bases == BasisEnsemble::Clifford) {
                        per_basis.push_back(tv_clifford_basis(diff, random_clifford(n, rng)));
                    } else {
                        per_basis.push_back(tv_unitary_basis(diff, haar_unitary(d, rng)));
                    }
                }
                tv.push_back(mean_estimate(per_basis).mean);
            }
            rows.push_back({n, steps, options.theta, mean_estimate(td), mean_estimate(tv)});
        }
    }
    return rows;
}

}  // namespace twirlkit
