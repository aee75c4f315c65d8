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

#ifndef TWIRLKIT_ENSEMBLE_H
#define TWIRLKIT_ENSEMBLE_H

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twirlkit/clifford.h"
#include "twirlkit/pauli.h"

namespace twirlkit {

using BigInt = boost::multiprecision::cpp_int;

enum class FactorKind { Point, FullGroup, FullGroupMinusIdentity, DiagonalIZ, XYSet, WeightAtMost };

const char *factor_kind_name(FactorKind kind);
FactorKind factor_kind_from_name(const std::string &name);

/// One tensor factor of an ensemble, acting on a register of qubits.
///
/// Point holds a fixed Pauli on the register. DiagonalIZ may carry an X offset, in which case it is the
/// coset offset·{I,Z}^m. XYSet is the single-qubit coset X·{I,Z}.
struct EnsembleFactor {
    FactorKind kind = FactorKind::Point;
    std::vector<size_t> qubits;
    /// Pauli on the register (Point) or X offset on the register (DiagonalIZ); register-local indexing.
    PauliOp local;
    size_t max_weight = 0;

    static EnsembleFactor point(std::vector<size_t> qubits, PauliOp p);
    static EnsembleFactor full_group(std::vector<size_t> qubits);
    static EnsembleFactor full_group_minus_identity(std::vector<size_t> qubits);
    static EnsembleFactor diagonal_iz(std::vector<size_t> qubits);
    static EnsembleFactor diagonal_iz_coset(std::vector<size_t> qubits, PauliOp x_offset);
    static EnsembleFactor xy_set(size_t qubit);
    static EnsembleFactor weight_at_most(std::vector<size_t> qubits, size_t w);

    BigInt cardinality() const;
    bool contains_identity() const;
};

/// Optional Clifford frame: members are V E V† for E in the bare product set.
struct Frame {
    std::vector<GateSpec> gates;
    CliffordOp op;
    CliffordOp inv;

    Frame(size_t n, std::vector<GateSpec> gates);
    /// Frame with no gate-level description.
    explicit Frame(CliffordOp op);
};

/// A uniform distribution over a tensor product of structured Pauli sets.
class PauliEnsemble {
   public:
    PauliEnsemble() = default;
    /// Registers must be disjoint; qubits they leave uncovered get an identity Point factor.
    PauliEnsemble(size_t n, std::vector<EnsembleFactor> factors, std::shared_ptr<const Frame> frame = nullptr);

    /// Point(p) on all qubits.
    static PauliEnsemble point(const PauliOp &p);

    size_t n() const {
        return n_;
    }
    const std::vector<EnsembleFactor> &factors() const {
        return factors_;
    }
    const std::shared_ptr<const Frame> &frame() const {
        return frame_;
    }

    BigInt cardinality() const;
    bool contains_identity() const;
    /// True iff every factor is a Point, i.e. the ensemble is a single Pauli.
    bool is_point() const;
    /// The single member of a point ensemble (sign dropped).
    PauliOp point_value() const;

    /// E over members E of chi(E, p), chi = +1 when they commute and -1 otherwise.
    double mean_chi(const PauliOp &p) const;

    bool contains(const PauliOp &p) const;
    PauliOp sample(Rng &rng) const;
    /// Every member, sign dropped. Refuses when the cardinality exceeds `cap`.
    std::vector<PauliOp> members(size_t cap = size_t{1} << 22) const;

    /// Canonical text used for equality and hashing of ensembles.
    std::string key() const;

    /// Ensemble members pulled back into the bare product frame (frame inverse applied).
    PauliOp unframe(const PauliOp &p) const;

    struct Compiled {
        FactorKind kind;
        std::vector<uint64_t> mask;
        PauliOp embedded;
        std::shared_ptr<const std::vector<double>> chi_by_weight;
    };
    const std::vector<Compiled> &compiled() const {
        return compiled_;
    }

   private:
    size_t n_ = 0;
    std::vector<EnsembleFactor> factors_;
    std::shared_ptr<const Frame> frame_;
    std::vector<Compiled> compiled_;
};

/// Number of n-qubit Paulis with weight at most w: sum_j 3^j binom(m, j).
BigInt weight_at_most_count(size_t m, size_t w);

/// Exact |E_1 ∩ ... ∩ E_k|. Throws UnsupportedError when frames differ or non-product registers cross,
/// unless n is small enough to enumerate.
BigInt intersection_cardinality(const std::vector<const PauliEnsemble *> &ensembles);

long double to_long_double(const BigInt &x);

}  // namespace twirlkit

#endif
