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

#include <cmath>
#include <numbers>
#include <thread>

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

/// Number of quarter turns in `angle`; throws for non-Clifford angles.
int quarter_turns(double angle) {
    double q = angle / (std::numbers::pi / 4);
    double r = std::round(q);
    if (std::abs(q - r) > 1e-9) {
        throw UnsupportedError("Heisenberg propagation needs rotation angles that are multiples of pi/4.");
    }
    return (int)(((long long)r % 8 + 8) % 8);
}

/// Backward pass through the ideal layers; `noise_factor` sees each noisy layer's frame-local Pauli.
template <typename F>
double propagate(const LogicalCircuit &c, PauliOp p, F &&noise_factor) {
    double f = 1;
    const auto &layers = c.layers();
    size_t rotation_index = c.num_rotation_layers();
    for (size_t i = layers.size(); i-- > 0;) {
        if (const auto *cl = std::get_if<CliffordLayer>(&layers[i])) {
            p = conjugate(cl->inv, p);
            continue;
        }
        const auto &rot = std::get<RotationLayer>(layers[i]);
        rotation_index--;
        conjugate_by_gates_inplace(p, rot.w_gates);
        if (rot.noise) {
            f *= noise_factor(*rot.noise, p, rotation_index);
        }
        if ((quarter_turns(rot.frame_angle) & 1) && p.x(0)) {
            p.set(0, true, !p.z(0));
        }
        conjugate_by_gates_inplace(p, rot.w_inv_gates);
    }
    return f;
}

uint64_t splitmix(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

LogicalCircuit::LogicalCircuit(size_t n) : n_(n) {
    if (n == 0) {
        throw ValidationError("Circuit needs n >= 1.");
    }
}

size_t LogicalCircuit::num_rotation_layers() const {
    size_t count = 0;
    for (const auto &l : layers_) {
        count += std::holds_alternative<RotationLayer>(l);
    }
    return count;
}

void LogicalCircuit::add_clifford(const CliffordOp &op) {
    if (op.n != n_) {
        throw DimensionError("Clifford layer size differs from the circuit.");
    }
    layers_.push_back(CliffordLayer{op, inverse(op), {}});
}

void LogicalCircuit::add_clifford_gates(const std::vector<GateSpec> &gates) {
    CliffordOp op = from_gates(n_, gates);
    layers_.push_back(CliffordLayer{op, inverse(op), gates});
}

void LogicalCircuit::add_rotation(const PauliOp &axis, double angle, std::shared_ptr<const NoiseModel> noise) {
    if (axis.n != n_) {
        throw DimensionError("Rotation axis size differs from the circuit.");
    }
    if (noise && noise->n() != n_) {
        throw DimensionError("Noise model size differs from the circuit.");
    }
    if (axis.is_identity_up_to_sign()) {
        throw ValidationError("Rotation axis must be a nonidentity Pauli.");
    }
    RotationLayer r;
    r.axis = axis;
    r.angle = angle;
    r.noise = std::move(noise);
    int sign = 1;
    r.w_gates = gates_mapping_to_z0(axis, &sign);
    r.w_inv_gates = inverse_gates(r.w_gates);
    r.frame_angle = sign * angle;
    layers_.push_back(std::move(r));
}

void LogicalCircuit::append(const LogicalCircuit &other) {
    if (other.n_ != n_) {
        throw DimensionError("Cannot append circuits of different sizes.");
    }
    layers_.insert(layers_.end(), other.layers_.begin(), other.layers_.end());
}

Estimate effective_fidelity(const LogicalCircuit &c, const PauliOp &p, size_t shots, Rng &rng) {
    if (p.n != c.n()) {
        throw DimensionError("Observable size differs from the circuit.");
    }
    if (p.is_identity_up_to_sign()) {
        throw ValidationError("Observable must be a nonidentity Pauli.");
    }
    bool sampled = false;
    for (const auto &l : c.layers()) {
        if (const auto *r = std::get_if<RotationLayer>(&l)) {
            sampled |= r->noise && r->noise->is_sampled();
        }
    }
    if (!sampled) {
        double f = propagate(c, p.unsigned_copy(), [](const NoiseModel &m, const PauliOp &q, size_t) {
            return m.fidelity(q);
        });
        return {f, 0};
    }
    if (shots == 0) {
        throw ValidationError("Sampled twirl modes need shots >= 1.");
    }
    double sum = 0;
    double sum_sq = 0;
    for (size_t s = 0; s < shots; s++) {
        double f = propagate(c, p.unsigned_copy(), [&](const NoiseModel &m, const PauliOp &q, size_t) {
            if (!m.is_sampled()) {
                return m.fidelity(q);
            }
            return m.gadget_fidelity(q, m.sample_gadget(rng));
        });
        sum += f;
        sum_sq += f * f;
    }
    double mean = sum / shots;
    double var = shots > 1 ? std::max(0.0, (sum_sq - shots * mean * mean) / (shots - 1)) : 0;
    return {mean, std::sqrt(var / shots)};
}

PauliOp heisenberg_image(const LogicalCircuit &c, const PauliOp &p) {
    if (p.n != c.n()) {
        throw DimensionError("Observable size differs from the circuit.");
    }
    PauliOp out = p.unsigned_copy();
    const auto &layers = c.layers();
    for (size_t i = layers.size(); i-- > 0;) {
        if (const auto *cl = std::get_if<CliffordLayer>(&layers[i])) {
            out = conjugate(cl->inv, out);
            continue;
        }
        const auto &rot = std::get<RotationLayer>(layers[i]);
        conjugate_by_gates_inplace(out, rot.w_gates);
        if ((quarter_turns(rot.frame_angle) & 1) && out.x(0)) {
            out.set(0, true, !out.z(0));
        }
        conjugate_by_gates_inplace(out, rot.w_inv_gates);
    }
    return out.unsigned_copy();
}

double optimal_rescale_coefficient(const LogicalCircuit &c) {
    double r = 1;
    for (const auto &l : c.layers()) {
        if (const auto *rot = std::get_if<RotationLayer>(&l)) {
            if (rot->noise) {
                r *= rot->noise->strength() / rot->noise->unitarity();
            }
        }
    }
    return r;
}

Rng derived_rng(uint64_t seed, uint64_t index, uint64_t salt) {
    return Rng(splitmix(splitmix(seed ^ splitmix(salt)) + index));
}

Estimate mean_estimate(const std::vector<double> &samples) {
    Estimate e;
    if (samples.empty()) {
        return e;
    }
    double sum = 0;
    for (double x : samples) {
        sum += x;
    }
    e.mean = sum / samples.size();
    if (samples.size() > 1) {
        double ss = 0;
        for (double x : samples) {
            ss += (x - e.mean) * (x - e.mean);
        }
        e.std_error = std::sqrt(ss / (samples.size() - 1) / samples.size());
    }
    return e;
}

void parallel_for(size_t count, size_t threads, const std::function<void(size_t)> &body) {
    threads = std::max<size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (size_t t = 0; t < threads; t++) {
        pool.emplace_back([&, t] {
            try {
                for (size_t i = t; i < count; i += threads) {
                    body(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

BiasResult average_bias(const LogicalCircuit &c, size_t num_paulis, size_t shots, uint64_t seed, size_t threads) {
    if (num_paulis == 0) {
        throw ValidationError("num_paulis must be at least 1.");
    }
    double r = optimal_rescale_coefficient(c);
    std::vector<double> bias(num_paulis);
    parallel_for(num_paulis, threads, [&](size_t i) {
        Rng rng = derived_rng(seed, i);
        PauliOp p = random_pauli(c.n(), true, rng);
        double f = effective_fidelity(c, p, shots, rng).mean;
        bias[i] = std::abs(r * std::abs(f) - 1);
    });
    Estimate e = mean_estimate(bias);
    BiasResult out;
    out.rescale = r;
    out.mean_bias = e.mean;
    out.std_error = e.std_error;
    return out;
}

LogicalCircuit random_clifford_circuit(size_t n, size_t num_layers, std::shared_ptr<const NoiseModel> noise,
                                       Rng &rng) {
    LogicalCircuit c(n);
    PauliOp z0 = PauliOp::single(n, 0, 'Z');
    for (size_t l = 0; l < num_layers; l++) {
        c.add_clifford(random_clifford(n, rng));
        c.add_rotation(z0, 0, noise);
    }
    c.add_clifford(random_clifford(n, rng));
    return c;
}

}  // namespace twirlkit
