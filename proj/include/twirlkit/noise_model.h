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

#ifndef TWIRLKIT_NOISE_MODEL_H
#define TWIRLKIT_NOISE_MODEL_H

#include <string>
#include <vector>

#include "twirlkit/channel.h"
#include "twirlkit/twirl_sampler.h"

namespace twirlkit {

enum class TwirlMode { None, Full, KSparse, AnalyticFull, AnalyticKSparse };

const char *twirl_mode_name(TwirlMode mode);
TwirlMode twirl_mode_from_name(const std::string &name);

/// Where the gadget's local depolarizing noise acts: after D, after D†, or both.
enum class GadgetNoisePlacement { Both, AfterD, AfterDdag };

const char *gadget_noise_placement_name(GadgetNoisePlacement p);
GadgetNoisePlacement gadget_noise_placement_from_name(const std::string &name);

struct NoiseModelOptions {
    TwirlMode mode = TwirlMode::None;
    size_t k = 0;
    /// Local depolarizing probability per supported gadget qubit.
    double p_d = 0;
    GadgetNoisePlacement placement = GadgetNoisePlacement::Both;
    /// Sampled modes use the exact gadget average instead of per-shot draws.
    bool exact_gadget_average = false;
};

/// Noise attached to a rotation layer, expressed in the frame where the rotation acts on qubit 0.
class NoiseModel {
   public:
    NoiseModel(PauliChannel base, NoiseModelOptions options = {});

    size_t n() const {
        return base_.n();
    }
    const PauliChannel &base() const {
        return base_;
    }
    /// The base channel, or its exact twirl for every twirl mode (gadget noise not included).
    const PauliChannel &twirled() const {
        return twirled_;
    }
    const NoiseModelOptions &options() const {
        return options_;
    }

    /// True when fidelities must be sampled gadget by gadget.
    bool is_sampled() const;

    /// Layer-averaged Pauli fidelity at p (p in the rotation frame). Not valid for sampled models.
    double fidelity(const PauliOp &p) const;

    /// Fidelity for one drawn gadget, including its local depolarizing factors.
    double gadget_fidelity(const PauliOp &p, const TwirlGadget &gadget) const;

    TwirlGadget sample_gadget(Rng &rng) const;

    /// Average noise strength and unitarity of the layer-averaged channel.
    double strength() const {
        return s_;
    }
    double unitarity() const {
        return u_;
    }

    /// Fidelity table indexed by [qubit-0 letter as x + 2z][weight on qubits 1..n-1], if available.
    const std::vector<std::vector<double>> &table() const {
        return table_;
    }

   private:
    void build_table_from_channel(const PauliChannel &ch);
    void build_gadget_table();
    void set_strength_from_table();

    PauliChannel base_;
    PauliChannel twirled_;
    NoiseModelOptions options_;
    std::vector<std::vector<double>> table_;
    double s_ = 1;
    double u_ = 1;
};

/// True when every atom of ch is a Point supported on qubit 0 only.
bool is_local_to_first_qubit(const PauliChannel &ch);

}  // namespace twirlkit

#endif
