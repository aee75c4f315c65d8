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

#ifndef TWIRLKIT_REPORTS_H
#define TWIRLKIT_REPORTS_H

#include <iosfwd>
#include <string>
#include <vector>

#include "twirlkit/config.h"
#include "twirlkit/dense.h"
#include "twirlkit/trotter.h"
#include "twirlkit/twirl_sampler.h"

namespace twirlkit {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const;
};

struct RunOptions {
    uint64_t seed = 1;
    size_t threads = 1;
};

/// Noise on qubit 0 with total error probability p_err, shaped by a {kind, px, py, pz} config object.
/// "custom" weights are normalized to sum to one.
PauliChannel noise_from_config(const Json &noise, size_t n, double p_err);

/// Model of the configured kind on a side × side grid (a chain of `side` sites for Heisenberg1D).
HamiltonianModel model_from_config(const Json &model, size_t side);

NoiseModelOptions twirl_from_config(const Json &twirl);

struct SamplerCheck {
    size_t n = 0;
    SamplerMode mode = SamplerMode::Full;
    size_t k = 0;
    char error = 'X';
    /// Largest entrywise |sampler average − analytic twirl| over the error distribution.
    Rational max_discrepancy;
    /// The averaged distribution equals the input error itself.
    bool fixed_point = false;
};

/// Exact comparison of the enumerated sampler against the analytic twirl for a single error on qubit 0.
/// Throws CapExceededError for n > 4.
SamplerCheck verify_sampler_twirl(size_t n, SamplerMode mode, size_t k, char error);

struct WhiteNoiseBiasRow {
    size_t n = 0;
    size_t layers = 0;
    Estimate bias;
    double rescale = 1;
    /// Closed-form bound on the expected bias for uniformly random Clifford layers.
    double bound = 0;
    /// Leading-order estimate v·p_tot/√L.
    double distance_bound = 0;
};

/// Mean of |R·f − 1| over `draws` circuits of uniformly random Clifford layers, each followed by the
/// configured noise at p_err = p_tot / layers, with one random observable per draw.
WhiteNoiseBiasRow white_noise_bias_run(const Json &noise, size_t n, size_t layers, double p_tot, size_t draws,
                                       uint64_t seed, size_t threads = 1);

/// Hash of a loaded config with the effective seed filled in. Thread counts are excluded.
std::string run_config_hash(const Json &config, uint64_t seed);

/// Runs a subcommand on a loaded config (see load_config). The first CSV column echoes the config hash.
CsvTable run_subcommand(const std::string &subcommand, const Json &config, const RunOptions &options);

/// Command-line entry point. Returns 0 on success, 2 for configuration errors, 3 when a size cap is
/// exceeded and 1 otherwise.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// git-describe style version string baked in at configure time.
const char *twirlkit_version();

}  // namespace twirlkit

#endif
