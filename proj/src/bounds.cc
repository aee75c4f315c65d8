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

#include "twirlkit/bounds.h"

#include <cmath>

#include "twirlkit/errors.h"

namespace twirlkit {

namespace {

void check_probability(double p) {
    if (!(p >= 0 && p < 1)) {
        throw ValidationError("Error probability must lie in [0, 1).");
    }
}

void check_layers(double l) {
    if (!(l >= 0)) {
        throw ValidationError("Layer count must be nonnegative.");
    }
}

}  // namespace

double white_noise_factor(size_t n) {
    if (n == 0) {
        throw ValidationError("n must be at least 1.");
    }
    return 1 / -std::expm1(-2.0 * (double)n * std::log(2.0));
}

double overhead_rescaling(double p_err, double num_layers, size_t n) {
    check_probability(p_err);
    check_layers(num_layers);
    double x = white_noise_factor(n) * p_err;
    if (x >= 1) {
        throw ValidationError("White-noise rescaling is singular at this error rate.");
    }
    return std::exp(-2 * num_layers * std::log1p(-x));
}

double overhead_pec(double p_err, double num_layers) {
    check_probability(p_err);
    check_layers(num_layers);
    return std::exp(2 * num_layers * std::log1p(2 * p_err));
}

double overhead_lower_bound(double p_err, double num_layers, size_t n) {
    check_probability(p_err);
    check_layers(num_layers);
    double r = white_noise_factor(n);
    double offset = n >= 64 ? 0 : (std::ldexp(1.0, (int)n) - 2) / (std::ldexp(1.0, 2 * (int)n) - 1);
    return std::exp(num_layers * std::log1p(2 * r * p_err)) - offset;
}

double whitenoise_bias_bound(double s, double u, double num_layers, size_t n) {
    if (!(u > 0 && u <= 1) || !(s >= 0 && s <= 1)) {
        throw ValidationError("Need 0 < u <= 1 and 0 <= s <= 1.");
    }
    check_layers(num_layers);
    double ratio = n >= 64 ? 1 : (std::ldexp(1.0, (int)n) - 1) / (std::ldexp(1.0, (int)n) + 1);
    double decay = std::pow(s * s / u, num_layers);
    return std::sqrt(ratio * std::max(0.0, 1 - decay));
}

double distance_bias_bound(double v, double p_tot, double num_layers) {
    if (!(num_layers > 0)) {
        throw ValidationError("Layer count must be positive.");
    }
    return v * p_tot / std::sqrt(num_layers);
}

}  // namespace twirlkit
