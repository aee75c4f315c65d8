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

#ifndef TWIRLKIT_BOUNDS_H
#define TWIRLKIT_BOUNDS_H

#include <cstddef>

namespace twirlkit {

/// 4^n / (4^n − 1), evaluated without overflow.
double white_noise_factor(size_t n);

/// Sampling overhead of rescaling under global white noise: (1 − r·p_err)^{−2L}.
double overhead_rescaling(double p_err, double num_layers, size_t n);

/// Probabilistic error cancellation overhead (1 + 2·p_err)^{2L}.
double overhead_pec(double p_err, double num_layers);

/// First-order lower bound (1 + r·2·p_err)^L − (2^n − 2)/(4^n − 1).
double overhead_lower_bound(double p_err, double num_layers, size_t n);

/// Expected rescaled bias bound sqrt((2^n − 1)/(2^n + 1)·(1 − (s²/u)^L)) under random Clifford layers.
double whitenoise_bias_bound(double s, double u, double num_layers, size_t n);

/// Leading-order bias v·p_tot/√L.
double distance_bias_bound(double v, double p_tot, double num_layers);

}  // namespace twirlkit

#endif
