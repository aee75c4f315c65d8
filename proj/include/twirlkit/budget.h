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

#ifndef TWIRLKIT_BUDGET_H
#define TWIRLKIT_BUDGET_H

#include <cstdint>

namespace twirlkit {

/// Fault-tolerant resource inputs for the logical error budget.
struct BudgetInput {
    double p_phys = 0;
    double p_th = 0;
    uint64_t d = 1;
    double volume = 0;
    double p_dis = 0;
    double n_t = 0;
    double p_rot = 0;
    double n_rot = 0;
};

struct BudgetResult {
    double p_dec = 0;
    double n_dec = 0;
    double n_dis = 0;
    double n_syn = 0;
    double n_err = 0;
};

/// p_dec = 0.1·(p_phys/p_th)^{(d+1)/2}, N_dec = d·p_dec·V, N_dis = p_dis·n_T, N_syn = p_rot·N_rot.
/// Throws ValidationError for an even distance, p_th <= 0 or negative inputs.
BudgetResult error_budget(const BudgetInput &b);

}  // namespace twirlkit

#endif
