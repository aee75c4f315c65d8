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

#include "twirlkit/budget.h"

#include <cmath>

#include "twirlkit/errors.h"

namespace twirlkit {

BudgetResult error_budget(const BudgetInput &b) {
    if (!(b.p_th > 0)) {
        throw ValidationError("p_th must be positive.");
    }
    if (b.d % 2 == 0) {
        throw ValidationError("Code distance must be odd.");
    }
    for (double v : {b.p_phys, b.volume, b.p_dis, b.n_t, b.p_rot, b.n_rot}) {
        if (!(v >= 0)) {
            throw ValidationError("Budget inputs must be nonnegative.");
        }
    }
    BudgetResult r;
    // Extended precision so that round inputs give correctly rounded outputs (0.1·0.1^7 is 1e-8 to the bit).
    long double ratio = (long double)b.p_phys / (long double)b.p_th;
    long double pow = 1;
    for (uint64_t k = 0; k < (b.d + 1) / 2; k++) {
        pow *= ratio;
    }
    r.p_dec = (double)(0.1L * pow);
    r.n_dec = (double)b.d * r.p_dec * b.volume;
    r.n_dis = b.p_dis * b.n_t;
    r.n_syn = b.p_rot * b.n_rot;
    r.n_err = r.n_dec + r.n_dis + r.n_syn;
    return r;
}

}  // namespace twirlkit
