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

#ifndef TWIRLKIT_TESTS_STATS_UTIL_TEST_H
#define TWIRLKIT_TESTS_STATS_UTIL_TEST_H

#include <boost/math/distributions/chi_squared.hpp>
#include <vector>

namespace twirlkit::testing {

/// Pearson chi-square p-value of observed counts against expected probabilities.
inline double chi_square_pvalue(const std::vector<double> &counts, const std::vector<double> &probs) {
    double total = 0;
    for (double c : counts) {
        total += c;
    }
    double stat = 0;
    for (size_t k = 0; k < counts.size(); k++) {
        double e = total * probs[k];
        stat += (counts[k] - e) * (counts[k] - e) / e;
    }
    boost::math::chi_squared dist((double)counts.size() - 1);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

inline double chi_square_uniform_pvalue(const std::vector<double> &counts) {
    return chi_square_pvalue(counts, std::vector<double>(counts.size(), 1.0 / (double)counts.size()));
}

}  // namespace twirlkit::testing

#endif
