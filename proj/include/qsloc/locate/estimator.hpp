// Copyright 2026 The qsloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "qsloc/error.hpp"
#include "qsloc/qsim/shot_counts.hpp"

namespace qsloc::locate {

/// sqrt(2p - 1), with 2p - 1 clamped to [0, 1]. Sampling noise can push an
/// estimated p below 1/2.
[[nodiscard]] inline double similarity_from_conditional(double p) noexcept {
    return std::sqrt(std::clamp(2.0 * p - 1.0, 0.0, 1.0));
}

/// Estimated p(a = 0 | i = j) = count(a=0, i=j) / count(i=j).
[[nodiscard]] inline double estimated_conditional(const qsim::ShotCounts &counts,
                                                  std::size_t j) {
    const std::uint64_t seen = counts.index_count(j);
    if (seen == 0) {
        throw IndexNeverObservedError(j);
    }
    return static_cast<double>(counts.count(0, j)) / static_cast<double>(seen);
}

/// Cosine-similarity estimate for index j from shot counts.
[[nodiscard]] inline double counts_to_similarity(const qsim::ShotCounts &counts,
                                                 std::size_t j) {
    return similarity_from_conditional(estimated_conditional(counts, j));
}

/// First index holding the maximum. NaN entries never win.
template <typename T>
[[nodiscard]] std::size_t argmax_lowest(std::span<const T> values) {
    if (values.empty()) {
        throw ValidationError("argmax of an empty range");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best] || (values[best] != values[best] && values[i] == values[i])) {
            best = i;
        }
    }
    return best;
}

} // namespace qsloc::locate
