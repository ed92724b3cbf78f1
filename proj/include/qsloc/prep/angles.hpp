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

#include <cmath>
#include <cstddef>
#include <vector>

#include "qsloc/prep/amplitude.hpp"

namespace qsloc::prep {

/// Rotation angles of a binary-tree amplitude decomposition.
///
/// Node p of level k covers the amplitudes whose top k index bits equal p
/// (most significant bit first), so levels[k] holds 2^k angles. Each angle
/// splits its node's weight between the left (next bit 0) and right (next
/// bit 1) halves as cos(theta/2), sin(theta/2).
struct AngleSchedule {
    std::vector<std::vector<double>> levels;

    [[nodiscard]] int num_qubits() const noexcept { return static_cast<int>(levels.size()); }

    friend bool operator==(const AngleSchedule &, const AngleSchedule &) = default;
};

/// theta = 2 atan2(|right subtree|, |left subtree|) at every node. All
/// angles fall in [0, pi] for non-negative amplitudes; an all-zero subtree
/// gets angle 0.
[[nodiscard]] inline AngleSchedule angles_from_amplitudes(const AmplitudeVector &amps) {
    const int n = amps.num_qubits();
    // weights[k][p]: squared norm of node p at level k; level n holds the
    // squared amplitudes themselves.
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(n) + 1);
    weights[n].resize(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        weights[n][i] = amps[i] * amps[i];
    }
    for (int k = n - 1; k >= 0; --k) {
        const auto &below = weights[k + 1];
        weights[k].resize(below.size() / 2);
        for (std::size_t p = 0; p < weights[k].size(); ++p) {
            weights[k][p] = below[2 * p] + below[2 * p + 1];
        }
    }
    AngleSchedule schedule;
    schedule.levels.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto &children = weights[k + 1];
        auto &level = schedule.levels[k];
        level.resize(std::size_t{1} << k);
        for (std::size_t p = 0; p < level.size(); ++p) {
            level[p] = 2.0 * std::atan2(std::sqrt(children[2 * p + 1]),
                                        std::sqrt(children[2 * p]));
        }
    }
    return schedule;
}

/// Inverse of angles_from_amplitudes for non-negative targets.
[[nodiscard]] inline std::vector<double> amplitudes_from_angles(const AngleSchedule &schedule) {
    std::vector<double> current{1.0};
    for (const auto &level : schedule.levels) {
        if (level.size() != current.size()) {
            throw ValidationError("angle schedule level has the wrong width");
        }
        std::vector<double> next(current.size() * 2);
        for (std::size_t p = 0; p < current.size(); ++p) {
            next[2 * p] = current[p] * std::cos(level[p] / 2.0);
            next[2 * p + 1] = current[p] * std::sin(level[p] / 2.0);
        }
        current = std::move(next);
    }
    return current;
}

} // namespace qsloc::prep
