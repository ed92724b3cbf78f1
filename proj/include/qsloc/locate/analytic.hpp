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

/**
 * @file analytic.hpp
 * Closed-form measurement statistics of the positioning circuit.
 *
 * The swap test leaves the ancilla at |0> with probability
 * 1/2 + |<psi|phi_j>|^2 / 2 once the index register reads j, and every
 * index is read with probability 1/M. This is the exact infinite-shot
 * reference the simulator is checked against.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/prep/amplitude.hpp"

namespace qsloc::locate {

struct AnalyticDistribution {
    /// |<psi|phi_j>|
    std::vector<double> cosines;
    /// p(a = 0 | i = j)
    std::vector<double> conditional;
    /// p(a = 0, i = j) and p(a = 1, i = j)
    std::vector<double> joint_zero;
    std::vector<double> joint_one;

    [[nodiscard]] std::size_t size() const noexcept { return cosines.size(); }

    [[nodiscard]] double joint(int ancilla, std::size_t j) const {
        return ancilla == 0 ? joint_zero.at(j) : joint_one.at(j);
    }

    /// p(i = j)
    [[nodiscard]] double index_marginal(std::size_t j) const {
        return joint_zero.at(j) + joint_one.at(j);
    }
};

/// Swap-test acceptance probability for overlap magnitude `cosine`.
[[nodiscard]] constexpr double conditional_from_cosine(double cosine) noexcept {
    return 0.5 + 0.5 * cosine * cosine;
}

[[nodiscard]] inline AnalyticDistribution
analytic_distribution(const prep::AmplitudeVector &psi,
                      std::span<const prep::AmplitudeVector> rows) {
    if (rows.empty()) {
        throw ValidationError("analytic distribution needs at least one row");
    }
    const double inv_m = 1.0 / static_cast<double>(rows.size());
    AnalyticDistribution out;
    out.cosines.reserve(rows.size());
    for (const auto &row : rows) {
        if (row.size() != psi.size()) {
            throw ValidationError("sample and fingerprint rows differ in length");
        }
        const double cosine = std::abs(prep::dot(psi, row));
        const double p0 = conditional_from_cosine(cosine);
        out.cosines.push_back(cosine);
        out.conditional.push_back(p0);
        out.joint_zero.push_back(p0 * inv_m);
        out.joint_one.push_back((1.0 - p0) * inv_m);
    }
    return out;
}

} // namespace qsloc::locate
