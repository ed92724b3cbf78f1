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

#include "qsloc/error.hpp"

namespace qsloc::testbed {

/// Log-distance path loss with log-normal shadowing:
///
///   RSS(d) = tx_power - 10 * exponent * log10(d / d0) + N(0, sigma^2)
///
/// Distances below d0 are clamped to d0. Readings below the noise floor are
/// not heard.
struct PathLossParams {
    double tx_power_dbm = 30.0;
    double path_loss_exponent = 3.0;
    double reference_distance_m = 1.0;
    double shadowing_sigma_db = 6.0;
    double noise_floor_dbm = -110.0;

    void validate() const {
        if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_floor_dbm)) {
            throw ValidationError("path loss powers must be finite");
        }
        if (!(path_loss_exponent > 0.0) || !std::isfinite(path_loss_exponent)) {
            throw ValidationError("path loss exponent must be positive");
        }
        if (!(reference_distance_m > 0.0) || !std::isfinite(reference_distance_m)) {
            throw ValidationError("reference distance must be positive");
        }
        if (!(shadowing_sigma_db >= 0.0) || !std::isfinite(shadowing_sigma_db)) {
            throw ValidationError("shadowing sigma must be non-negative");
        }
    }

    friend bool operator==(const PathLossParams &, const PathLossParams &) = default;
};

/// Mean received power at distance `distance_m`, before shadowing.
[[nodiscard]] inline double mean_rss_dbm(const PathLossParams &params, double distance_m) {
    const double d = std::max(distance_m, params.reference_distance_m);
    return params.tx_power_dbm -
           10.0 * params.path_loss_exponent * std::log10(d / params.reference_distance_m);
}

} // namespace qsloc::testbed
