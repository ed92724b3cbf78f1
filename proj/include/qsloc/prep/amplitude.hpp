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
 * @file amplitude.hpp
 * Unit-norm non-negative amplitude vectors and the RSS -> amplitude map.
 */
#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsloc/error.hpp"

namespace qsloc::prep {

/// Length 2^n, entries >= 0, sum of squares 1 within 1e-10.
class AmplitudeVector {
  public:
    static constexpr double kNormTolerance = 1e-10;

    /// Validates without rescaling.
    static AmplitudeVector from_unit(std::vector<double> values) {
        check_shape(values);
        double total = 0.0;
        for (double v : values) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ValidationError("amplitudes must be finite and non-negative");
            }
            total += v * v;
        }
        if (std::abs(total - 1.0) > kNormTolerance) {
            throw ValidationError("amplitude vector is not unit norm (sum of squares " +
                                  std::to_string(total) + ")");
        }
        return AmplitudeVector(std::move(values));
    }

    /// Zero-pads to the next power of two and L2-normalizes.
    static AmplitudeVector normalize(std::vector<double> values) {
        if (values.empty()) {
            throw ValidationError("amplitude vector must not be empty");
        }
        values.resize(std::bit_ceil(values.size()), 0.0);
        double total = 0.0;
        for (double v : values) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ValidationError("amplitudes must be finite and non-negative");
            }
            total += v * v;
        }
        if (total <= 0.0) {
            throw NoSignalError("cannot normalize an all-zero vector");
        }
        const double scale = 1.0 / std::sqrt(total);
        for (double &v : values) {
            v *= scale;
        }
        return AmplitudeVector(std::move(values));
    }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] int num_qubits() const noexcept {
        return std::countr_zero(values_.size());
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const AmplitudeVector &, const AmplitudeVector &) = default;

  private:
    explicit AmplitudeVector(std::vector<double> values) : values_(std::move(values)) {}

    static void check_shape(const std::vector<double> &values) {
        if (values.empty() || !std::has_single_bit(values.size())) {
            throw ValidationError("amplitude vector length must be a power of two");
        }
    }

    std::vector<double> values_;
};

/// Real inner product <a|b>.
[[nodiscard]] inline double dot(const AmplitudeVector &a, const AmplitudeVector &b) {
    if (a.size() != b.size()) {
        throw ValidationError("inner product of vectors with different lengths");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += a[i] * b[i];
    }
    return total;
}

enum class AmplitudeMap {
    /// max(rss - floor, 0)
    FloorShift,
    /// received power in mW, 0 at or below the floor
    LinearMilliwatt,
};

[[nodiscard]] inline std::string_view to_string(AmplitudeMap map) {
    return map == AmplitudeMap::FloorShift ? "floor_shift" : "linear_mw";
}

[[nodiscard]] inline AmplitudeMap amplitude_map_from_string(std::string_view name) {
    if (name == "floor_shift") {
        return AmplitudeMap::FloorShift;
    }
    if (name == "linear_mw") {
        return AmplitudeMap::LinearMilliwatt;
    }
    throw ValidationError("unknown amplitude map '" + std::string(name) + "'");
}

/// How raw dBm readings become amplitudes. Shared by the fingerprint and
/// online samples of one dataset.
struct NormalizationConfig {
    double floor_dbm = -110.0;
    /// Readings at or below this value mean "station not heard".
    double sentinel_dbm = -200.0;
    AmplitudeMap map = AmplitudeMap::FloorShift;

    void validate() const {
        if (!std::isfinite(floor_dbm) || !std::isfinite(sentinel_dbm)) {
            throw ValidationError("normalization bounds must be finite");
        }
        if (!(sentinel_dbm < floor_dbm)) {
            throw ValidationError("sentinel must lie below the floor");
        }
    }

    friend bool operator==(const NormalizationConfig &, const NormalizationConfig &) = default;
};

[[nodiscard]] inline bool is_missing(double rss_dbm, const NormalizationConfig &cfg) {
    return std::isnan(rss_dbm) || rss_dbm <= cfg.sentinel_dbm;
}

/// Maps N dBm readings to a unit amplitude vector of length 2^ceil(log2 N).
/// Throws NoSignalError when nothing survives the floor.
[[nodiscard]] inline AmplitudeVector rss_to_amplitudes(std::span<const double> rss,
                                                       const NormalizationConfig &cfg = {}) {
    cfg.validate();
    if (rss.empty()) {
        throw ValidationError("RSS vector must not be empty");
    }
    std::vector<double> shifted(rss.size(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < rss.size(); ++i) {
        const double value = rss[i];
        if (is_missing(value, cfg) || value <= cfg.floor_dbm) {
            continue;
        }
        if (!std::isfinite(value)) {
            throw ValidationError("RSS reading is not finite");
        }
        shifted[i] = cfg.map == AmplitudeMap::FloorShift ? value - cfg.floor_dbm
                                                         : std::pow(10.0, value / 10.0);
        any = any || shifted[i] > 0.0;
    }
    if (!any) {
        throw NoSignalError("no station above the " + std::to_string(cfg.floor_dbm) +
                            " dBm floor");
    }
    return AmplitudeVector::normalize(std::move(shifted));
}

} // namespace qsloc::prep
