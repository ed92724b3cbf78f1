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
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/prep/amplitude.hpp"

namespace qsloc::locate {

/// Planar metres, or (longitude, latitude) degrees when the owning
/// database is CoordinateFrame::Geographic.
struct Location {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Location &, const Location &) = default;
};

enum class CoordinateFrame { Metric, Geographic };

[[nodiscard]] inline std::string_view to_string(CoordinateFrame frame) {
    return frame == CoordinateFrame::Metric ? "metric" : "geographic";
}

[[nodiscard]] inline CoordinateFrame coordinate_frame_from_string(std::string_view name) {
    if (name == "metric") {
        return CoordinateFrame::Metric;
    }
    if (name == "geographic") {
        return CoordinateFrame::Geographic;
    }
    throw ValidationError("unknown coordinate frame '" + std::string(name) + "'");
}

/// Positioning error in metres. Geographic locations use the haversine
/// great-circle distance.
[[nodiscard]] inline double distance_m(const Location &a, const Location &b,
                                       CoordinateFrame frame = CoordinateFrame::Metric) {
    if (frame == CoordinateFrame::Metric) {
        return std::hypot(a.x - b.x, a.y - b.y);
    }
    constexpr double kEarthRadiusM = 6371008.8;
    constexpr double kRad = std::numbers::pi / 180.0;
    const double dlat = (b.y - a.y) * kRad;
    const double dlon = (b.x - a.x) * kRad;
    const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(a.y * kRad) * std::cos(b.y * kRad) * std::sin(dlon / 2) *
                         std::sin(dlon / 2);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

struct FingerprintRecord {
    std::string id;
    Location location;
    /// One dBm reading per station; missing readings hold the sentinel.
    std::vector<double> rss;

    friend bool operator==(const FingerprintRecord &, const FingerprintRecord &) = default;
};

/// Offline radio map: M records over N stations, plus the normalization
/// every query against it must use.
struct FingerprintDb {
    std::vector<std::string> station_ids;
    std::vector<FingerprintRecord> records;
    prep::NormalizationConfig normalization;
    CoordinateFrame frame = CoordinateFrame::Metric;

    [[nodiscard]] std::size_t size() const noexcept { return records.size(); }
    [[nodiscard]] std::size_t num_stations() const noexcept { return station_ids.size(); }

    void validate() const {
        normalization.validate();
        if (records.empty()) {
            throw ValidationError("fingerprint database is empty");
        }
        if (station_ids.empty()) {
            throw ValidationError("fingerprint database has no stations");
        }
        for (const auto &record : records) {
            if (record.rss.size() != station_ids.size()) {
                throw ValidationError("record '" + record.id + "' has " +
                                      std::to_string(record.rss.size()) + " readings, expected " +
                                      std::to_string(station_ids.size()));
            }
            if (!std::isfinite(record.location.x) || !std::isfinite(record.location.y)) {
                throw ValidationError("record '" + record.id + "' has a non-finite location");
            }
        }
    }

    /// Normalized amplitude rows, in record order.
    [[nodiscard]] std::vector<prep::AmplitudeVector> amplitude_rows() const {
        validate();
        std::vector<prep::AmplitudeVector> rows;
        rows.reserve(records.size());
        for (const auto &record : records) {
            try {
                rows.push_back(prep::rss_to_amplitudes(record.rss, normalization));
            } catch (const NoSignalError &) {
                throw NoSignalError("fingerprint record '" + record.id +
                                    "' has no station above the floor");
            }
        }
        return rows;
    }

    /// Normalizes an online sample with this database's configuration.
    [[nodiscard]] prep::AmplitudeVector encode_sample(std::span<const double> rss) const {
        if (rss.size() != station_ids.size()) {
            throw ValidationError("sample has " + std::to_string(rss.size()) +
                                  " readings, database has " +
                                  std::to_string(station_ids.size()) + " stations");
        }
        return prep::rss_to_amplitudes(rss, normalization);
    }

    friend bool operator==(const FingerprintDb &, const FingerprintDb &) = default;
};

} // namespace qsloc::locate
