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
 * @file dataset.hpp
 * Synthetic RSS testbed: station placement, jittered-grid fingerprint
 * survey and held-out online samples.
 *
 * Each part of the dataset draws from its own stream derived from the
 * seed, so regenerating with a different M reproduces the same stations
 * and test samples.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/locate/fingerprint_db.hpp"
#include "qsloc/prep/amplitude.hpp"
#include "qsloc/qsim/rng.hpp"
#include "qsloc/testbed/path_loss.hpp"

namespace qsloc::testbed {

using locate::FingerprintDb;
using locate::FingerprintRecord;
using locate::Location;

struct Area {
    double width_m = 0.0;
    double height_m = 0.0;

    void validate() const {
        if (!(width_m > 0.0) || !(height_m > 0.0) || !std::isfinite(width_m) ||
            !std::isfinite(height_m)) {
            throw ValidationError("area must have positive finite width and height");
        }
    }

    friend bool operator==(const Area &, const Area &) = default;
};

struct Station {
    std::string id;
    Location location;

    friend bool operator==(const Station &, const Station &) = default;
};

/// Generation inputs, kept so sweeps can regenerate parts of a dataset.
struct Provenance {
    std::uint64_t seed = 0;
    PathLossParams path_loss;

    friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct Dataset {
    Area area;
    std::vector<Station> stations;
    FingerprintDb fingerprint;
    /// Held-out online samples; same station order and normalization as
    /// the fingerprint.
    std::vector<FingerprintRecord> test_samples;
    std::optional<Provenance> provenance;

    void validate() const {
        fingerprint.validate();
        if (stations.size() != fingerprint.num_stations()) {
            throw ValidationError("station list does not match fingerprint columns");
        }
        for (std::size_t i = 0; i < stations.size(); ++i) {
            if (stations[i].id != fingerprint.station_ids[i]) {
                throw ValidationError("station '" + stations[i].id +
                                      "' does not match fingerprint column '" +
                                      fingerprint.station_ids[i] + "'");
            }
        }
        for (const auto &sample : test_samples) {
            if (sample.rss.size() != stations.size()) {
                throw ValidationError("test sample '" + sample.id +
                                      "' has the wrong number of readings");
            }
        }
    }

    friend bool operator==(const Dataset &, const Dataset &) = default;
};

namespace detail {

enum : std::uint64_t {
    kStationStream = 1,
    kGridStream = 2,
    kFingerprintShadowStream = 3,
    kTestStream = 4,
};

inline std::string numbered(const char *prefix, std::size_t i, std::size_t count) {
    const int width = count <= 100 ? 2 : static_cast<int>(std::to_string(count - 1).size());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i);
    return buf;
}

} // namespace detail

/// One RSS reading per station at `where`. Unheard stations get the
/// sentinel. With zero shadowing the result depends on distance only.
[[nodiscard]] inline std::vector<double> synthesize_rss(const Location &where,
                                                        std::span<const Station> stations,
                                                        const PathLossParams &params,
                                                        double sentinel_dbm, qsim::Rng &rng) {
    std::vector<double> rss;
    rss.reserve(stations.size());
    for (const auto &station : stations) {
        const double d = locate::distance_m(where, station.location);
        const double value = mean_rss_dbm(params, d) + params.shadowing_sigma_db * rng.normal();
        rss.push_back(value < params.noise_floor_dbm ? sentinel_dbm : value);
    }
    return rss;
}

/// Stations uniform over the area.
[[nodiscard]] inline std::vector<Station> place_stations(const Area &area, std::size_t count,
                                                         std::uint64_t seed) {
    qsim::Rng rng(qsim::derive_seed(seed, detail::kStationStream));
    std::vector<Station> stations;
    stations.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = rng.uniform(0.0, area.width_m);
        const double y = rng.uniform(0.0, area.height_m);
        stations.push_back({detail::numbered("bs", i, count), {x, y}});
    }
    return stations;
}

/// M survey points, one per cell of a cols x rows grid (cells spread evenly
/// when the grid has spare cells), each uniform within its cell.
[[nodiscard]] inline std::vector<Location> jittered_grid(const Area &area, std::size_t count,
                                                         std::uint64_t seed) {
    if (static_cast<double>(count) > std::floor(area.width_m) * std::floor(area.height_m)) {
        throw ValidationError("more fingerprint locations than 1 m^2 grid cells in the area");
    }
    const auto cols = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(count) * area.width_m / area.height_m)));
    const std::size_t grid_cols = std::max<std::size_t>(cols, 1);
    const std::size_t grid_rows = (count + grid_cols - 1) / grid_cols;
    const std::size_t cells = grid_cols * grid_rows;
    const double cell_w = area.width_m / static_cast<double>(grid_cols);
    const double cell_h = area.height_m / static_cast<double>(grid_rows);

    qsim::Rng rng(qsim::derive_seed(seed, detail::kGridStream));
    std::vector<Location> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t cell = i * cells / count;
        const auto r = static_cast<double>(cell / grid_cols);
        const auto c = static_cast<double>(cell % grid_cols);
        const double x = (c + rng.uniform()) * cell_w;
        const double y = (r + rng.uniform()) * cell_h;
        points.push_back({x, y});
    }
    return points;
}

/// Fingerprint survey of `count` points against `stations`.
[[nodiscard]] inline FingerprintDb survey_fingerprint(const Area &area,
                                                      std::span<const Station> stations,
                                                      std::size_t count,
                                                      const PathLossParams &params,
                                                      const prep::NormalizationConfig &normalization,
                                                      std::uint64_t seed) {
    FingerprintDb db;
    db.normalization = normalization;
    for (const auto &station : stations) {
        db.station_ids.push_back(station.id);
    }
    const auto points = jittered_grid(area, count, seed);
    qsim::Rng shadow(qsim::derive_seed(seed, detail::kFingerprintShadowStream));
    for (std::size_t i = 0; i < points.size(); ++i) {
        db.records.push_back({detail::numbered("fp", i, count), points[i],
                              synthesize_rss(points[i], stations, params,
                                             normalization.sentinel_dbm, shadow)});
    }
    return db;
}

[[nodiscard]] inline Dataset generate_synthetic(const Area &area, std::size_t num_stations,
                                                std::size_t num_fingerprints,
                                                std::size_t num_test,
                                                const PathLossParams &params, std::uint64_t seed,
                                                const prep::NormalizationConfig &normalization = {}) {
    area.validate();
    params.validate();
    normalization.validate();
    if (num_stations == 0 || num_fingerprints == 0 || num_test == 0) {
        throw ValidationError("N, M and the test-set size must all be at least 1");
    }
    Dataset ds;
    ds.area = area;
    ds.provenance = Provenance{seed, params};
    ds.stations = place_stations(area, num_stations, seed);
    ds.fingerprint =
        survey_fingerprint(area, ds.stations, num_fingerprints, params, normalization, seed);

    qsim::Rng test_rng(qsim::derive_seed(seed, detail::kTestStream));
    for (std::size_t i = 0; i < num_test; ++i) {
        const Location where{test_rng.uniform(0.0, area.width_m),
                             test_rng.uniform(0.0, area.height_m)};
        ds.test_samples.push_back({detail::numbered("t", i, num_test), where,
                                   synthesize_rss(where, ds.stations, params,
                                                  normalization.sentinel_dbm, test_rng)});
    }
    return ds;
}

/// Same stations and test samples, fingerprint regenerated with `count`
/// points. Requires generation provenance.
[[nodiscard]] inline Dataset with_fingerprint_count(const Dataset &ds, std::size_t count) {
    if (!ds.provenance) {
        throw ValidationError("dataset has no generation provenance; cannot resize fingerprint");
    }
    if (count == 0) {
        throw ValidationError("fingerprint count must be at least 1");
    }
    Dataset out = ds;
    out.fingerprint = survey_fingerprint(ds.area, ds.stations, count, ds.provenance->path_loss,
                                         ds.fingerprint.normalization, ds.provenance->seed);
    out.fingerprint.frame = ds.fingerprint.frame;
    return out;
}

/// First `count` stations only, applied to fingerprint and test samples.
[[nodiscard]] inline Dataset with_station_count(const Dataset &ds, std::size_t count) {
    if (count == 0 || count > ds.stations.size()) {
        throw ValidationError("station count must be in [1, " +
                              std::to_string(ds.stations.size()) + "]");
    }
    Dataset out = ds;
    out.stations.resize(count);
    out.fingerprint.station_ids.resize(count);
    for (auto &record : out.fingerprint.records) {
        record.rss.resize(count);
    }
    for (auto &sample : out.test_samples) {
        sample.rss.resize(count);
    }
    return out;
}

} // namespace qsloc::testbed
