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
 * @file eval.hpp
 * Batch evaluation of positioning methods over a dataset's test samples,
 * optionally swept over M, N, K or the depolarizing level.
 *
 * Every (sweep point, query) pair is an independent task. Sampled-method
 * seeds depend only on (master seed, seed index, query index), so sweep
 * points see common random numbers and row order never depends on
 * scheduling.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/harness/parallel.hpp"
#include "qsloc/locate/locator.hpp"
#include "qsloc/qsim/rng.hpp"
#include "qsloc/qsim/simulator.hpp"
#include "qsloc/testbed/dataset.hpp"
#include "qsloc/testbed/dataset_io.hpp"

namespace qsloc::harness {

using locate::Method;

enum class SweepAxis { None, M, N, K, Noise };

[[nodiscard]] inline std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::None:
        return "none";
    case SweepAxis::M:
        return "m";
    case SweepAxis::N:
        return "n";
    case SweepAxis::K:
        return "k";
    case SweepAxis::Noise:
        return "noise";
    }
    return "unknown";
}

[[nodiscard]] inline SweepAxis sweep_axis_from_string(std::string_view name) {
    for (auto axis : {SweepAxis::None, SweepAxis::M, SweepAxis::N, SweepAxis::K,
                      SweepAxis::Noise}) {
        if (name == to_string(axis)) {
            return axis;
        }
    }
    throw ValidationError("unknown sweep axis '" + std::string(name) +
                          "' (expected none, m, n, k or noise)");
}

struct EvalConfig {
    std::vector<Method> methods{Method::QuantumSampled, Method::Classical};
    SweepAxis sweep = SweepAxis::None;
    /// Ignored when sweep is None.
    std::vector<double> sweep_values;
    std::uint64_t shots = 1024;
    std::size_t seeds = 1;
    std::uint64_t master_seed = 0;
    /// Base noise; a noise sweep overrides the depolarizing probability.
    qsim::NoiseModel noise;
    qsim::SamplingMode sampling = qsim::SamplingMode::Exact;
    /// 0 means hardware concurrency.
    std::size_t threads = 0;

    void validate() const {
        if (methods.empty()) {
            throw ValidationError("at least one method is required");
        }
        if (shots == 0) {
            throw ValidationError("shot count must be at least 1");
        }
        if (seeds == 0) {
            throw ValidationError("seed count must be at least 1");
        }
        noise.validate();
        if (sweep == SweepAxis::None) {
            return;
        }
        if (sweep_values.empty()) {
            throw ValidationError("sweep over '" + std::string(to_string(sweep)) +
                                  "' needs at least one value");
        }
        for (double v : sweep_values) {
            if (sweep == SweepAxis::Noise) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw ValidationError("noise sweep values must lie in [0, 1]");
                }
            } else if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
                throw ValidationError("sweep values for '" + std::string(to_string(sweep)) +
                                      "' must be positive integers");
            }
        }
    }
};

struct EvalRow {
    std::string query_id;
    std::size_t query_index = 0;
    double sweep_value = 0.0;
    std::size_t seed_index = 0;
    std::uint64_t seed = 0;
    Method method = Method::Classical;
    std::uint64_t shots = 0;
    locate::Location truth;
    locate::Location estimate;
    std::size_t winning_index = 0;
    double error_m = 0.0;
    /// Digest of the normalized query and fingerprint rows this row used.
    std::uint64_t input_hash = 0;

    friend bool operator==(const EvalRow &, const EvalRow &) = default;
};

struct CdfPoint {
    double error_m = 0.0;
    double fraction = 0.0;

    friend bool operator==(const CdfPoint &, const CdfPoint &) = default;
};

struct EvalAggregate {
    Method method = Method::Classical;
    double sweep_value = 0.0;
    std::size_t count = 0;
    double median_m = 0.0;
    double mean_m = 0.0;
    /// Median over queries per seed, then mean over seeds.
    double mean_seed_median_m = 0.0;
    /// Empirical CDF of error_m, starting at (0, 0).
    std::vector<CdfPoint> cdf;

    friend bool operator==(const EvalAggregate &, const EvalAggregate &) = default;
};

struct EvalReport {
    SweepAxis sweep = SweepAxis::None;
    std::vector<EvalRow> rows;
    std::vector<EvalAggregate> aggregates;
    /// Test samples left out because no station was heard.
    std::vector<std::string> skipped_queries;

    /// Aggregate for (method, sweep_value); throws if absent.
    [[nodiscard]] const EvalAggregate &aggregate(Method method, double sweep_value = 0.0) const {
        for (const auto &agg : aggregates) {
            if (agg.method == method && agg.sweep_value == sweep_value) {
                return agg;
            }
        }
        throw ValidationError("no aggregate for method '" + std::string(locate::to_string(method)) +
                              "'");
    }

    friend bool operator==(const EvalReport &, const EvalReport &) = default;
};

[[nodiscard]] inline double median(std::vector<double> values) {
    if (values.empty()) {
        throw ValidationError("median of an empty set");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return 0.5 * (values[mid - 1] + values[mid]);
}

[[nodiscard]] inline std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<CdfPoint> cdf{{0.0, 0.0}};
    const auto n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        cdf.push_back({values[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

namespace detail {

/// FNV-1a over the bit patterns of a sequence of doubles.
class Fnv64 {
  public:
    void add(double value) {
        auto bits = std::bit_cast<std::uint64_t>(value);
        for (int i = 0; i < 8; ++i) {
            hash_ ^= (bits >> (8 * i)) & 0xffU;
            hash_ *= 0x100000001b3ULL;
        }
    }
    [[nodiscard]] std::uint64_t value() const noexcept { return hash_; }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

struct SweepPoint {
    double value = 0.0;
    testbed::Dataset dataset;
    std::vector<prep::AmplitudeVector> rows;
    std::uint64_t rows_hash = 0;
    std::uint64_t shots = 0;
    qsim::NoiseModel noise;
};

inline SweepPoint make_point(const testbed::Dataset &ds, const EvalConfig &cfg, double value) {
    SweepPoint point;
    point.value = value;
    point.shots = cfg.shots;
    point.noise = cfg.noise;
    switch (cfg.sweep) {
    case SweepAxis::None:
        point.dataset = ds;
        break;
    case SweepAxis::M:
        point.dataset = testbed::with_fingerprint_count(ds, static_cast<std::size_t>(value));
        break;
    case SweepAxis::N:
        point.dataset = testbed::with_station_count(ds, static_cast<std::size_t>(value));
        break;
    case SweepAxis::K:
        point.dataset = ds;
        point.shots = static_cast<std::uint64_t>(value);
        break;
    case SweepAxis::Noise:
        point.dataset = ds;
        point.noise.depolarizing_prob = value;
        break;
    }
    point.rows = point.dataset.fingerprint.amplitude_rows();
    Fnv64 h;
    for (const auto &row : point.rows) {
        for (double v : row.values()) {
            h.add(v);
        }
    }
    point.rows_hash = h.value();
    return point;
}

} // namespace detail

/// Runs every configured method on every test sample at every sweep point
/// for `cfg.seeds` seeds. Rows come out ordered by (query, sweep point,
/// seed, method as configured).
[[nodiscard]] inline EvalReport evaluate(const testbed::Dataset &ds, const EvalConfig &cfg) {
    cfg.validate();
    ds.validate();
    if (ds.test_samples.empty()) {
        throw ValidationError("dataset has no test samples");
    }

    std::vector<double> values =
        cfg.sweep == SweepAxis::None ? std::vector<double>{0.0} : cfg.sweep_values;
    std::vector<detail::SweepPoint> points;
    points.reserve(values.size());
    for (double v : values) {
        points.push_back(detail::make_point(ds, cfg, v));
    }

    // Normalization is identical at every point except under an N sweep,
    // so queries are encoded per point.
    const std::size_t queries = ds.test_samples.size();
    const std::size_t per_task = cfg.seeds * cfg.methods.size();
    std::vector<std::vector<EvalRow>> task_rows(queries * points.size());
    std::vector<char> no_signal(queries * points.size(), 0);

    parallel_for(task_rows.size(), cfg.threads, [&](std::size_t task) {
        const std::size_t q = task / points.size();
        const std::size_t p = task % points.size();
        const auto &point = points[p];
        const auto &sample = point.dataset.test_samples[q];
        std::optional<prep::AmplitudeVector> psi;
        try {
            psi = point.dataset.fingerprint.encode_sample(sample.rss);
        } catch (const NoSignalError &) {
            no_signal[task] = 1;
            return;
        }
        detail::Fnv64 h;
        for (double v : psi->values()) {
            h.add(v);
        }
        h.add(std::bit_cast<double>(point.rows_hash));
        const std::uint64_t input_hash = h.value();

        auto &out = task_rows[task];
        out.reserve(per_task);
        for (std::size_t s = 0; s < cfg.seeds; ++s) {
            const std::uint64_t seed = qsim::derive_seed(cfg.master_seed, s, q);
            locate::QuantumOptions qopts;
            qopts.shots = point.shots;
            qopts.seed = seed;
            qopts.sampling.mode = cfg.sampling;
            if (point.noise.has_gate_noise() || point.noise.has_readout_noise()) {
                qopts.sampling.noise = point.noise;
            }
            for (Method method : cfg.methods) {
                const auto est = locate::locate(method, point.dataset.fingerprint, point.rows,
                                                *psi, qopts);
                EvalRow row;
                row.query_id = sample.id;
                row.query_index = q;
                row.sweep_value = point.value;
                row.seed_index = s;
                row.seed = seed;
                row.method = method;
                row.shots = method == Method::QuantumSampled ? point.shots : 0;
                row.truth = sample.location;
                row.estimate = est.location;
                row.winning_index = est.winning_index;
                row.error_m = locate::distance_m(sample.location, est.location,
                                                 point.dataset.fingerprint.frame);
                row.input_hash = input_hash;
                out.push_back(std::move(row));
            }
        }
    });

    EvalReport report;
    report.sweep = cfg.sweep;
    for (std::size_t q = 0; q < queries; ++q) {
        bool skipped = false;
        for (std::size_t p = 0; p < points.size(); ++p) {
            skipped = skipped || no_signal[q * points.size() + p] != 0;
        }
        if (skipped) {
            report.skipped_queries.push_back(ds.test_samples[q].id);
        }
    }
    for (auto &rows : task_rows) {
        for (auto &row : rows) {
            report.rows.push_back(std::move(row));
        }
    }
    if (report.rows.empty()) {
        throw ValidationError("no test sample has a usable reading");
    }

    for (const auto &point : points) {
        for (Method method : cfg.methods) {
            EvalAggregate agg;
            agg.method = method;
            agg.sweep_value = point.value;
            std::vector<double> errors;
            std::vector<std::vector<double>> per_seed(cfg.seeds);
            for (const auto &row : report.rows) {
                if (row.method == method && row.sweep_value == point.value) {
                    errors.push_back(row.error_m);
                    per_seed[row.seed_index].push_back(row.error_m);
                }
            }
            if (errors.empty()) {
                continue;
            }
            agg.count = errors.size();
            agg.median_m = median(errors);
            agg.mean_m = std::accumulate(errors.begin(), errors.end(), 0.0) /
                         static_cast<double>(errors.size());
            double seed_sum = 0.0;
            for (auto &errs : per_seed) {
                seed_sum += median(std::move(errs));
            }
            agg.mean_seed_median_m = seed_sum / static_cast<double>(cfg.seeds);
            agg.cdf = empirical_cdf(std::move(errors));
            report.aggregates.push_back(std::move(agg));
        }
    }
    return report;
}

/// Verifies the report's internal invariants; throws InvariantError.
inline void check_report(const EvalReport &report) {
    for (const auto &agg : report.aggregates) {
        if (agg.cdf.empty() || agg.cdf.front() != CdfPoint{0.0, 0.0}) {
            throw InvariantError("error CDF does not start at (0, 0)");
        }
        if (agg.cdf.back().fraction != 1.0) {
            throw InvariantError("error CDF does not end at 1");
        }
        for (std::size_t i = 1; i < agg.cdf.size(); ++i) {
            if (agg.cdf[i].error_m < agg.cdf[i - 1].error_m ||
                agg.cdf[i].fraction < agg.cdf[i - 1].fraction) {
                throw InvariantError("error CDF is not non-decreasing");
            }
        }
        std::vector<double> errors;
        for (const auto &row : report.rows) {
            if (row.method == agg.method && row.sweep_value == agg.sweep_value) {
                errors.push_back(row.error_m);
            }
        }
        if (errors.size() != agg.count || median(errors) != agg.median_m) {
            throw InvariantError("aggregate median disagrees with per-query rows");
        }
    }
    std::map<std::tuple<std::size_t, double, std::size_t>, std::uint64_t> hashes;
    for (const auto &row : report.rows) {
        const auto key = std::make_tuple(row.query_index, row.sweep_value, row.seed_index);
        const auto [it, inserted] = hashes.emplace(key, row.input_hash);
        if (!inserted && it->second != row.input_hash) {
            throw InvariantError("methods saw different inputs for query '" + row.query_id + "'");
        }
    }
}

// CSV output. Numbers use the shortest round-trip form so reports compare
// byte for byte.

[[nodiscard]] inline std::string rows_csv(const EvalReport &report) {
    using testbed::format_double;
    std::ostringstream out;
    out << "query_id,sweep_axis,sweep_value,seed_index,seed,method,shots,true_x,true_y,"
           "est_x,est_y,winning_index,error_m,input_hash\n";
    for (const auto &r : report.rows) {
        out << r.query_id << ',' << to_string(report.sweep) << ',' << format_double(r.sweep_value)
            << ',' << r.seed_index << ',' << r.seed << ',' << locate::to_string(r.method) << ','
            << r.shots << ',' << format_double(r.truth.x) << ',' << format_double(r.truth.y)
            << ',' << format_double(r.estimate.x) << ',' << format_double(r.estimate.y) << ','
            << r.winning_index << ',' << format_double(r.error_m) << ',' << std::hex
            << r.input_hash << std::dec << '\n';
    }
    return out.str();
}

[[nodiscard]] inline std::string summary_csv(const EvalReport &report) {
    using testbed::format_double;
    std::ostringstream out;
    out << "method,sweep_axis,sweep_value,count,median_m,mean_m,mean_seed_median_m\n";
    for (const auto &a : report.aggregates) {
        out << locate::to_string(a.method) << ',' << to_string(report.sweep) << ','
            << format_double(a.sweep_value) << ',' << a.count << ',' << format_double(a.median_m)
            << ',' << format_double(a.mean_m) << ',' << format_double(a.mean_seed_median_m)
            << '\n';
    }
    return out.str();
}

/// Plot-ready: one (x, y) curve per (method, sweep value).
[[nodiscard]] inline std::string cdf_csv(const EvalReport &report) {
    using testbed::format_double;
    std::ostringstream out;
    out << "method,sweep_value,error_m,fraction\n";
    for (const auto &a : report.aggregates) {
        for (const auto &pt : a.cdf) {
            out << locate::to_string(a.method) << ',' << format_double(a.sweep_value) << ','
                << format_double(pt.error_m) << ',' << format_double(pt.fraction) << '\n';
        }
    }
    return out.str();
}

/// Writes rows.csv, summary.csv and cdf.csv into `dir`.
inline void write_report(const EvalReport &report, const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    }
    testbed::detail::write_file(dir / "rows.csv", rows_csv(report));
    testbed::detail::write_file(dir / "summary.csv", summary_csv(report));
    testbed::detail::write_file(dir / "cdf.csv", cdf_csv(report));
}

} // namespace qsloc::harness
