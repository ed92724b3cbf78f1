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
 * @file locator.hpp
 * Fingerprint positioning: sampled quantum, infinite-shot quantum and the
 * classical O(MN) cosine baseline.
 *
 * All three return the location of the best-matching fingerprint record,
 * with ties going to the lowest record index.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsloc/error.hpp"
#include "qsloc/locate/analytic.hpp"
#include "qsloc/locate/estimator.hpp"
#include "qsloc/locate/fingerprint_db.hpp"
#include "qsloc/locate/positioning_circuit.hpp"
#include "qsloc/prep/amplitude.hpp"
#include "qsloc/prep/oracles.hpp"
#include "qsloc/qsim/shot_counts.hpp"
#include "qsloc/qsim/simulator.hpp"

namespace qsloc::locate {

enum class Method { QuantumSampled, QuantumAnalytic, Classical };

[[nodiscard]] inline std::string_view to_string(Method method) {
    switch (method) {
    case Method::QuantumSampled:
        return "quantum";
    case Method::QuantumAnalytic:
        return "quantum-analytic";
    case Method::Classical:
        return "classical";
    }
    return "unknown";
}

[[nodiscard]] inline Method method_from_string(std::string_view name) {
    if (name == "quantum" || name == "quantum-sampled") {
        return Method::QuantumSampled;
    }
    if (name == "quantum-analytic") {
        return Method::QuantumAnalytic;
    }
    if (name == "classical") {
        return Method::Classical;
    }
    throw ValidationError("unknown method '" + std::string(name) + "'");
}

/// How the sampled method picks its winner.
enum class SelectionRule {
    /// Largest count(a=0, i=j), as in the K-shot counting loop.
    JointCount,
    /// Largest estimated cosine count(a=0, i=j) / count(i=j).
    ConditionalEstimate,
};

struct LocationEstimate {
    Method method = Method::Classical;
    std::size_t winning_index = 0;
    Location location;
    /// Cosine similarity per record: exact for the classical and analytic
    /// methods, estimated from counts for the sampled method (NaN where an
    /// index was never observed).
    std::vector<double> similarity_scores;
    /// Sampled method only.
    std::optional<qsim::ShotCounts> raw_counts;
};

struct QuantumOptions {
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    qsim::ShotOptions sampling;
    prep::FingerprintEncoding encoding = prep::FingerprintEncoding::Auto;
    SelectionRule rule = SelectionRule::JointCount;
};

/// Cosine similarity per record, computed directly.
[[nodiscard]] inline std::vector<double>
classical_scores(const prep::AmplitudeVector &psi, std::span<const prep::AmplitudeVector> rows) {
    std::vector<double> scores;
    scores.reserve(rows.size());
    for (const auto &row : rows) {
        scores.push_back(std::abs(prep::dot(psi, row)));
    }
    return scores;
}

namespace detail {

inline LocationEstimate finish(const FingerprintDb &db, Method method,
                               std::vector<double> scores, std::size_t winner) {
    LocationEstimate out;
    out.method = method;
    out.winning_index = winner;
    out.location = db.records.at(winner).location;
    out.similarity_scores = std::move(scores);
    return out;
}

} // namespace detail

/// Classical baseline over pre-encoded rows.
[[nodiscard]] inline LocationEstimate
classical_locate(const FingerprintDb &db, std::span<const prep::AmplitudeVector> rows,
                 const prep::AmplitudeVector &psi) {
    auto scores = classical_scores(psi, rows);
    const auto winner = argmax_lowest<double>(scores);
    return detail::finish(db, Method::Classical, std::move(scores), winner);
}

[[nodiscard]] inline LocationEstimate classical_locate(const FingerprintDb &db,
                                                       std::span<const double> sample_rss) {
    const auto rows = db.amplitude_rows();
    return classical_locate(db, rows, db.encode_sample(sample_rss));
}

/// Winner from the exact ancilla statistics (the K -> infinity limit).
/// Ranks by p(a=0, i=j) and reports the cosine recovered from it.
[[nodiscard]] inline LocationEstimate
quantum_analytic_locate(const FingerprintDb &db, std::span<const prep::AmplitudeVector> rows,
                        const prep::AmplitudeVector &psi) {
    const auto dist = analytic_distribution(psi, rows);
    // p(a=0, i=j) = (1 + c_j^2) / 2M is strictly increasing in c_j, so rank
    // on c_j directly: squaring can round two overlaps one ulp apart into a
    // tie that the exact probabilities do not have.
    const auto winner = argmax_lowest<double>(dist.cosines);
    std::vector<double> scores;
    scores.reserve(dist.size());
    for (double p : dist.conditional) {
        scores.push_back(similarity_from_conditional(p));
    }
    return detail::finish(db, Method::QuantumAnalytic, std::move(scores), winner);
}

[[nodiscard]] inline LocationEstimate quantum_analytic_locate(const FingerprintDb &db,
                                                              std::span<const double> sample_rss) {
    const auto rows = db.amplitude_rows();
    return quantum_analytic_locate(db, rows, db.encode_sample(sample_rss));
}

/// Simulates the positioning circuit for `options.shots` shots and picks
/// the record per `options.rule`. Indices never observed count as zero for
/// the winner and get a NaN score.
[[nodiscard]] inline LocationEstimate
quantum_locate(const FingerprintDb &db, std::span<const prep::AmplitudeVector> rows,
               const prep::AmplitudeVector &psi, const QuantumOptions &options) {
    if (options.shots == 0) {
        throw ValidationError("shot count must be at least 1");
    }
    const auto built = build_positioning_circuit(psi, rows, options.encoding);
    const auto histogram =
        qsim::run_shots(built.circuit, options.shots, options.seed, options.sampling);
    auto counts = qsim::ShotCounts::from_histogram(histogram, built.layout.index_bits);

    std::vector<double> scores(rows.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<std::uint64_t> joint(rows.size(), 0);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        joint[j] = counts.count(0, j);
        if (counts.index_count(j) > 0) {
            scores[j] = counts_to_similarity(counts, j);
        }
    }
    const std::size_t winner = options.rule == SelectionRule::JointCount
                                   ? argmax_lowest<std::uint64_t>(joint)
                                   : argmax_lowest<double>(scores);
    auto out = detail::finish(db, Method::QuantumSampled, std::move(scores), winner);
    out.raw_counts = std::move(counts);
    return out;
}

[[nodiscard]] inline LocationEstimate quantum_locate(const FingerprintDb &db,
                                                     std::span<const double> sample_rss,
                                                     const QuantumOptions &options) {
    const auto rows = db.amplitude_rows();
    return quantum_locate(db, rows, db.encode_sample(sample_rss), options);
}

/// Dispatches on `method`; `options` is ignored by the exact methods.
[[nodiscard]] inline LocationEstimate locate(Method method, const FingerprintDb &db,
                                             std::span<const prep::AmplitudeVector> rows,
                                             const prep::AmplitudeVector &psi,
                                             const QuantumOptions &options = {}) {
    switch (method) {
    case Method::QuantumSampled:
        return quantum_locate(db, rows, psi, options);
    case Method::QuantumAnalytic:
        return quantum_analytic_locate(db, rows, psi);
    case Method::Classical:
        return classical_locate(db, rows, psi);
    }
    throw InvariantError("unhandled positioning method");
}

/// {method, winning_index, location: {x, y}, scores: [...], counts: {"0":
/// [...], "1": [...]}}. Scores that are NaN serialize as null; counts is
/// empty for the exact methods.
[[nodiscard]] inline nlohmann::json to_json(const LocationEstimate &estimate) {
    nlohmann::json scores = nlohmann::json::array();
    for (double s : estimate.similarity_scores) {
        scores.push_back(std::isnan(s) ? nlohmann::json(nullptr) : nlohmann::json(s));
    }
    nlohmann::json counts = nlohmann::json::object();
    if (estimate.raw_counts) {
        const auto &c = *estimate.raw_counts;
        nlohmann::json zero = nlohmann::json::array();
        nlohmann::json one = nlohmann::json::array();
        for (std::size_t j = 0; j < c.index_slots(); ++j) {
            zero.push_back(c.count(0, j));
            one.push_back(c.count(1, j));
        }
        counts["0"] = std::move(zero);
        counts["1"] = std::move(one);
        counts["shots"] = c.total_shots();
    }
    return {
        {"method", std::string(to_string(estimate.method))},
        {"winning_index", estimate.winning_index},
        {"location", {{"x", estimate.location.x}, {"y", estimate.location.y}}},
        {"scores", std::move(scores)},
        {"counts", std::move(counts)},
    };
}

} // namespace qsloc::locate
