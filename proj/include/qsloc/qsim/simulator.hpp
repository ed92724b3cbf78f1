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
 * @file simulator.hpp
 * Circuit execution, marginals, measurement and shot sampling.
 *
 * Two sampling modes are provided. `SamplingMode::Exact` computes the final
 * marginal over the measured qubits once and draws K multinomial samples
 * from it. `SamplingMode::PerShot` re-runs the circuit and collapses the
 * state for every shot, the way hardware executes a K-shot loop. Without
 * gate noise the two modes sample the same distribution.
 *
 * Gate noise is simulated by stochastic Pauli trajectories. In Exact mode
 * the shots are spread over at most `ShotOptions::max_trajectories`
 * independent noise realizations; PerShot mode draws a fresh realization
 * for every shot.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/qsim/circuit.hpp"
#include "qsloc/qsim/gates.hpp"
#include "qsloc/qsim/rng.hpp"
#include "qsloc/qsim/shot_counts.hpp"
#include "qsloc/qsim/state_vector.hpp"

namespace qsloc::qsim {

/// Depolarizing error after every gate on each touched qubit, plus an
/// independent bit flip on every measured bit.
struct NoiseModel {
    double depolarizing_prob = 0.0;
    double readout_flip_prob = 0.0;

    void validate() const {
        auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!in_unit(depolarizing_prob) || !in_unit(readout_flip_prob)) {
            throw ValidationError("noise probabilities must lie in [0, 1]");
        }
    }

    [[nodiscard]] bool has_gate_noise() const { return depolarizing_prob > 0.0; }
    [[nodiscard]] bool has_readout_noise() const { return readout_flip_prob > 0.0; }

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

/// Runs the circuit from |0...0>. With gate noise each touched qubit
/// suffers X, Y or Z (each with probability p/3) after the gate; the draw
/// sequence is fixed by `seed`.
[[nodiscard]] inline StateVector run_circuit(const Circuit &circuit,
                                             const std::optional<NoiseModel> &noise = std::nullopt,
                                             std::uint64_t seed = 0) {
    circuit.validate();
    if (noise) {
        noise->validate();
    }
    auto state = StateVector::zero(circuit.num_qubits);
    const bool noisy = noise && noise->has_gate_noise();
    Rng rng(seed);
    for (const auto &op : circuit.ops) {
        apply(state, op);
        if (!noisy) {
            continue;
        }
        for (int q : touched_qubits(op)) {
            if (rng.bernoulli(noise->depolarizing_prob)) {
                apply_pauli(state, q, static_cast<Pauli>(rng.below(3)));
            }
        }
    }
    return state;
}

/// Probability of each outcome of `qubits`; outcome bit k is qubits[k].
[[nodiscard]] inline std::vector<double>
marginal_distribution(const StateVector &state, std::span<const int> qubits) {
    const int q = state.num_qubits();
    std::uint64_t seen = 0;
    for (int qubit : qubits) {
        if (qubit < 0 || qubit >= q) {
            throw ValidationError("marginal: qubit " + std::to_string(qubit) +
                                  " out of range");
        }
        if ((seen >> qubit) & 1U) {
            throw ValidationError("marginal: repeated qubit " + std::to_string(qubit));
        }
        seen |= std::uint64_t{1} << qubit;
    }
    if (qubits.size() > 63) {
        throw ValidationError("marginal: too many qubits");
    }
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t outcome = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            outcome |= ((i >> qubits[k]) & 1U) << k;
        }
        dist[outcome] += std::norm(amps[i]);
    }
    return dist;
}

namespace detail {

inline void check_distribution(std::span<const double> dist) {
    if (dist.empty() || !std::has_single_bit(dist.size())) {
        throw ValidationError("distribution size must be a power of two");
    }
    double total = 0.0;
    for (double p : dist) {
        if (!(p >= -1e-15) || !std::isfinite(p)) {
            throw ValidationError("distribution has a negative or non-finite entry");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("distribution sums to " + std::to_string(total) +
                              ", expected 1");
    }
}

/// Inverse-CDF sampler over a fixed distribution.
class CdfSampler {
  public:
    explicit CdfSampler(std::span<const double> dist) : cdf_(dist.size()) {
        double running = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            running += std::max(dist[i], 0.0);
            cdf_[i] = running;
        }
        total_ = running;
    }

    std::size_t draw(Rng &rng) const {
        const double u = rng.uniform() * total_;
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const auto index = static_cast<std::size_t>(it - cdf_.begin());
        // u < total_ always, but rounding can leave trailing zero-mass bins
        // at the top; clamp to the last bin with mass.
        return std::min(index, last_nonzero());
    }

  private:
    std::size_t last_nonzero() const {
        std::size_t i = cdf_.size() - 1;
        while (i > 0 && cdf_[i] == cdf_[i - 1]) {
            --i;
        }
        return i;
    }

    std::vector<double> cdf_;
    double total_ = 0.0;
};

inline std::size_t flip_bits(std::size_t outcome, int bits, double flip_prob, Rng &rng) {
    for (int b = 0; b < bits; ++b) {
        if (rng.bernoulli(flip_prob)) {
            outcome ^= std::size_t{1} << b;
        }
    }
    return outcome;
}

} // namespace detail

/// Multinomial draw of `shots` outcomes from `dist` (size 2^bits). Each
/// drawn outcome optionally has every bit flipped with `readout_flip_prob`.
[[nodiscard]] inline Histogram sample_counts(std::span<const double> dist,
                                             std::uint64_t shots, std::uint64_t seed,
                                             double readout_flip_prob = 0.0) {
    if (shots == 0) {
        throw ValidationError("shot count must be at least 1");
    }
    if (readout_flip_prob < 0.0 || readout_flip_prob > 1.0) {
        throw ValidationError("readout flip probability must lie in [0, 1]");
    }
    detail::check_distribution(dist);
    const int bits = std::countr_zero(dist.size());
    Histogram histogram(dist.size(), 0);
    const detail::CdfSampler sampler(dist);
    Rng rng(seed);
    for (std::uint64_t k = 0; k < shots; ++k) {
        std::size_t outcome = sampler.draw(rng);
        if (readout_flip_prob > 0.0) {
            outcome = detail::flip_bits(outcome, bits, readout_flip_prob, rng);
        }
        ++histogram[outcome];
    }
    return histogram;
}

/// Projective measurement of `qubits` in order, collapsing `state`.
/// Returns the outcome with bit k holding the result for qubits[k].
inline std::size_t measure(StateVector &state, std::span<const int> qubits, Rng &rng) {
    std::size_t outcome = 0;
    auto amps = state.amplitudes();
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const std::uint64_t mask = std::uint64_t{1} << qubits[k];
        double p_one = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & mask) {
                p_one += std::norm(amps[i]);
            }
        }
        const bool one = rng.uniform() < p_one;
        const double keep = one ? p_one : 1.0 - p_one;
        const double scale = keep > 0.0 ? 1.0 / std::sqrt(keep) : 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const bool is_one = (i & mask) != 0;
            amps[i] = (is_one == one) ? amps[i] * scale : Complex{0.0, 0.0};
        }
        if (one) {
            outcome |= std::size_t{1} << k;
        }
    }
    return outcome;
}

enum class SamplingMode { Exact, PerShot };

struct ShotOptions {
    SamplingMode mode = SamplingMode::Exact;
    std::optional<NoiseModel> noise;
    /// Upper bound on noise realizations in Exact mode.
    std::uint64_t max_trajectories = 64;
};

/// Executes `shots` runs of `circuit` and histograms the measured qubits.
/// Deterministic in (circuit, shots, seed, options).
[[nodiscard]] inline Histogram run_shots(const Circuit &circuit, std::uint64_t shots,
                                         std::uint64_t seed, const ShotOptions &options = {}) {
    if (shots == 0) {
        throw ValidationError("shot count must be at least 1");
    }
    circuit.validate();
    const auto &noise = options.noise;
    if (noise) {
        noise->validate();
    }
    const double flip = noise ? noise->readout_flip_prob : 0.0;
    const auto &measured = circuit.measured_qubits;
    const int bits = static_cast<int>(measured.size());
    Histogram histogram(std::size_t{1} << bits, 0);
    enum : std::uint64_t { kCircuitStream = 1, kSampleStream = 2 };

    if (options.mode == SamplingMode::PerShot) {
        for (std::uint64_t k = 0; k < shots; ++k) {
            auto state = run_circuit(circuit, noise, derive_seed(seed, kCircuitStream, k));
            Rng rng(derive_seed(seed, kSampleStream, k));
            std::size_t outcome = measure(state, measured, rng);
            if (flip > 0.0) {
                outcome = detail::flip_bits(outcome, bits, flip, rng);
            }
            ++histogram[outcome];
        }
        return histogram;
    }

    const bool noisy = noise && noise->has_gate_noise();
    const std::uint64_t trajectories =
        noisy ? std::clamp<std::uint64_t>(options.max_trajectories, 1, shots) : 1;
    const std::uint64_t base = shots / trajectories;
    const std::uint64_t extra = shots % trajectories;
    for (std::uint64_t t = 0; t < trajectories; ++t) {
        const std::uint64_t share = base + (t < extra ? 1 : 0);
        const auto state = run_circuit(circuit, noise, derive_seed(seed, kCircuitStream, t));
        auto dist = marginal_distribution(state, measured);
        const auto part = sample_counts(dist, share, derive_seed(seed, kSampleStream, t), flip);
        for (std::size_t i = 0; i < histogram.size(); ++i) {
            histogram[i] += part[i];
        }
    }
    return histogram;
}

} // namespace qsloc::qsim
