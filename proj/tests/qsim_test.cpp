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

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "qsloc/qsim/circuit.hpp"
#include "qsloc/qsim/gates.hpp"
#include "qsloc/qsim/rng.hpp"
#include "qsloc/qsim/shot_counts.hpp"
#include "qsloc/qsim/simulator.hpp"
#include "qsloc/qsim/state_json.hpp"
#include "qsloc/qsim/state_vector.hpp"
#include "support/dense_oracle.hpp"

namespace {

using namespace qsloc;
using namespace qsloc::qsim;

std::vector<int> distinct_qubits(Rng &rng, int q, int count) {
    std::vector<int> all(static_cast<std::size_t>(q));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(q - i));
        std::swap(all[static_cast<std::size_t>(i)], all[j]);
    }
    all.resize(static_cast<std::size_t>(count));
    return all;
}

GateOp random_gate(Rng &rng, int q) {
    const double theta = rng.uniform(-2 * std::numbers::pi, 2 * std::numbers::pi);
    const std::uint64_t kinds = q >= 3 ? 6 : (q == 2 ? 5 : 3);
    switch (rng.below(kinds)) {
    case 0:
        return gate::H{static_cast<int>(rng.below(q))};
    case 1:
        return gate::X{static_cast<int>(rng.below(q))};
    case 2:
        return gate::Ry{static_cast<int>(rng.below(q)), theta};
    case 3: {
        auto qs = distinct_qubits(rng, q, 2);
        return gate::Cnot{qs[0], qs[1]};
    }
    case 4: {
        const int controls = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(q - 1)));
        auto qs = distinct_qubits(rng, q, controls + 1);
        gate::CRy g;
        g.target = qs.back();
        g.theta = theta;
        for (int c = 0; c < controls; ++c) {
            g.controls.push_back({qs[c], rng.bernoulli(0.5)});
        }
        return g;
    }
    default: {
        auto qs = distinct_qubits(rng, q, 3);
        return gate::CSwap{qs[0], qs[1], qs[2]};
    }
    }
}

Circuit random_circuit(Rng &rng, int q, int gates) {
    Circuit c;
    c.num_qubits = q;
    for (int g = 0; g < gates; ++g) {
        c.add(random_gate(rng, q));
    }
    return c;
}

double max_diff(const StateVector &a, const StateVector &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

TEST(StateVector, ZeroStateIsBasisZero) {
    const auto s = new_zero_state(3);
    EXPECT_EQ(s.size(), 8U);
    EXPECT_EQ(s[0], Complex(1.0, 0.0));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(StateVector, CapacityCapIsEnforced) {
    EXPECT_THROW((void)StateVector::zero(21), CapacityError);
    EXPECT_THROW((void)StateVector::zero(0), CapacityError);
    EXPECT_THROW((void)StateVector::zero(5, 4), CapacityError);
}

TEST(StateVector, CapacityEnvOverride) {
    ::setenv("QSL_MAX_QUBITS", "4", 1);
    EXPECT_EQ(max_qubits(), 4);
    EXPECT_THROW((void)StateVector::zero(5), CapacityError);
    ::setenv("QSL_MAX_QUBITS", "zero", 1);
    EXPECT_THROW((void)max_qubits(), ValidationError);
    ::unsetenv("QSL_MAX_QUBITS");
    EXPECT_EQ(max_qubits(), kDefaultMaxQubits);
}

TEST(Gates, BellState) {
    auto s = new_zero_state(2);
    apply(s, gate::H{0});
    apply(s, gate::Cnot{0, 1});
    const double r = 1.0 / std::numbers::sqrt2;
    EXPECT_NEAR(s[0].real(), r, 1e-15);
    EXPECT_NEAR(s[3].real(), r, 1e-15);
    EXPECT_EQ(s[1], Complex(0.0, 0.0));
    EXPECT_EQ(s[2], Complex(0.0, 0.0));
}

TEST(Gates, RyRotatesTowardOne) {
    auto s = new_zero_state(1);
    apply(s, gate::Ry{0, 1.2});
    EXPECT_NEAR(s[0].real(), std::cos(0.6), 1e-15);
    EXPECT_NEAR(s[1].real(), std::sin(0.6), 1e-15);
}

TEST(Gates, NegativePolarityControl) {
    // Control on |0> fires from the zero state.
    auto s = new_zero_state(2);
    apply(s, gate::CRy{{{0, false}}, 1, std::numbers::pi});
    EXPECT_NEAR(std::abs(s[2]), 1.0, 1e-15);
    auto t = new_zero_state(2);
    apply(t, gate::CRy{{{0, true}}, 1, std::numbers::pi});
    EXPECT_EQ(t[0], Complex(1.0, 0.0));
}

TEST(Gates, CSwapSwapsOnlyUnderControl) {
    auto s = new_zero_state(3);
    apply(s, gate::X{1});
    apply(s, gate::CSwap{0, 1, 2});
    EXPECT_EQ(s[2], Complex(1.0, 0.0)); // control off: unchanged
    apply(s, gate::X{0});
    apply(s, gate::CSwap{0, 1, 2});
    EXPECT_EQ(s[5], Complex(1.0, 0.0)); // |q2=1, q1=0, q0=1>
}

TEST(Gates, ValidationRejectsBadOperands) {
    EXPECT_THROW(validate_gate(gate::H{3}, 3), ValidationError);
    EXPECT_THROW(validate_gate(gate::H{-1}, 3), ValidationError);
    EXPECT_THROW(validate_gate(gate::Cnot{1, 1}, 3), ValidationError);
    EXPECT_THROW(validate_gate(gate::CSwap{0, 2, 2}, 3), ValidationError);
    EXPECT_THROW(validate_gate(gate::CRy{{{1, true}}, 1, 0.3}, 3), ValidationError);
    EXPECT_THROW(validate_gate(gate::Ry{0, std::nan("")}, 3), ValidationError);
    EXPECT_NO_THROW(validate_gate(gate::CRy{{{0, true}, {1, false}}, 2, 0.3}, 3));
}

TEST(Gates, SelfInverse) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto prep = random_circuit(rng, 4, 12);
        const auto base = run_circuit(prep);
        for (const GateOp &g : {GateOp{gate::H{2}}, GateOp{gate::X{1}}, GateOp{gate::Cnot{3, 0}},
                               GateOp{gate::CSwap{1, 0, 3}}}) {
            auto s = base;
            apply(s, g);
            apply(s, g);
            EXPECT_LT(max_diff(s, base), 1e-12);
        }
    }
}

TEST(Gates, RyAngleAdditivity) {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto base = run_circuit(random_circuit(rng, 3, 10));
        const double a = rng.uniform(-4, 4);
        const double b = rng.uniform(-4, 4);
        auto two = base;
        apply(two, gate::Ry{1, a});
        apply(two, gate::Ry{1, b});
        auto one = base;
        apply(one, gate::Ry{1, a + b});
        EXPECT_LT(max_diff(one, two), 1e-12);
    }
}

TEST(Gates, XConjugationNegatesRy) {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto base = run_circuit(random_circuit(rng, 3, 10));
        const double theta = rng.uniform(-4, 4);
        auto lhs = base;
        apply(lhs, gate::X{2});
        apply(lhs, gate::Ry{2, theta});
        apply(lhs, gate::X{2});
        auto rhs = base;
        apply(rhs, gate::Ry{2, -theta});
        EXPECT_LT(max_diff(lhs, rhs), 1e-12);
    }
}

TEST(Gates, PauliKernels) {
    auto s = new_zero_state(1);
    apply_pauli(s, 0, Pauli::Y);
    EXPECT_EQ(s[1], Complex(0.0, 1.0));
    apply_pauli(s, 0, Pauli::Z);
    EXPECT_EQ(s[1], Complex(0.0, -1.0));
    apply_pauli(s, 0, Pauli::X);
    EXPECT_EQ(s[0], Complex(0.0, -1.0));
}

TEST(Simulator, MatchesDenseKroneckerOracle) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int q = 2 + static_cast<int>(rng.below(4));
        const auto circuit = random_circuit(rng, q, 1 + static_cast<int>(rng.below(20)));
        const auto fast = run_circuit(circuit);
        const auto slow = oracle::dense_run(circuit);
        for (std::size_t i = 0; i < slow.size(); ++i) {
            ASSERT_LT(std::abs(fast[i] - slow[i]), 1e-12) << "trial " << trial << " index " << i;
        }
    }
}

TEST(Simulator, NormPreservedOverRandomCircuits) {
    Rng rng(22);
    for (int trial = 0; trial < 1000; ++trial) {
        const int q = 1 + static_cast<int>(rng.below(8));
        const auto s = run_circuit(random_circuit(rng, q, 40));
        ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12) << "trial " << trial;
    }
}

TEST(Simulator, MarginalOrdersBitsByQubitList) {
    auto s = new_zero_state(3);
    apply(s, gate::X{2});
    const std::vector<int> qs = {2, 0};
    const auto dist = marginal_distribution(s, qs);
    EXPECT_DOUBLE_EQ(dist[1], 1.0); // bit 0 of the outcome is qubit 2
    const std::vector<int> bad = {0, 0};
    EXPECT_THROW((void)marginal_distribution(s, bad), ValidationError);
}

TEST(Sampling, RejectsBadInput) {
    const std::vector<double> dist = {0.5, 0.5};
    EXPECT_THROW((void)sample_counts(dist, 0, 1), ValidationError);
    const std::vector<double> unnormalized = {0.5, 0.4};
    EXPECT_THROW((void)sample_counts(unnormalized, 10, 1), ValidationError);
    const std::vector<double> odd = {0.5, 0.25, 0.25};
    EXPECT_THROW((void)sample_counts(odd, 10, 1), ValidationError);
}

TEST(Sampling, FrequenciesConvergeAtOneMillionShots) {
    const std::vector<double> dist = {0.1, 0.0, 0.35, 0.05, 0.2, 0.0, 0.3, 0.0};
    const std::uint64_t shots = 1'000'000;
    const auto h = sample_counts(dist, shots, 99);
    EXPECT_EQ(std::accumulate(h.begin(), h.end(), std::uint64_t{0}), shots);
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double sigma = std::sqrt(dist[i] * (1 - dist[i]) / static_cast<double>(shots));
        const double freq = static_cast<double>(h[i]) / static_cast<double>(shots);
        EXPECT_LE(std::abs(freq - dist[i]), 5 * sigma + 1e-12) << "outcome " << i;
        if (dist[i] == 0.0) {
            EXPECT_EQ(h[i], 0U);
        }
    }
}

TEST(Sampling, DeterministicPerSeed) {
    const std::vector<double> dist = {0.25, 0.25, 0.25, 0.25};
    EXPECT_EQ(sample_counts(dist, 1000, 5), sample_counts(dist, 1000, 5));
    EXPECT_NE(sample_counts(dist, 1000, 5), sample_counts(dist, 1000, 6));
}

TEST(Sampling, FullReadoutFlipInvertsOutcomes) {
    const std::vector<double> dist = {1.0, 0.0, 0.0, 0.0};
    const auto h = sample_counts(dist, 100, 3, 1.0);
    EXPECT_EQ(h[3], 100U);
}

TEST(Sampling, MeasureCollapses) {
    auto s = new_zero_state(2);
    apply(s, gate::H{0});
    apply(s, gate::Cnot{0, 1});
    Rng rng(4);
    const std::vector<int> q0 = {0};
    const auto outcome = measure(s, q0, rng);
    const std::size_t both = outcome == 1 ? 3 : 0;
    EXPECT_NEAR(s.probability(both), 1.0, 1e-12);
}

Circuit bell_pair() {
    Circuit c;
    c.num_qubits = 2;
    c.add(gate::H{0}).add(gate::Cnot{0, 1});
    c.measured_qubits = {0, 1};
    return c;
}

TEST(RunShots, ExactAndPerShotAgreeStatistically) {
    const auto c = bell_pair();
    ShotOptions per_shot;
    per_shot.mode = SamplingMode::PerShot;
    const auto a = run_shots(c, 4000, 8);
    const auto b = run_shots(c, 4000, 8, per_shot);
    for (const auto &h : {a, b}) {
        EXPECT_EQ(h[1] + h[2], 0U);
        EXPECT_NEAR(static_cast<double>(h[0]) / 4000.0, 0.5, 5 * std::sqrt(0.25 / 4000.0));
    }
}

TEST(RunShots, DeterministicInSeedAndOptions) {
    const auto c = bell_pair();
    ShotOptions noisy;
    noisy.noise = NoiseModel{0.05, 0.02};
    EXPECT_EQ(run_shots(c, 500, 1, noisy), run_shots(c, 500, 1, noisy));
    noisy.mode = SamplingMode::PerShot;
    EXPECT_EQ(run_shots(c, 500, 1, noisy), run_shots(c, 500, 1, noisy));
    EXPECT_THROW((void)run_shots(c, 0, 1), ValidationError);
}

TEST(RunShots, ZeroNoiseEqualsNoiseless) {
    const auto c = bell_pair();
    ShotOptions zero;
    zero.noise = NoiseModel{0.0, 0.0};
    EXPECT_EQ(run_shots(c, 300, 2, zero), run_shots(c, 300, 2));
}

TEST(RunShots, DepolarizingBreaksCorrelation) {
    const auto c = bell_pair();
    ShotOptions noisy;
    noisy.noise = NoiseModel{0.3, 0.0};
    const auto h = run_shots(c, 20000, 3, noisy);
    EXPECT_GT(h[1] + h[2], 1000U);
}

TEST(Noise, ValidatesProbabilities) {
    EXPECT_THROW((NoiseModel{-0.1, 0.0}.validate()), ValidationError);
    EXPECT_THROW((NoiseModel{0.0, 1.5}.validate()), ValidationError);
}

TEST(StateJson, RoundTrip) {
    Rng rng(31);
    const auto s = run_circuit(random_circuit(rng, 4, 15));
    const auto back = state_from_json(nlohmann::json::parse(state_to_json(s).dump()));
    EXPECT_EQ(back, s);
}

TEST(StateJson, RejectsMalformed) {
    EXPECT_THROW((void)state_from_json(nlohmann::json{{"num_qubits", 2}}), ValidationError);
    EXPECT_THROW((void)state_from_json(nlohmann::json::parse(
                     R"({"num_qubits": 1, "amplitudes": {"5": [1, 0]}})")),
                 ValidationError);
}

TEST(ShotCountsTable, SplitsAncillaAndIndex) {
    const std::vector<std::uint64_t> hist = {5, 6, 7, 8, 1, 2, 3, 4};
    const auto c = ShotCounts::from_histogram(hist, 2);
    EXPECT_EQ(c.count(0, 2), 7U);
    EXPECT_EQ(c.count(1, 2), 3U);
    EXPECT_EQ(c.index_count(3), 12U);
    EXPECT_EQ(c.total_shots(), 36U);
    EXPECT_THROW((void)c.count(0, 4), ValidationError);
    EXPECT_THROW((void)ShotCounts::from_histogram(hist, 1), ValidationError);
}

TEST(Random, UniformAndNormalMoments) {
    Rng rng(41);
    double sum = 0;
    double sum_sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.02);
    EXPECT_NEAR(sum_sq / n, 1.0, 0.02);
}

TEST(Random, DerivedSeedsAreDistinct) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
    EXPECT_EQ(derive_seed(7, 1, 2), derive_seed(derive_seed(7, 1), 2));
}

TEST(CircuitTally, CountsByName) {
    const auto c = bell_pair();
    const auto counts = count_gates(c.ops);
    EXPECT_EQ(counts.at("h"), 1U);
    EXPECT_EQ(counts.at("cnot"), 1U);
}

} // namespace
