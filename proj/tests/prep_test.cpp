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
#include <numbers>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "qsloc/prep/amplitude.hpp"
#include "qsloc/prep/angles.hpp"
#include "qsloc/prep/oracles.hpp"
#include "qsloc/qsim/circuit.hpp"
#include "qsloc/qsim/rng.hpp"
#include "qsloc/qsim/simulator.hpp"
#include "support/dense_oracle.hpp"

namespace {

using namespace qsloc;
using namespace qsloc::prep;

std::vector<int> iota_reg(int first, int count) {
    std::vector<int> r(static_cast<std::size_t>(count));
    std::iota(r.begin(), r.end(), first);
    return r;
}

/// Random non-negative unit vector with 2^n entries; some entries zero.
AmplitudeVector random_unit(qsim::Rng &rng, int n) {
    std::vector<double> v(std::size_t{1} << n);
    for (auto &x : v) {
        x = rng.bernoulli(0.2) ? 0.0 : rng.uniform();
    }
    v[rng.below(v.size())] += 0.1;
    return AmplitudeVector::normalize(std::move(v));
}

TEST(Amplitude, FromUnitValidates) {
    EXPECT_NO_THROW((void)AmplitudeVector::from_unit({0.6, 0.8}));
    EXPECT_THROW((void)AmplitudeVector::from_unit({0.6, 0.7}), ValidationError);
    EXPECT_THROW((void)AmplitudeVector::from_unit({1.0, 0.0, 0.0}), ValidationError);
    EXPECT_THROW((void)AmplitudeVector::from_unit({-0.6, 0.8}), ValidationError);
}

TEST(Amplitude, NormalizePadsToPowerOfTwo) {
    const auto v = AmplitudeVector::normalize({3.0, 4.0, 0.0});
    ASSERT_EQ(v.size(), 4U);
    EXPECT_EQ(v.num_qubits(), 2);
    EXPECT_DOUBLE_EQ(v[0], 0.6);
    EXPECT_DOUBLE_EQ(v[1], 0.8);
    EXPECT_EQ(v[3], 0.0);
    EXPECT_THROW((void)AmplitudeVector::normalize({0.0, 0.0}), NoSignalError);
    EXPECT_THROW((void)AmplitudeVector::normalize({}), ValidationError);
}

TEST(Normalization, FloorShiftOfWorkedSample) {
    const std::vector<double> rss = {-20.1, -66.3};
    const auto v = rss_to_amplitudes(rss);
    const double norm = std::hypot(89.9, 43.7);
    EXPECT_NEAR(v[0], 89.9 / norm, 1e-15);
    EXPECT_NEAR(v[1], 43.7 / norm, 1e-15);
}

TEST(Normalization, MissingAndSubFloorReadingsBecomeZero) {
    const std::vector<double> rss = {-50.0, -200.0, -120.0, std::nan("")};
    const auto v = rss_to_amplitudes(rss);
    EXPECT_DOUBLE_EQ(v[0], 1.0);
    EXPECT_EQ(v[1], 0.0);
    EXPECT_EQ(v[2], 0.0);
    EXPECT_EQ(v[3], 0.0);
}

TEST(Normalization, NothingHeardIsNoSignal) {
    const std::vector<double> rss = {-200.0, -115.0};
    EXPECT_THROW((void)rss_to_amplitudes(rss), NoSignalError);
}

TEST(Normalization, LinearMilliwattMap) {
    NormalizationConfig cfg;
    cfg.map = AmplitudeMap::LinearMilliwatt;
    const std::vector<double> rss = {-30.0, -40.0};
    const auto v = rss_to_amplitudes(rss, cfg);
    EXPECT_NEAR(v[0] / v[1], 10.0, 1e-12);
    EXPECT_EQ(amplitude_map_from_string("linear_mw"), AmplitudeMap::LinearMilliwatt);
    EXPECT_THROW((void)amplitude_map_from_string("log"), ValidationError);
}

TEST(Normalization, ConfigMustKeepSentinelBelowFloor) {
    NormalizationConfig cfg;
    cfg.sentinel_dbm = -100.0;
    EXPECT_THROW(cfg.validate(), ValidationError);
    const std::vector<double> rss = {-50.0};
    EXPECT_THROW((void)rss_to_amplitudes(rss, cfg), ValidationError);
}

TEST(Angles, WorkedExampleValues) {
    const std::vector<double> psi = {-20.1, -66.3};
    const std::vector<double> phi0 = {-30.0, -50.1};
    const std::vector<double> phi1 = {-55.7, -26.1};
    EXPECT_NEAR(angles_from_amplitudes(rss_to_amplitudes(psi)).levels[0][0], 0.904925, 1e-6);
    EXPECT_NEAR(angles_from_amplitudes(rss_to_amplitudes(phi0)).levels[0][0], 1.285401, 1e-6);
    EXPECT_NEAR(angles_from_amplitudes(rss_to_amplitudes(phi1)).levels[0][0], 1.992785, 1e-6);
}

TEST(Angles, RoundTripAndRange) {
    qsim::Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(5));
        const auto amps = random_unit(rng, n);
        const auto schedule = angles_from_amplitudes(amps);
        ASSERT_EQ(schedule.num_qubits(), n);
        for (const auto &level : schedule.levels) {
            for (double t : level) {
                ASSERT_GE(t, 0.0);
                ASSERT_LE(t, std::numbers::pi);
            }
        }
        const auto back = amplitudes_from_angles(schedule);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            ASSERT_NEAR(back[i], amps[i], 1e-12);
        }
    }
}

TEST(Angles, ZeroSubtreeGivesZeroAngle) {
    const auto amps = AmplitudeVector::from_unit({1.0, 0.0, 0.0, 0.0});
    const auto s = angles_from_amplitudes(amps);
    EXPECT_EQ(s.levels[0][0], 0.0);
    EXPECT_EQ(s.levels[1][1], 0.0);
}

TEST(PsiOracle, PreparesTargetState) {
    qsim::Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const auto amps = random_unit(rng, n);
        const auto reg = iota_reg(0, n);
        const auto oracle = prepare_psi(amps, reg);
        EXPECT_EQ(oracle.gate_count(), (std::size_t{1} << n) - 1);
        qsim::Circuit c;
        c.num_qubits = n;
        c.append(oracle.ops);
        const auto state = qsim::run_circuit(c);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            ASSERT_NEAR(state[i].real(), amps[i], 1e-12);
            ASSERT_EQ(state[i].imag(), 0.0);
        }
    }
}

TEST(PsiOracle, RejectsWrongRegister) {
    const auto amps = AmplitudeVector::from_unit({0.6, 0.8});
    const auto reg = iota_reg(0, 2);
    EXPECT_THROW((void)prepare_psi(amps, reg), ValidationError);
}

void expect_fingerprint_state(const std::vector<AmplitudeVector> &rows, FingerprintEncoding enc) {
    const std::size_t m_rows = rows.size();
    const int m = static_cast<int>(std::bit_width(m_rows - 1));
    const int n = rows.front().num_qubits();
    const auto index_reg = iota_reg(0, m);
    const auto data_reg = iota_reg(m, n);
    const auto oracle = prepare_fingerprint(rows, index_reg, data_reg, enc);
    EXPECT_EQ(oracle.gate_count(), fingerprint_gate_count(m_rows, n, enc));

    qsim::Circuit c;
    c.num_qubits = m + n;
    c.append(oracle.ops);
    const auto state = qsim::run_circuit(c);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m_rows));
    for (std::size_t d = 0; d < rows.front().size(); ++d) {
        for (std::size_t j = 0; j < (std::size_t{1} << m); ++j) {
            const auto amp = state[j + (d << m)];
            if (j >= m_rows) {
                ASSERT_EQ(std::norm(amp), 0.0) << "padded index " << j;
            } else {
                ASSERT_NEAR(amp.real(), rows[j][d] * scale, 1e-12);
            }
        }
    }
}

TEST(FingerprintOracle, CascadeMatchesTarget) {
    qsim::Rng rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const std::size_t m_rows = 1 + rng.below(9);
        std::vector<AmplitudeVector> rows;
        for (std::size_t j = 0; j < m_rows; ++j) {
            rows.push_back(random_unit(rng, n));
        }
        expect_fingerprint_state(rows, FingerprintEncoding::Cascade);
    }
}

TEST(FingerprintOracle, CnotConjugatedMatchesTarget) {
    qsim::Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const std::vector<AmplitudeVector> rows = {random_unit(rng, n), random_unit(rng, n)};
        expect_fingerprint_state(rows, FingerprintEncoding::CnotConjugated);
        expect_fingerprint_state(rows, FingerprintEncoding::Auto);
    }
}

TEST(FingerprintOracle, CnotConjugatedNeedsTwoRows) {
    const auto a = AmplitudeVector::from_unit({0.6, 0.8});
    const std::vector<AmplitudeVector> rows = {a, a, a};
    const auto index_reg = iota_reg(0, 2);
    const auto data_reg = iota_reg(2, 1);
    EXPECT_THROW((void)prepare_fingerprint(rows, index_reg, data_reg,
                                           FingerprintEncoding::CnotConjugated),
                 ValidationError);
}

TEST(FingerprintOracle, WorkedExampleTwoStageRotation) {
    const std::vector<double> phi0 = {-30.0, -50.1};
    const std::vector<double> phi1 = {-55.7, -26.1};
    const std::vector<AmplitudeVector> rows = {rss_to_amplitudes(phi0), rss_to_amplitudes(phi1)};
    const std::vector<int> index_reg = {0};
    const std::vector<int> data_reg = {1};
    const auto oracle = prepare_fingerprint(rows, index_reg, data_reg);
    // H, Ry(mean), CNOT, Ry(half difference), CNOT
    ASSERT_EQ(oracle.gate_count(), 5U);
    const auto &first = std::get<qsim::gate::Ry>(oracle.ops[1]);
    const auto &second = std::get<qsim::gate::Ry>(oracle.ops[3]);
    EXPECT_NEAR(first.theta, 1.639093, 1e-6);
    EXPECT_NEAR(second.theta, -0.353692, 1e-6);
    EXPECT_TRUE(std::holds_alternative<qsim::gate::Cnot>(oracle.ops[2]));
}

TEST(FingerprintOracle, MatchesDenseOracleEndToEnd) {
    qsim::Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m_rows = 1 + rng.below(5);
        std::vector<AmplitudeVector> rows;
        for (std::size_t j = 0; j < m_rows; ++j) {
            rows.push_back(random_unit(rng, 2));
        }
        const int m = static_cast<int>(std::bit_width(m_rows - 1));
        qsim::Circuit c;
        c.num_qubits = m + 2;
        c.append(prepare_fingerprint(rows, iota_reg(0, m), iota_reg(m, 2)).ops);
        const auto fast = qsim::run_circuit(c);
        const auto slow = oracle::dense_run(c);
        for (std::size_t i = 0; i < slow.size(); ++i) {
            ASSERT_LT(std::abs(fast[i] - slow[i]), 1e-12);
        }
    }
}

} // namespace
