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
 * @file oracles.hpp
 * Amplitude-encoding circuits built from uniformly controlled Ry cascades.
 *
 * Registers are passed as qubit lists with element b holding bit b of the
 * amplitude index. Level k of an angle schedule rotates register[n-1-k]
 * under controls on the k more significant qubits, one gate per control
 * pattern. Every pattern is emitted, including zero angles, so gate counts
 * depend only on the register sizes.
 */
#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/prep/amplitude.hpp"
#include "qsloc/prep/angles.hpp"
#include "qsloc/qsim/gates.hpp"

namespace qsloc::prep {

using qsim::Control;
using qsim::GateOp;

struct PreparedOracle {
    std::vector<GateOp> ops;
    std::vector<int> target_register;

    [[nodiscard]] std::size_t gate_count() const noexcept { return ops.size(); }
};

/// How the index-dependent part of the fingerprint oracle is realized.
enum class FingerprintEncoding {
    /// CnotConjugated when there are exactly two rows, Cascade otherwise.
    Auto,
    /// One fully index-controlled rotation per (row, tree node).
    Cascade,
    /// Two-row form: rotate by the mean angle, then by half the difference
    /// sandwiched between CNOTs from the index qubit. Requires M == 2.
    CnotConjugated,
};

namespace detail {

inline GateOp rotation(std::vector<Control> controls, int target, double theta) {
    if (controls.empty()) {
        return qsim::gate::Ry{target, theta};
    }
    return qsim::gate::CRy{std::move(controls), target, theta};
}

/// Controls selecting node `p` of level `k` on `reg`.
inline std::vector<Control> path_controls(std::span<const int> reg, int k, std::size_t p) {
    const int n = static_cast<int>(reg.size());
    std::vector<Control> controls;
    controls.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        controls.push_back({reg[n - 1 - i], ((p >> (k - 1 - i)) & 1U) != 0});
    }
    return controls;
}

/// Controls selecting index value `j` on `index_reg`.
inline std::vector<Control> index_controls(std::span<const int> index_reg, std::size_t j) {
    std::vector<Control> controls;
    controls.reserve(index_reg.size());
    for (std::size_t b = 0; b < index_reg.size(); ++b) {
        controls.push_back({index_reg[b], ((j >> b) & 1U) != 0});
    }
    return controls;
}

inline void emit_cascade(const AngleSchedule &schedule, std::span<const int> reg,
                         const std::vector<Control> &extra, std::vector<GateOp> &out) {
    const int n = static_cast<int>(reg.size());
    for (int k = 0; k < n; ++k) {
        const int target = reg[n - 1 - k];
        for (std::size_t p = 0; p < schedule.levels[k].size(); ++p) {
            auto controls = extra;
            const auto path = path_controls(reg, k, p);
            controls.insert(controls.end(), path.begin(), path.end());
            out.push_back(rotation(std::move(controls), target, schedule.levels[k][p]));
        }
    }
}

inline int index_bits_for(std::size_t rows) {
    return static_cast<int>(std::bit_width(rows - 1));
}

} // namespace detail

/// O_psi: maps |0...0> on `reg` to sum_i amps[i] |i>.
[[nodiscard]] inline PreparedOracle prepare_psi(const AmplitudeVector &amps,
                                                std::span<const int> reg) {
    if (static_cast<int>(reg.size()) != amps.num_qubits()) {
        throw ValidationError("register has " + std::to_string(reg.size()) +
                              " qubits, amplitudes need " +
                              std::to_string(amps.num_qubits()));
    }
    PreparedOracle oracle;
    oracle.target_register.assign(reg.begin(), reg.end());
    detail::emit_cascade(angles_from_amplitudes(amps), reg, {}, oracle.ops);
    return oracle;
}

/// Closed-form gate count of prepare_fingerprint for M rows of 2^n
/// amplitudes.
[[nodiscard]] inline std::size_t fingerprint_gate_count(std::size_t rows, int n,
                                                        FingerprintEncoding encoding) {
    const int m = detail::index_bits_for(rows);
    const std::size_t nodes = (std::size_t{1} << n) - 1;
    std::size_t index_prep = 0;
    if (m > 0) {
        index_prep = std::has_single_bit(rows) ? static_cast<std::size_t>(m)
                                               : (std::size_t{1} << m) - 1;
    }
    if (encoding == FingerprintEncoding::Auto) {
        encoding = rows == 2 ? FingerprintEncoding::CnotConjugated : FingerprintEncoding::Cascade;
    }
    const std::size_t data_prep =
        encoding == FingerprintEncoding::CnotConjugated ? 4 * nodes : rows * nodes;
    return index_prep + data_prep;
}

/// O_phi together with the index superposition: maps |0>|0> on
/// (data_reg, index_reg) to (1/sqrt M) sum_j |phi_j>|j>. Index values
/// j >= M of a padded register receive zero amplitude. When M is a power
/// of two the index register is prepared with Hadamards.
[[nodiscard]] inline PreparedOracle
prepare_fingerprint(std::span<const AmplitudeVector> rows, std::span<const int> index_reg,
                    std::span<const int> data_reg,
                    FingerprintEncoding encoding = FingerprintEncoding::Auto) {
    const std::size_t m_rows = rows.size();
    if (m_rows == 0) {
        throw ValidationError("fingerprint needs at least one row");
    }
    const int n = rows.front().num_qubits();
    for (const auto &row : rows) {
        if (row.num_qubits() != n) {
            throw ValidationError("fingerprint rows have inconsistent dimensions");
        }
    }
    if (static_cast<int>(data_reg.size()) != n) {
        throw ValidationError("data register size does not match row dimension");
    }
    const int m = detail::index_bits_for(m_rows);
    if (static_cast<int>(index_reg.size()) != m) {
        throw ValidationError("index register needs " + std::to_string(m) + " qubits, got " +
                              std::to_string(index_reg.size()));
    }
    if (encoding == FingerprintEncoding::Auto) {
        encoding = m_rows == 2 ? FingerprintEncoding::CnotConjugated
                               : FingerprintEncoding::Cascade;
    }
    if (encoding == FingerprintEncoding::CnotConjugated && m_rows != 2) {
        throw ValidationError("CNOT-conjugated encoding needs exactly two rows");
    }

    PreparedOracle oracle;
    oracle.target_register.assign(data_reg.begin(), data_reg.end());
    oracle.target_register.insert(oracle.target_register.end(), index_reg.begin(),
                                  index_reg.end());

    if (m > 0) {
        if (std::has_single_bit(m_rows)) {
            for (int q : index_reg) {
                oracle.ops.push_back(qsim::gate::H{q});
            }
        } else {
            std::vector<double> uniform(std::size_t{1} << m, 0.0);
            for (std::size_t j = 0; j < m_rows; ++j) {
                uniform[j] = 1.0;
            }
            const auto index_amps = AmplitudeVector::normalize(std::move(uniform));
            detail::emit_cascade(angles_from_amplitudes(index_amps), index_reg, {}, oracle.ops);
        }
    }

    if (encoding == FingerprintEncoding::CnotConjugated) {
        const auto first = angles_from_amplitudes(rows[0]);
        const auto second = angles_from_amplitudes(rows[1]);
        const int index_qubit = index_reg[0];
        for (int k = 0; k < n; ++k) {
            const int target = data_reg[n - 1 - k];
            for (std::size_t p = 0; p < first.levels[k].size(); ++p) {
                const double mean = 0.5 * (first.levels[k][p] + second.levels[k][p]);
                const double half_diff = 0.5 * (first.levels[k][p] - second.levels[k][p]);
                const auto path = detail::path_controls(data_reg, k, p);
                oracle.ops.push_back(detail::rotation(path, target, mean));
                oracle.ops.push_back(qsim::gate::Cnot{index_qubit, target});
                oracle.ops.push_back(detail::rotation(path, target, half_diff));
                oracle.ops.push_back(qsim::gate::Cnot{index_qubit, target});
            }
        }
    } else {
        for (std::size_t j = 0; j < m_rows; ++j) {
            detail::emit_cascade(angles_from_amplitudes(rows[j]), data_reg,
                                 detail::index_controls(index_reg, j), oracle.ops);
        }
    }
    return oracle;
}

} // namespace qsloc::prep
