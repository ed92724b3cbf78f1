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
 * @file positioning_circuit.hpp
 * The parallel cosine-similarity circuit: initialization, swap test and
 * measurement of (ancilla, index).
 *
 * Register layout, low qubit indices first:
 *
 *     [0, m)           index register  |i>
 *     [m, m + n)       fingerprint     |phi>
 *     [m + n, m + 2n)  online sample   |psi>
 *     m + 2n           ancilla
 *
 * The measured outcome therefore reads j + 2^m * a, so histogram slot j
 * holds count(a=0, i=j) and slot 2^m + j holds count(a=1, i=j).
 */
#pragma once

#include <bit>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/prep/amplitude.hpp"
#include "qsloc/prep/oracles.hpp"
#include "qsloc/qsim/circuit.hpp"

namespace qsloc::locate {

struct PositioningLayout {
    int index_bits = 0;
    int data_bits = 0;

    /// 1 + m + 2n
    [[nodiscard]] int num_qubits() const noexcept { return 1 + index_bits + 2 * data_bits; }
    [[nodiscard]] int ancilla() const noexcept { return index_bits + 2 * data_bits; }

    [[nodiscard]] std::vector<int> index_register() const { return range(0, index_bits); }
    [[nodiscard]] std::vector<int> phi_register() const { return range(index_bits, data_bits); }
    [[nodiscard]] std::vector<int> psi_register() const {
        return range(index_bits + data_bits, data_bits);
    }

    /// Index qubits (low outcome bits) followed by the ancilla.
    [[nodiscard]] std::vector<int> measured() const {
        auto out = index_register();
        out.push_back(ancilla());
        return out;
    }

  private:
    static std::vector<int> range(int first, int count) {
        std::vector<int> out(static_cast<std::size_t>(count));
        std::iota(out.begin(), out.end(), first);
        return out;
    }
};

/// Qubits needed for M rows of N readings: 1 + ceil(log2 M) + 2 ceil(log2 N).
[[nodiscard]] inline PositioningLayout layout_for(std::size_t rows, std::size_t stations) {
    if (rows == 0 || stations == 0) {
        throw ValidationError("layout needs at least one row and one station");
    }
    return {static_cast<int>(std::bit_width(rows - 1)),
            static_cast<int>(std::bit_width(stations - 1))};
}

struct GateTally {
    std::size_t state_prep = 0;
    /// n CSWAPs and two Hadamards on the ancilla.
    std::size_t swap_test = 0;
    std::size_t total = 0;
};

struct PositioningCircuit {
    qsim::Circuit circuit;
    PositioningLayout layout;
    GateTally gates;
    std::size_t rows = 0;
};

[[nodiscard]] inline PositioningCircuit
build_positioning_circuit(const prep::AmplitudeVector &psi,
                          std::span<const prep::AmplitudeVector> rows,
                          prep::FingerprintEncoding encoding = prep::FingerprintEncoding::Auto) {
    if (rows.empty()) {
        throw ValidationError("positioning circuit needs at least one fingerprint row");
    }
    for (const auto &row : rows) {
        if (row.size() != psi.size()) {
            throw ValidationError("sample and fingerprint rows differ in length");
        }
    }
    PositioningCircuit out;
    out.rows = rows.size();
    out.layout = layout_for(rows.size(), psi.size());
    const auto &layout = out.layout;
    const auto psi_reg = layout.psi_register();
    const auto phi_reg = layout.phi_register();
    const auto index_reg = layout.index_register();
    const int ancilla = layout.ancilla();

    auto &circuit = out.circuit;
    circuit.num_qubits = layout.num_qubits();

    const auto psi_oracle = prep::prepare_psi(psi, psi_reg);
    const auto phi_oracle = prep::prepare_fingerprint(rows, index_reg, phi_reg, encoding);
    circuit.append(psi_oracle.ops);
    circuit.append(phi_oracle.ops);
    out.gates.state_prep = psi_oracle.gate_count() + phi_oracle.gate_count();

    circuit.add(qsim::gate::H{ancilla});
    for (int k = 0; k < layout.data_bits; ++k) {
        circuit.add(qsim::gate::CSwap{ancilla, psi_reg[k], phi_reg[k]});
    }
    circuit.add(qsim::gate::H{ancilla});
    out.gates.swap_test = static_cast<std::size_t>(layout.data_bits) + 2;
    out.gates.total = circuit.ops.size();

    circuit.measured_qubits = layout.measured();
    circuit.validate();
    return out;
}

} // namespace qsloc::locate
