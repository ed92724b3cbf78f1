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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "qsloc/error.hpp"
#include "qsloc/locate/positioning_circuit.hpp"
#include "qsloc/prep/amplitude.hpp"
#include "qsloc/qsim/circuit.hpp"

namespace qsloc::harness {

inline constexpr const char *kQramNote =
    "O(log MN) per query assumes QRAM-style loading of the fingerprint and "
    "sample states; the gate-level state preparation built here costs "
    "O(M N) gates, and K shots multiply the circuit executions";

struct ComplexityReport {
    std::size_t rows = 0;     // M
    std::size_t stations = 0; // N
    int qubits_used = 0;
    int index_qubits = 0;
    int data_qubits = 0;
    locate::GateTally gates;
    std::map<std::string, std::size_t> gate_kinds;
    std::uint64_t shots = 0;
    std::uint64_t classical_ops = 0;
    /// Gate applications across all shots if each shot re-ran the circuit.
    std::uint64_t quantum_gate_executions = 0;
    std::string claimed_asymptotic = kQramNote;
};

/// 1 + ceil(log2 M) + 2 ceil(log2 N), computed without the circuit builder.
[[nodiscard]] inline int formula_qubits(std::size_t rows, std::size_t stations) {
    auto ceil_log2 = [](std::size_t x) { return static_cast<int>(std::bit_width(x - 1)); };
    return 1 + ceil_log2(rows) + 2 * ceil_log2(stations);
}

/// Builds the positioning circuit for uniform M x N data and tallies it.
/// The circuit is only constructed, never simulated, so large M and N are
/// fine.
[[nodiscard]] inline ComplexityReport complexity_report(std::size_t rows, std::size_t stations,
                                                        std::uint64_t shots) {
    if (rows == 0 || stations == 0) {
        throw ValidationError("M and N must be at least 1");
    }
    if (shots == 0) {
        throw ValidationError("shot count must be at least 1");
    }
    const auto uniform = prep::AmplitudeVector::normalize(std::vector<double>(stations, 1.0));
    const std::vector<prep::AmplitudeVector> data(rows, uniform);
    const auto built = locate::build_positioning_circuit(uniform, data);

    ComplexityReport report;
    report.rows = rows;
    report.stations = stations;
    report.qubits_used = built.circuit.num_qubits;
    report.index_qubits = built.layout.index_bits;
    report.data_qubits = built.layout.data_bits;
    report.gates = built.gates;
    report.gate_kinds = qsim::count_gates(built.circuit.ops);
    report.shots = shots;
    report.classical_ops = static_cast<std::uint64_t>(rows) * stations;
    report.quantum_gate_executions = static_cast<std::uint64_t>(built.gates.total) * shots;
    if (report.qubits_used != formula_qubits(rows, stations)) {
        throw InvariantError("constructed circuit has " + std::to_string(report.qubits_used) +
                             " qubits, formula gives " +
                             std::to_string(formula_qubits(rows, stations)));
    }
    return report;
}

[[nodiscard]] inline nlohmann::json to_json(const ComplexityReport &r) {
    return {
        {"M", r.rows},
        {"N", r.stations},
        {"qubits_used", r.qubits_used},
        {"index_qubits", r.index_qubits},
        {"data_qubits", r.data_qubits},
        {"gate_counts",
         {{"state_prep", r.gates.state_prep},
          {"swap_test", r.gates.swap_test},
          {"total", r.gates.total},
          {"by_kind", r.gate_kinds}}},
        {"shots", r.shots},
        {"classical_ops", r.classical_ops},
        {"quantum_gate_executions", r.quantum_gate_executions},
        {"claimed_asymptotic", r.claimed_asymptotic},
    };
}

} // namespace qsloc::harness
