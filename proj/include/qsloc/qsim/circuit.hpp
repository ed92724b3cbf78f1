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
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/qsim/gates.hpp"

namespace qsloc::qsim {

/// Ordered gate list plus the qubits read out at the end. Measurement
/// outcome bit k corresponds to measured_qubits[k].
struct Circuit {
    int num_qubits = 1;
    std::vector<GateOp> ops;
    std::vector<int> measured_qubits;

    Circuit &add(GateOp op) {
        ops.push_back(std::move(op));
        return *this;
    }

    Circuit &append(std::span<const GateOp> fragment) {
        ops.insert(ops.end(), fragment.begin(), fragment.end());
        return *this;
    }

    void validate() const {
        if (num_qubits < 1) {
            throw ValidationError("circuit needs at least one qubit");
        }
        for (const auto &op : ops) {
            validate_gate(op, num_qubits);
        }
        auto measured = measured_qubits;
        for (int q : measured) {
            if (q < 0 || q >= num_qubits) {
                throw ValidationError("measured qubit " + std::to_string(q) +
                                      " out of range");
            }
        }
        std::sort(measured.begin(), measured.end());
        if (std::adjacent_find(measured.begin(), measured.end()) != measured.end()) {
            throw ValidationError("measured qubits must be distinct");
        }
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;
};

/// Gate counts keyed by gate name.
[[nodiscard]] inline std::map<std::string, std::size_t>
count_gates(std::span<const GateOp> ops) {
    std::map<std::string, std::size_t> counts;
    for (const auto &op : ops) {
        ++counts[std::string(gate_name(op))];
    }
    return counts;
}

} // namespace qsloc::qsim
