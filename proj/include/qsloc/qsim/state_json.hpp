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

// Debug dump of a statevector: {"num_qubits": q, "amplitudes": {"<basis
// index>": [re, im], ...}}. Only nonzero amplitudes are written.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qsloc/error.hpp"
#include "qsloc/qsim/state_vector.hpp"

namespace qsloc::qsim {

[[nodiscard]] inline nlohmann::json state_to_json(const StateVector &state) {
    nlohmann::json amps = nlohmann::json::object();
    const auto values = state.amplitudes();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != Complex{0.0, 0.0}) {
            amps[std::to_string(i)] = {values[i].real(), values[i].imag()};
        }
    }
    return {{"num_qubits", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

[[nodiscard]] inline StateVector state_from_json(const nlohmann::json &doc) {
    try {
        const int q = doc.at("num_qubits").get<int>();
        if (q < 1 || q > kHardMaxQubits) {
            throw ValidationError("num_qubits out of range");
        }
        std::vector<Complex> amps(std::size_t{1} << q, Complex{0.0, 0.0});
        for (const auto &[key, value] : doc.at("amplitudes").items()) {
            const std::size_t index = std::stoull(key);
            if (index >= amps.size()) {
                throw ValidationError("basis index " + key + " out of range");
            }
            amps[index] = Complex{value.at(0).get<double>(), value.at(1).get<double>()};
        }
        return StateVector::from_amplitudes(std::move(amps), kHardMaxQubits);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed statevector JSON: ") + e.what());
    } catch (const std::logic_error &e) {
        throw ValidationError(std::string("malformed statevector JSON: ") + e.what());
    }
}

} // namespace qsloc::qsim
