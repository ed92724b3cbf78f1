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

// Two fingerprint locations, two base stations, one online sample: builds
// the 5-qubit positioning circuit, prints the state-preparation angles,
// and compares sampled, exact and classical answers.

#include <cstdio>
#include <vector>

#include "qsloc/locate/analytic.hpp"
#include "qsloc/locate/locator.hpp"
#include "qsloc/prep/angles.hpp"

int main() {
    using namespace qsloc;

    locate::FingerprintDb db;
    db.station_ids = {"bs0", "bs1"};
    db.records = {
        {"fp0", {0.0, 0.0}, {-30.0, -50.1}},
        {"fp1", {10.0, 0.0}, {-55.7, -26.1}},
    };
    const std::vector<double> sample = {-20.1, -66.3};

    const auto rows = db.amplitude_rows();
    const auto psi = db.encode_sample(sample);

    std::printf("theta_psi  = %.6f\n", prep::angles_from_amplitudes(psi).levels[0][0]);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        std::printf("theta_phi%zu = %.6f\n", j, prep::angles_from_amplitudes(rows[j]).levels[0][0]);
    }

    const auto built = locate::build_positioning_circuit(psi, rows);
    std::printf("qubits %d, gates %zu (state prep %zu, swap test %zu)\n",
                built.circuit.num_qubits, built.gates.total, built.gates.state_prep,
                built.gates.swap_test);

    const auto exact = locate::analytic_distribution(psi, rows);
    locate::QuantumOptions opts;
    opts.shots = 1024;
    opts.seed = 1;
    const auto sampled = locate::quantum_locate(db, rows, psi, opts);
    const auto classical = locate::classical_locate(db, rows, psi);

    for (std::size_t j = 0; j < rows.size(); ++j) {
        std::printf("j=%zu  cos %.4f  p(a=0,i=j) %.4f  expected %.1f  observed %llu\n", j,
                    exact.cosines[j], exact.joint_zero[j], exact.joint_zero[j] * 1024.0,
                    static_cast<unsigned long long>(sampled.raw_counts->count(0, j)));
    }
    std::printf("sampled winner %s, classical winner %s\n",
                db.records[sampled.winning_index].id.c_str(),
                db.records[classical.winning_index].id.c_str());
    return 0;
}
