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

// Explicit tensor-product check of the swap-test algebra for one pair:
//
//   zeta  = |0>(|psi phi> + |phi psi>) + |1>(|psi phi> - |phi psi>)
//   eta_0 = |psi phi> + |phi psi>,  eta_1 = |psi phi> - |phi psi>
//
// For unit psi, phi: |zeta| = 2 and (|eta_0| / 2)^2 = 1/2 + |<psi|phi>|^2 / 2.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/locate/analytic.hpp"
#include "qsloc/prep/amplitude.hpp"

namespace qsloc::locate {

struct SwapIdentityReport {
    double zeta_norm = 0.0;
    double eta0_norm_sq = 0.0;
    double eta1_norm_sq = 0.0;
    /// (|eta_0| / 2)^2
    double conditional_from_eta = 0.0;
    /// 1/2 + |<psi|phi>|^2 / 2
    double conditional_closed_form = 0.0;
};

namespace detail {

inline std::vector<double> kron(const prep::AmplitudeVector &a, const prep::AmplitudeVector &b) {
    std::vector<double> out;
    out.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            out.push_back(a[i] * b[k]);
        }
    }
    return out;
}

inline double norm_sq(const std::vector<double> &v) {
    double total = 0.0;
    for (double x : v) {
        total += x * x;
    }
    return total;
}

} // namespace detail

[[nodiscard]] inline SwapIdentityReport verify_swap_identities(const prep::AmplitudeVector &psi,
                                                               const prep::AmplitudeVector &phi) {
    if (psi.size() != phi.size()) {
        throw ValidationError("vectors differ in length");
    }
    const auto psi_phi = detail::kron(psi, phi);
    const auto phi_psi = detail::kron(phi, psi);
    const std::size_t half = psi_phi.size();

    std::vector<double> eta0(half);
    std::vector<double> eta1(half);
    for (std::size_t i = 0; i < half; ++i) {
        eta0[i] = psi_phi[i] + phi_psi[i];
        eta1[i] = psi_phi[i] - phi_psi[i];
    }
    // Ancilla is the leading tensor factor: first half |0>, second half |1>.
    std::vector<double> zeta(eta0);
    zeta.insert(zeta.end(), eta1.begin(), eta1.end());

    SwapIdentityReport report;
    report.zeta_norm = std::sqrt(detail::norm_sq(zeta));
    report.eta0_norm_sq = detail::norm_sq(eta0);
    report.eta1_norm_sq = detail::norm_sq(eta1);
    const double half_eta0 = std::sqrt(report.eta0_norm_sq) / 2.0;
    report.conditional_from_eta = half_eta0 * half_eta0;
    report.conditional_closed_form = conditional_from_cosine(std::abs(prep::dot(psi, phi)));
    return report;
}

} // namespace qsloc::locate
