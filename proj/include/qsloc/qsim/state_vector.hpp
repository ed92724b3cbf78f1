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
 * @file state_vector.hpp
 * Dense statevector over q qubits.
 *
 * Qubit 0 is the least-significant bit of the basis-state index, so the
 * amplitude of |b_{q-1} ... b_1 b_0> lives at index sum_k b_k 2^k.
 */
#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "qsloc/error.hpp"

namespace qsloc::qsim {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 20;
inline constexpr int kHardMaxQubits = 40;

/// Statevector capacity cap in qubits. QSL_MAX_QUBITS overrides the default
/// of 20 (i.e. 2^20 amplitudes).
[[nodiscard]] inline int max_qubits() {
    if (const char *env = std::getenv("QSL_MAX_QUBITS"); env != nullptr) {
        char *end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1 && value <= kHardMaxQubits) {
            return static_cast<int>(value);
        }
        throw ValidationError("QSL_MAX_QUBITS must be an integer in [1, " +
                              std::to_string(kHardMaxQubits) + "], got '" + env + "'");
    }
    return kDefaultMaxQubits;
}

class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    static StateVector zero(int num_qubits, int capacity = max_qubits()) {
        if (num_qubits < 1 || num_qubits > capacity) {
            throw CapacityError("qubit count " + std::to_string(num_qubits) +
                                " outside [1, " + std::to_string(capacity) + "]");
        }
        StateVector state;
        state.num_qubits_ = num_qubits;
        state.amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
        state.amplitudes_[0] = Complex{1.0, 0.0};
        return state;
    }

    /// Wraps raw amplitudes; the length must be a power of two >= 2. No
    /// normalization is performed.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                       int capacity = max_qubits()) {
        const std::size_t size = amplitudes.size();
        if (size < 2 || !std::has_single_bit(size)) {
            throw ValidationError("amplitude count must be a power of two >= 2");
        }
        const int q = std::countr_zero(size);
        if (q > capacity) {
            throw CapacityError("qubit count " + std::to_string(q) +
                                " exceeds cap " + std::to_string(capacity));
        }
        StateVector state;
        state.num_qubits_ = q;
        state.amplitudes_ = std::move(amplitudes);
        return state;
    }

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }

    [[nodiscard]] const Complex &operator[](std::size_t index) const {
        return amplitudes_[index];
    }
    [[nodiscard]] Complex &operator[](std::size_t index) { return amplitudes_[index]; }

    [[nodiscard]] double probability(std::size_t index) const {
        return std::norm(amplitudes_[index]);
    }

    [[nodiscard]] double norm_squared() const {
        double total = 0.0;
        for (const auto &amp : amplitudes_) {
            total += std::norm(amp);
        }
        return total;
    }

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    StateVector() = default;

    int num_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

[[nodiscard]] inline StateVector new_zero_state(int num_qubits) {
    return StateVector::zero(num_qubits);
}

namespace detail {

/// Visits every basis index whose bits under `fixed_mask` equal those of
/// `pattern`. Indices are produced in increasing order.
template <typename Fn>
void for_each_matching(int num_qubits, std::uint64_t fixed_mask,
                       std::uint64_t pattern, Fn &&fn) {
    int positions[64];
    int count = 0;
    for (std::uint64_t m = fixed_mask; m != 0; m &= m - 1) {
        positions[count++] = std::countr_zero(m);
    }
    const std::uint64_t free_states = std::uint64_t{1}
                                      << (num_qubits - count);
    for (std::uint64_t c = 0; c < free_states; ++c) {
        std::uint64_t index = c;
        for (int k = 0; k < count; ++k) {
            const int p = positions[k];
            const std::uint64_t low = index & ((std::uint64_t{1} << p) - 1);
            index = ((index >> p) << (p + 1)) | low;
        }
        fn(static_cast<std::size_t>(index | pattern));
    }
}

} // namespace detail
} // namespace qsloc::qsim
