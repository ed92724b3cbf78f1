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

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "qsloc/error.hpp"

namespace qsloc::qsim {

/// Histogram over measurement outcomes, indexed by outcome value.
using Histogram = std::vector<std::uint64_t>;

/// Joint counts of (ancilla bit, index value) over K shots.
///
/// Built from a histogram whose outcome encodes the index register in the
/// low `index_bits` bits and the ancilla in bit `index_bits`.
class ShotCounts {
  public:
    ShotCounts() = default;

    explicit ShotCounts(int index_bits)
        : index_bits_(index_bits),
          zero_(std::size_t{1} << index_bits, 0),
          one_(std::size_t{1} << index_bits, 0) {}

    static ShotCounts from_histogram(std::span<const std::uint64_t> histogram,
                                     int index_bits) {
        ShotCounts counts(index_bits);
        const std::size_t slots = counts.index_slots();
        if (histogram.size() != 2 * slots) {
            throw ValidationError("histogram size does not match ancilla + " +
                                  std::to_string(index_bits) + " index bits");
        }
        for (std::size_t j = 0; j < slots; ++j) {
            counts.zero_[j] = histogram[j];
            counts.one_[j] = histogram[slots + j];
        }
        return counts;
    }

    [[nodiscard]] int index_bits() const noexcept { return index_bits_; }
    [[nodiscard]] std::size_t index_slots() const noexcept { return zero_.size(); }

    /// count(a = ancilla, i = index)
    [[nodiscard]] std::uint64_t count(int ancilla, std::size_t index) const {
        check_index(index);
        return ancilla == 0 ? zero_[index] : one_[index];
    }

    /// count(i = index)
    [[nodiscard]] std::uint64_t index_count(std::size_t index) const {
        check_index(index);
        return zero_[index] + one_[index];
    }

    [[nodiscard]] std::uint64_t total_shots() const {
        return std::accumulate(zero_.begin(), zero_.end(), std::uint64_t{0}) +
               std::accumulate(one_.begin(), one_.end(), std::uint64_t{0});
    }

    void add(int ancilla, std::size_t index, std::uint64_t n = 1) {
        check_index(index);
        (ancilla == 0 ? zero_ : one_)[index] += n;
    }

    friend bool operator==(const ShotCounts &, const ShotCounts &) = default;

  private:
    void check_index(std::size_t index) const {
        if (index >= zero_.size()) {
            throw ValidationError("index " + std::to_string(index) +
                                  " outside shot-count table");
        }
    }

    int index_bits_ = 0;
    std::vector<std::uint64_t> zero_{0};
    std::vector<std::uint64_t> one_{0};
};

} // namespace qsloc::qsim
