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
 * @file gates.hpp
 * Gate set and in-place statevector kernels.
 *
 * Every gate reduces to either a (multi-)controlled 2x2 unitary on one
 * target or a controlled swap; kernels only visit the amplitudes whose
 * control bits are active.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsloc/error.hpp"
#include "qsloc/qsim/state_vector.hpp"

namespace qsloc::qsim {

/// One control line. `on_one == false` fires when the qubit is |0>.
struct Control {
    int qubit = 0;
    bool on_one = true;

    friend bool operator==(const Control &, const Control &) = default;
};

namespace gate {

struct H {
    int target = 0;
    friend bool operator==(const H &, const H &) = default;
};

struct X {
    int target = 0;
    friend bool operator==(const X &, const X &) = default;
};

/// exp(-i theta Y / 2): |0> -> cos(theta/2)|0> + sin(theta/2)|1>.
struct Ry {
    int target = 0;
    double theta = 0.0;
    friend bool operator==(const Ry &, const Ry &) = default;
};

struct Cnot {
    int control = 0;
    int target = 0;
    friend bool operator==(const Cnot &, const Cnot &) = default;
};

/// Ry on `target` applied when every control matches its polarity.
struct CRy {
    std::vector<Control> controls;
    int target = 0;
    double theta = 0.0;
    friend bool operator==(const CRy &, const CRy &) = default;
};

/// Fredkin gate: swaps `a` and `b` when `control` is |1>.
struct CSwap {
    int control = 0;
    int a = 0;
    int b = 0;
    friend bool operator==(const CSwap &, const CSwap &) = default;
};

} // namespace gate

using GateOp = std::variant<gate::H, gate::X, gate::Ry, gate::Cnot, gate::CRy, gate::CSwap>;

template <typename... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

[[nodiscard]] inline std::string_view gate_name(const GateOp &op) {
    return std::visit(Overloaded{
                          [](const gate::H &) { return std::string_view{"h"}; },
                          [](const gate::X &) { return std::string_view{"x"}; },
                          [](const gate::Ry &) { return std::string_view{"ry"}; },
                          [](const gate::Cnot &) { return std::string_view{"cnot"}; },
                          [](const gate::CRy &) { return std::string_view{"cry"}; },
                          [](const gate::CSwap &) { return std::string_view{"cswap"}; },
                      },
                      op);
}

/// Every qubit the gate reads or writes, controls first.
[[nodiscard]] inline std::vector<int> touched_qubits(const GateOp &op) {
    return std::visit(Overloaded{
                          [](const gate::H &g) { return std::vector<int>{g.target}; },
                          [](const gate::X &g) { return std::vector<int>{g.target}; },
                          [](const gate::Ry &g) { return std::vector<int>{g.target}; },
                          [](const gate::Cnot &g) {
                              return std::vector<int>{g.control, g.target};
                          },
                          [](const gate::CRy &g) {
                              std::vector<int> out;
                              out.reserve(g.controls.size() + 1);
                              for (const auto &c : g.controls) {
                                  out.push_back(c.qubit);
                              }
                              out.push_back(g.target);
                              return out;
                          },
                          [](const gate::CSwap &g) {
                              return std::vector<int>{g.control, g.a, g.b};
                          },
                      },
                      op);
}

/// Throws ValidationError unless all indices are distinct and < num_qubits.
inline void validate_gate(const GateOp &op, int num_qubits) {
    auto qubits = touched_qubits(op);
    for (int q : qubits) {
        if (q < 0 || q >= num_qubits) {
            throw ValidationError(std::string(gate_name(op)) + ": qubit " +
                                  std::to_string(q) + " out of range for " +
                                  std::to_string(num_qubits) + " qubits");
        }
    }
    std::sort(qubits.begin(), qubits.end());
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
        throw ValidationError(std::string(gate_name(op)) + ": repeated qubit index");
    }
    if (const auto *ry = std::get_if<gate::Ry>(&op); ry && !std::isfinite(ry->theta)) {
        throw ValidationError("ry: non-finite angle");
    }
    if (const auto *cry = std::get_if<gate::CRy>(&op); cry && !std::isfinite(cry->theta)) {
        throw ValidationError("cry: non-finite angle");
    }
}

namespace detail {

inline std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

/// [[m00, m01], [m10, m11]] on `target`, restricted to the subspace where
/// the bits in `control_mask` equal `control_pattern`.
inline void apply_2x2(StateVector &state, int target, std::uint64_t control_mask,
                      std::uint64_t control_pattern, Complex m00, Complex m01,
                      Complex m10, Complex m11) {
    auto amps = state.amplitudes();
    const std::uint64_t tbit = bit(target);
    for_each_matching(state.num_qubits(), control_mask | tbit, control_pattern,
                      [&](std::size_t i0) {
                          const std::size_t i1 = i0 | tbit;
                          const Complex a0 = amps[i0];
                          const Complex a1 = amps[i1];
                          amps[i0] = m00 * a0 + m01 * a1;
                          amps[i1] = m10 * a0 + m11 * a1;
                      });
}

inline void apply_ry(StateVector &state, int target, std::uint64_t control_mask,
                     std::uint64_t control_pattern, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    auto amps = state.amplitudes();
    const std::uint64_t tbit = bit(target);
    for_each_matching(state.num_qubits(), control_mask | tbit, control_pattern,
                      [&](std::size_t i0) {
                          const std::size_t i1 = i0 | tbit;
                          const Complex a0 = amps[i0];
                          const Complex a1 = amps[i1];
                          amps[i0] = c * a0 - s * a1;
                          amps[i1] = s * a0 + c * a1;
                      });
}

inline void apply_x(StateVector &state, int target, std::uint64_t control_mask,
                    std::uint64_t control_pattern) {
    auto amps = state.amplitudes();
    const std::uint64_t tbit = bit(target);
    for_each_matching(state.num_qubits(), control_mask | tbit, control_pattern,
                      [&](std::size_t i0) { std::swap(amps[i0], amps[i0 | tbit]); });
}

inline void apply_cswap(StateVector &state, int control, int a, int b) {
    auto amps = state.amplitudes();
    const std::uint64_t cbit = bit(control);
    const std::uint64_t abit = bit(a);
    const std::uint64_t bbit = bit(b);
    // Visit |c=1, a=1, b=0> and exchange with |c=1, a=0, b=1>.
    for_each_matching(state.num_qubits(), cbit | abit | bbit, cbit | abit,
                      [&](std::size_t i) {
                          std::swap(amps[i], amps[(i & ~abit) | bbit]);
                      });
}

} // namespace detail

/// Applies `op` in place. Validates indices first.
inline void apply(StateVector &state, const GateOp &op) {
    validate_gate(op, state.num_qubits());
    std::visit(
        Overloaded{
            [&](const gate::H &g) {
                const double r = std::numbers::sqrt2 / 2.0;
                detail::apply_2x2(state, g.target, 0, 0, r, r, r, -r);
            },
            [&](const gate::X &g) { detail::apply_x(state, g.target, 0, 0); },
            [&](const gate::Ry &g) { detail::apply_ry(state, g.target, 0, 0, g.theta); },
            [&](const gate::Cnot &g) {
                detail::apply_x(state, g.target, detail::bit(g.control),
                                detail::bit(g.control));
            },
            [&](const gate::CRy &g) {
                std::uint64_t mask = 0;
                std::uint64_t pattern = 0;
                for (const auto &c : g.controls) {
                    mask |= detail::bit(c.qubit);
                    if (c.on_one) {
                        pattern |= detail::bit(c.qubit);
                    }
                }
                detail::apply_ry(state, g.target, mask, pattern, g.theta);
            },
            [&](const gate::CSwap &g) { detail::apply_cswap(state, g.control, g.a, g.b); },
        },
        op);
}

/// Value-semantics form of apply().
[[nodiscard]] inline StateVector apply_gate(StateVector state, const GateOp &op) {
    apply(state, op);
    return state;
}

enum class Pauli { X, Y, Z };

/// Single-qubit Pauli error, used by the noise model.
inline void apply_pauli(StateVector &state, int qubit, Pauli pauli) {
    const Complex zero{0.0, 0.0};
    const Complex one{1.0, 0.0};
    const Complex i{0.0, 1.0};
    switch (pauli) {
    case Pauli::X:
        detail::apply_x(state, qubit, 0, 0);
        break;
    case Pauli::Y:
        detail::apply_2x2(state, qubit, 0, 0, zero, -i, i, zero);
        break;
    case Pauli::Z:
        detail::apply_2x2(state, qubit, 0, 0, one, zero, zero, -one);
        break;
    }
}

} // namespace qsloc::qsim
