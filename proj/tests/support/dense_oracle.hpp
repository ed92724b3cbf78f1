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

// Test-only reference simulator. Every gate becomes a full 2^q x 2^q matrix
// assembled from Kronecker products of single-qubit operators, so it shares
// no indexing code with the production kernels. Slow; keep q <= 8.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qsloc/qsim/circuit.hpp"
#include "qsloc/qsim/gates.hpp"

namespace qsloc::oracle {

using C = std::complex<double>;

struct Mat2 {
    C a, b, c, d; // [[a, b], [c, d]]
};

inline constexpr Mat2 kI{1, 0, 0, 1};
inline constexpr Mat2 kP0{1, 0, 0, 0};
inline constexpr Mat2 kP1{0, 0, 0, 1};
inline constexpr Mat2 kX{0, 1, 1, 0};
inline const Mat2 kY{0, C(0, -1), C(0, 1), 0};
inline constexpr Mat2 kZ{1, 0, 0, -1};

class Dense {
  public:
    explicit Dense(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static Dense identity(std::size_t dim) {
        Dense out(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            out(i, i) = 1.0;
        }
        return out;
    }

    C &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    C operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    [[nodiscard]] std::size_t dim() const { return dim_; }

    Dense &operator+=(const Dense &o) {
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    Dense operator*(C s) const {
        Dense out = *this;
        for (auto &v : out.data_) {
            v *= s;
        }
        return out;
    }

    [[nodiscard]] std::vector<C> apply(const std::vector<C> &v) const {
        std::vector<C> out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            C acc = 0;
            for (std::size_t c = 0; c < dim_; ++c) {
                acc += (*this)(r, c) * v[c];
            }
            out[r] = acc;
        }
        return out;
    }

  private:
    std::size_t dim_;
    std::vector<C> data_;
};

/// ops[q] acts on qubit q; qubit 0 is the least significant index bit, so
/// the product is taken with the highest qubit as the leftmost factor.
inline Dense kron_all(const std::vector<Mat2> &ops) {
    Dense acc = Dense::identity(1);
    for (std::size_t k = ops.size(); k-- > 0;) {
        const Mat2 &m = ops[k];
        Dense next(acc.dim() * 2);
        const C e[2][2] = {{m.a, m.b}, {m.c, m.d}};
        for (std::size_t r = 0; r < acc.dim(); ++r) {
            for (std::size_t c = 0; c < acc.dim(); ++c) {
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        next(r * 2 + i, c * 2 + j) = acc(r, c) * e[i][j];
                    }
                }
            }
        }
        acc = std::move(next);
    }
    return acc;
}

/// sum over control patterns: P_match (x) U + (I - P_match) (x) I.
inline Dense controlled(int q, const std::vector<qsim::Control> &controls, int target,
                        const Mat2 &u) {
    std::vector<Mat2> on(q, kI);
    std::vector<Mat2> proj(q, kI);
    for (const auto &c : controls) {
        on[c.qubit] = c.on_one ? kP1 : kP0;
        proj[c.qubit] = c.on_one ? kP1 : kP0;
    }
    on[target] = u;
    Dense out = kron_all(on);
    out += Dense::identity(std::size_t{1} << q);
    out += kron_all(proj) * C(-1.0);
    return out;
}

inline Mat2 ry(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {c, -s, s, c};
}

inline Dense gate_matrix(int q, const qsim::GateOp &op) {
    const double r = 1.0 / std::numbers::sqrt2;
    return std::visit(
        qsim::Overloaded{
            [&](const qsim::gate::H &g) { return controlled(q, {}, g.target, {r, r, r, -r}); },
            [&](const qsim::gate::X &g) { return controlled(q, {}, g.target, kX); },
            [&](const qsim::gate::Ry &g) { return controlled(q, {}, g.target, ry(g.theta)); },
            [&](const qsim::gate::Cnot &g) {
                return controlled(q, {{g.control, true}}, g.target, kX);
            },
            [&](const qsim::gate::CRy &g) {
                return controlled(q, g.controls, g.target, ry(g.theta));
            },
            [&](const qsim::gate::CSwap &g) {
                // SWAP = (II + XX + YY + ZZ) / 2, applied under P1 on the control.
                Dense out = Dense::identity(std::size_t{1} << q);
                std::vector<Mat2> p1(q, kI);
                p1[g.control] = kP1;
                out += kron_all(p1) * C(-1.0);
                for (const Mat2 &pauli : {kI, kX, kY, kZ}) {
                    auto term = p1;
                    term[g.a] = pauli;
                    term[g.b] = pauli;
                    out += kron_all(term) * C(0.5);
                }
                return out;
            },
        },
        op);
}

/// Final state of `circuit` from |0...0>.
inline std::vector<C> dense_run(const qsim::Circuit &circuit) {
    std::vector<C> state(std::size_t{1} << circuit.num_qubits, 0.0);
    state[0] = 1.0;
    for (const auto &op : circuit.ops) {
        state = gate_matrix(circuit.num_qubits, op).apply(state);
    }
    return state;
}

} // namespace qsloc::oracle
