// Copyright 2026 The sawloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sawloc/circuit.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sawloc/errors.h"
#include "sawloc/simd/kernels.h"

namespace sawloc {
namespace {

Complex unit_phase(double angle) {
    const double reduced = std::fmod(angle, kTwoPi);
    return {std::cos(reduced), std::sin(reduced)};
}

inline unsigned bit_of(int num_qubits, int qubit) { return static_cast<unsigned>(num_qubits - 1 - qubit); }

inline int wire_bit(std::size_t index, int num_qubits, int qubit) {
    return static_cast<int>((index >> bit_of(num_qubits, qubit)) & 1U);
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::kH:
            return "H";
        case GateKind::kP:
            return "P";
        case GateKind::kCP:
            return "CP";
        case GateKind::kSwap:
            return "SWAP";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view name) {
    if (name == "H") return GateKind::kH;
    if (name == "P") return GateKind::kP;
    if (name == "CP") return GateKind::kCP;
    if (name == "SWAP") return GateKind::kSwap;
    throw DomainError("unknown gate kind '" + std::string(name) + "'");
}

Circuit::Circuit(int n) : num_qubits(n), relabel(static_cast<std::size_t>(std::max(n, 0))) {
    std::iota(relabel.begin(), relabel.end(), 0);
}

void Circuit::validate() const {
    if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
        throw DomainError("circuit qubit count out of range: " + std::to_string(num_qubits));
    }
    for (const Gate& g : gates) {
        for (int i = 0; i < g.arity(); ++i) {
            if (g.qubits[i] < 0 || g.qubits[i] >= num_qubits) {
                throw DomainError("gate " + std::string(gate_kind_name(g.kind)) + " on qubit " +
                                  std::to_string(g.qubits[i]) + " outside register of " +
                                  std::to_string(num_qubits));
            }
        }
        if (g.is_two_qubit() && g.qubits[0] == g.qubits[1]) {
            throw DomainError("two-qubit gate " + std::string(gate_kind_name(g.kind)) + " needs distinct qubits");
        }
        if (!std::isfinite(g.angle)) {
            throw DomainError("gate angle must be finite");
        }
    }
    if (relabel.size() != static_cast<std::size_t>(num_qubits)) {
        throw DomainError("relabel must have one entry per qubit");
    }
    std::vector<int> sorted = relabel;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < num_qubits; ++i) {
        if (sorted[static_cast<std::size_t>(i)] != i) {
            throw DomainError("relabel is not a permutation of [0, n)");
        }
    }
}

void Circuit::append(const Circuit& other) {
    if (other.num_qubits != num_qubits) {
        throw DomainError("cannot append circuits of different widths");
    }
    for (Gate g : other.gates) {
        g.qubits[0] = relabel[static_cast<std::size_t>(g.qubits[0])];
        g.qubits[1] = relabel[static_cast<std::size_t>(g.qubits[1])];
        gates.push_back(g);
    }
    std::vector<int> composed(relabel.size());
    for (std::size_t l = 0; l < relabel.size(); ++l) {
        composed[l] = relabel[static_cast<std::size_t>(other.relabel[l])];
    }
    relabel = std::move(composed);
}

GateCounts count_gates(const Circuit& circuit) {
    GateCounts c;
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::kH:
                ++c.h;
                break;
            case GateKind::kP:
                ++c.p;
                break;
            case GateKind::kCP:
                ++c.cp;
                break;
            case GateKind::kSwap:
                ++c.swap;
                break;
        }
    }
    return c;
}

double BlockAngles::pair_angle(int n, int j1, int j2) const {
    if (j1 > j2) std::swap(j1, j2);
    if (j1 < 1 || j2 > n || j1 == j2) {
        throw DomainError("pair indices must satisfy 1 <= j1 < j2 <= n");
    }
    // Row-major offset of (j1, j2) among pairs with j1 < j2.
    std::size_t idx = 0;
    for (int a = 1; a < j1; ++a) {
        idx += static_cast<std::size_t>(n - a);
    }
    idx += static_cast<std::size_t>(j2 - j1 - 1);
    return pair[idx];
}

BlockAngles uk_angles(const MapParams& params) {
    const int n = params.num_qubits;
    const double c = kPi * kPi * params.kick;
    BlockAngles a;
    for (int j = 1; j <= n; ++j) {
        a.single.push_back(-std::ldexp(2.0 * c, -j) + std::ldexp(c, -(2 * j - 1)));
    }
    for (int j1 = 1; j1 <= n; ++j1) {
        for (int j2 = j1 + 1; j2 <= n; ++j2) {
            a.pair.push_back(std::ldexp(2.0 * c, -(j1 + j2 - 1)));
        }
    }
    return a;
}

BlockAngles ut_angles(const MapParams& params) {
    const int n = params.num_qubits;
    const double dim = static_cast<double>(params.dim);
    const double c = dim * dim * params.period;
    BlockAngles a;
    for (int j = 1; j <= n; ++j) {
        a.single.push_back(std::ldexp(2.0 * c, -(j + 2)) - std::ldexp(c, -(2 * j + 1)));
    }
    for (int j1 = 1; j1 <= n; ++j1) {
        for (int j2 = j1 + 1; j2 <= n; ++j2) {
            a.pair.push_back(-std::ldexp(2.0 * c, -(j1 + j2 + 1)));
        }
    }
    return a;
}

Circuit build_qft(int n, bool inverse) {
    if (n < 1) {
        throw DomainError("QFT needs at least one qubit");
    }
    Circuit forward(n);
    for (int q = 0; q < n; ++q) {
        forward.gates.push_back(Gate::h(q));
        for (int r = q + 1; r < n; ++r) {
            forward.gates.push_back(Gate::cp(q, r, kPi / static_cast<double>(std::size_t{1} << (r - q))));
        }
    }
    for (int l = 0; l < n; ++l) {
        forward.relabel[static_cast<std::size_t>(l)] = n - 1 - l;
    }
    if (!inverse) {
        return forward;
    }
    // Reverse, conjugate, and mirror the wires so the inverse consumes logical (not
    // bit-reversed) input; with its own bit-reversal relabel the product is QFT^-1.
    Circuit inv(n);
    for (auto it = forward.gates.rbegin(); it != forward.gates.rend(); ++it) {
        Gate g = *it;
        g.angle = -g.angle;
        g.qubits = {n - 1 - g.qubits[0], n - 1 - g.qubits[1]};
        inv.gates.push_back(g);
    }
    inv.relabel = forward.relabel;
    return inv;
}

Circuit build_diagonal_block(int n, const BlockAngles& angles) {
    Circuit block(n);
    for (int j = 1; j <= n; ++j) {
        block.gates.push_back(Gate::p(j - 1, angles.single[static_cast<std::size_t>(j - 1)]));
    }
    for (int j1 = 1; j1 <= n; ++j1) {
        for (int j2 = j1 + 1; j2 <= n; ++j2) {
            block.gates.push_back(Gate::cp(j1 - 1, j2 - 1, angles.pair_angle(n, j1, j2)));
        }
    }
    return block;
}

Circuit build_step_circuit(const MapParams& params) {
    const int n = params.num_qubits;
    Circuit step = build_qft(n, false);
    step.append(build_diagonal_block(n, uk_angles(params)));
    step.append(build_qft(n, true));
    step.append(build_diagonal_block(n, ut_angles(params)));
    return step;
}

std::size_t relabel_index(std::size_t wire_index, int num_qubits, std::span<const int> relabel) {
    std::size_t out = 0;
    for (int l = 0; l < num_qubits; ++l) {
        if (wire_bit(wire_index, num_qubits, relabel[static_cast<std::size_t>(l)])) {
            out |= std::size_t{1} << bit_of(num_qubits, l);
        }
    }
    return out;
}

std::vector<Complex> apply_relabel(std::span<const Complex> amps, int num_qubits, std::span<const int> relabel) {
    std::vector<Complex> out(amps.size());
    for (std::size_t w = 0; w < amps.size(); ++w) {
        out[relabel_index(w, num_qubits, relabel)] = amps[w];
    }
    return out;
}

Eigen::MatrixXcd gate_matrix(const Gate& gate, int num_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const double s = 1.0 / std::sqrt(2.0);
    const Complex phase{std::cos(gate.angle), std::sin(gate.angle)};
    for (Eigen::Index c = 0; c < dim; ++c) {
        const auto col = static_cast<std::size_t>(c);
        switch (gate.kind) {
            case GateKind::kH: {
                const std::size_t flip = std::size_t{1} << bit_of(num_qubits, gate.qubits[0]);
                const bool one = wire_bit(col, num_qubits, gate.qubits[0]) != 0;
                const auto c0 = static_cast<Eigen::Index>(col & ~flip);
                const auto c1 = static_cast<Eigen::Index>(col | flip);
                m(c0, c) = s;
                m(c1, c) = one ? -s : s;
                break;
            }
            case GateKind::kP:
                m(c, c) = wire_bit(col, num_qubits, gate.qubits[0]) ? phase : Complex{1.0, 0.0};
                break;
            case GateKind::kCP:
                m(c, c) = wire_bit(col, num_qubits, gate.qubits[0]) && wire_bit(col, num_qubits, gate.qubits[1])
                              ? phase
                              : Complex{1.0, 0.0};
                break;
            case GateKind::kSwap: {
                const int a = wire_bit(col, num_qubits, gate.qubits[0]);
                const int b = wire_bit(col, num_qubits, gate.qubits[1]);
                std::size_t r = col;
                if (a != b) {
                    r ^= (std::size_t{1} << bit_of(num_qubits, gate.qubits[0])) |
                         (std::size_t{1} << bit_of(num_qubits, gate.qubits[1]));
                }
                m(static_cast<Eigen::Index>(r), c) = 1.0;
                break;
            }
        }
    }
    return m;
}

StepUnitary circuit_unitary(const Circuit& circuit) {
    circuit.validate();
    const int n = circuit.num_qubits;
    if (n > kMaxDenseQubits) {
        throw CapabilityError("circuit_unitary supports at most " + std::to_string(kMaxDenseQubits) +
                              " qubits, got " + std::to_string(n));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Gate& g : circuit.gates) {
        u = gate_matrix(g, n) * u;
    }
    Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index w = 0; w < dim; ++w) {
        perm(static_cast<Eigen::Index>(relabel_index(static_cast<std::size_t>(w), n, circuit.relabel)), w) = 1.0;
    }
    return StepUnitary{perm * u};
}

void apply_gate(std::span<Complex> amps, int num_qubits, const Gate& gate, bool conjugate, unsigned bit_offset) {
    const auto& k = simd::kernels();
    const unsigned b0 = bit_offset + bit_of(num_qubits, gate.qubits[0]);
    const unsigned b1 = bit_offset + bit_of(num_qubits, gate.qubits[1]);
    const double angle = conjugate ? -gate.angle : gate.angle;
    switch (gate.kind) {
        case GateKind::kH:
            k.hadamard(amps, b0);
            break;
        case GateKind::kP:
            k.masked_phase(amps, std::uint64_t{1} << b0, unit_phase(angle));
            break;
        case GateKind::kCP:
            k.masked_phase(amps, (std::uint64_t{1} << b0) | (std::uint64_t{1} << b1), unit_phase(angle));
            break;
        case GateKind::kSwap:
            k.swap_bits(amps, b0, b1);
            break;
    }
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit) {
    circuit.validate();
    if (state.num_qubits() != circuit.num_qubits) {
        throw DomainError("apply_circuit: state has " + std::to_string(state.num_qubits()) +
                          " qubits, circuit has " + std::to_string(circuit.num_qubits));
    }
    StateVector work = state;
    for (const Gate& g : circuit.gates) {
        apply_gate(work.mutable_amplitudes(), circuit.num_qubits, g);
    }
    const bool identity = std::is_sorted(circuit.relabel.begin(), circuit.relabel.end());
    if (identity) {
        return work;
    }
    return StateVector(apply_relabel(work.amplitudes(), circuit.num_qubits, circuit.relabel));
}

}  // namespace sawloc
