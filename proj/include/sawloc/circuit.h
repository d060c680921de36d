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

#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "sawloc/core_state.h"
#include "sawloc/exact_map.h"

namespace sawloc {

enum class GateKind { kH, kP, kCP, kSwap };

std::string_view gate_kind_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// One gate of the {H, P, CP, SWAP} set. Qubit 0 is the most significant index bit.
/// CP and SWAP are symmetric in their two qubits.
struct Gate {
    GateKind kind = GateKind::kH;
    std::array<int, 2> qubits{0, 0};
    double angle = 0.0;  // P and CP only; kept unreduced

    static Gate h(int q) { return {GateKind::kH, {q, q}, 0.0}; }
    static Gate p(int q, double angle) { return {GateKind::kP, {q, q}, angle}; }
    static Gate cp(int a, int b, double angle) { return {GateKind::kCP, {a, b}, angle}; }
    static Gate swap(int a, int b) { return {GateKind::kSwap, {a, b}, 0.0}; }

    int arity() const { return kind == GateKind::kCP || kind == GateKind::kSwap ? 2 : 1; }
    bool is_two_qubit() const { return arity() == 2; }
    bool operator==(const Gate&) const = default;
};

/// Ordered gate list plus an output relabeling: logical output bit l is read from wire relabel[l].
struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
    std::vector<int> relabel;

    explicit Circuit(int n = 0);

    /// Throws DomainError if any gate or the relabel permutation is malformed.
    void validate() const;

    /// Appends `other`, whose logical wires are routed through this circuit's current output
    /// labeling; relabelings compose.
    void append(const Circuit& other);

    bool operator==(const Circuit&) const = default;
};

struct GateCounts {
    int h = 0;
    int p = 0;
    int cp = 0;
    int swap = 0;
    int single_qubit() const { return h + p; }
    int two_qubit() const { return cp + swap; }
    int total() const { return h + p + cp + swap; }
};

GateCounts count_gates(const Circuit& circuit);

/// Diagonal block angles: `single[j-1]` for qubit j and `pair[(j1,j2)]` in row-major order of
/// 1 <= j1 < j2 <= n.
struct BlockAngles {
    std::vector<double> single;
    std::vector<double> pair;

    /// Angle for 1-based j1 < j2.
    double pair_angle(int n, int j1, int j2) const;
};

/// Kick block exp(i k (theta - pi)^2 / 2) on the angle register, global phase dropped:
/// single_j = -2 pi^2 k / 2^j + pi^2 k / 2^(2j-1), pair_{j1 j2} = 2 pi^2 k / 2^(j1+j2-1).
BlockAngles uk_angles(const MapParams& params);

/// Free rotation exp(-i T m^2 / 2) on the momentum register (m = index - N/2):
/// single_j = 2 N^2 T / 2^(j+2) - N^2 T / 2^(2j+1), pair_{j1 j2} = -2 N^2 T / 2^(j1+j2+1).
BlockAngles ut_angles(const MapParams& params);

/// Swap-free QFT |j> -> sum_b e^{+2 pi i j b / N} |b> / sqrt(N), output bit-reversed via relabel.
/// The inverse is emitted so that, with its own bit-reversal relabel, its unitary is QFT^-1.
Circuit build_qft(int n, bool inverse);

/// Diagonal P/CP block on logical qubits 0..n-1.
Circuit build_diagonal_block(int n, const BlockAngles& angles);

/// One map step on the momentum register: QFT, kick block on the (relabeled) angle register,
/// inverse QFT, rotation block. The two bit reversals cancel so the net relabel is the identity.
Circuit build_step_circuit(const MapParams& params);

/// Dense product of all gates followed by the relabel permutation. Throws CapabilityError for n > 6.
StepUnitary circuit_unitary(const Circuit& circuit);

/// Dense 2^n x 2^n matrix of one gate (testing and superoperator construction).
Eigen::MatrixXcd gate_matrix(const Gate& gate, int num_qubits);

/// Noiseless execution with the in-place SIMD gate kernels, relabel applied to the result.
StateVector apply_circuit(const StateVector& state, const Circuit& circuit);

/// In-place gate on a raw register; relabel is not applied. `bit_offset` shifts the bit
/// positions (density matrices apply gates to their column half this way).
void apply_gate(std::span<Complex> amps, int num_qubits, const Gate& gate, bool conjugate = false,
                unsigned bit_offset = 0);

/// Permutes amplitudes so that logical bit l takes the value of wire relabel[l].
std::vector<Complex> apply_relabel(std::span<const Complex> amps, int num_qubits, std::span<const int> relabel);

/// Maps basis index over wires to the logical index under `relabel`.
std::size_t relabel_index(std::size_t wire_index, int num_qubits, std::span<const int> relabel);

}  // namespace sawloc
