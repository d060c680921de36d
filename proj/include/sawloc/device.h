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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sawloc/circuit.h"

namespace sawloc {

/// Times in microseconds; readout_p01 = P(read 1 | prepared 0), readout_p10 = P(read 0 | prepared 1).
struct QubitCalibration {
    double t1_us = 0.0;
    double t2_us = 0.0;
    double readout_p01 = 0.0;
    double readout_p10 = 0.0;

    bool operator==(const QubitCalibration&) const = default;
};

/// Calibration snapshot of one processor. Gate errors and durations are uniform per gate class.
struct DeviceModel {
    std::string name;
    std::vector<QubitCalibration> qubits;
    std::vector<std::array<int, 2>> coupling;
    double err_1q = 0.0;
    double err_2q = 0.0;
    double dur_1q_ns = 0.0;
    double dur_2q_ns = 0.0;
    double readout_duration_ns = 0.0;

    int num_qubits() const { return static_cast<int>(qubits.size()); }
    bool adjacent(int a, int b) const;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const DeviceModel&) const = default;
};

/// Parses the JSON device format; unknown fields are rejected. Infinite times may be written as "inf".
DeviceModel load_device_model(std::string_view source);
DeviceModel load_device_file(const std::filesystem::path& path);
std::string serialize_device_model(const DeviceModel& device);

enum class RoutingObjective { kMinSwaps, kMinTime };

/// A logical circuit mapped onto device qubits.
///
/// `circuit` acts on physical indices (width = device size, identity relabel). Wire w of the
/// logical circuit starts on placement[w]; logical output bit l ends on final_layout[l].
/// SWAPs only move qubits inside the placement set.
struct RoutedCircuit {
    Circuit circuit;
    std::vector<int> placement;
    std::vector<int> final_layout;
    int swap_count = 0;

    int num_logical() const { return static_cast<int>(placement.size()); }

    /// Same circuit on slots 0..n-1 (slot s is physical placement[s]); relabel encodes final_layout.
    Circuit local_circuit() const;

    /// Physical qubits in slot order (== placement).
    const std::vector<int>& slots() const { return placement; }
};

/// Exhaustive search over connected placements; per placement, just-in-time shortest-path
/// SWAP insertion with branch-and-bound over which endpoint moves. Ties go to the
/// lexicographically smallest placement. Throws RoutingError if no placement exists.
RoutedCircuit route_circuit(const Circuit& circuit, const DeviceModel& device,
                            RoutingObjective objective = RoutingObjective::kMinSwaps);

/// Routes with a fixed initial layout (wire w on placement[w]).
RoutedCircuit route_with_placement(const Circuit& circuit, const DeviceModel& device, std::span<const int> placement);

/// Serial schedule in microseconds: 1q gates dur_1q, CP dur_2q, SWAP 3 * dur_2q, plus readout.
double execution_time(const RoutedCircuit& routed, const DeviceModel& device);

/// Mean over `qubits` of min(T1, T2), microseconds.
double avg_decoherence(const DeviceModel& device, std::span<const int> qubits);

/// Sum of gate-class errors (SWAP = 3 err_2q) plus (p01 + p10) / 2 for each measured qubit.
double total_relative_error(const RoutedCircuit& routed, const DeviceModel& device, std::span<const int> measured);

/// Measures the qubits holding the logical outputs.
double total_relative_error(const RoutedCircuit& routed, const DeviceModel& device);

}  // namespace sawloc
