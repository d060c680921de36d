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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sawloc/core_state.h"
#include "sawloc/device.h"

namespace sawloc {

enum class ChannelKind { kDepolarizing1q, kDepolarizing2q, kThermalRelaxation, kReadoutConfusion };

/// Kraus representation of a one- or two-qubit channel.
struct NoiseChannel {
    ChannelKind kind = ChannelKind::kDepolarizing1q;
    int arity = 1;
    std::vector<Eigen::MatrixXcd> kraus;

    /// With probability p the participating qubits are replaced by the maximally mixed state.
    static NoiseChannel depolarizing(int arity, double p);

    /// Amplitude damping gamma = 1 - exp(-d/T1) followed by pure dephasing with
    /// 1/T_phi = 1/T2 - 1/(2 T1). Infinite times are allowed. Throws ConfigError if T2 > 2 T1.
    static NoiseChannel thermal_relaxation(double t1_us, double t2_us, double duration_ns);

    /// Classical misassignment [[1-p01, p10], [p01, 1-p10]] on the measured bit.
    static NoiseChannel readout_confusion(double p01, double p10);

    /// max |sum K^dagger K - I|.
    double completeness_error() const;

    /// Superoperator on the local index (row bits, column bits), both ordered with the first
    /// channel qubit most significant: S[(r', c'), (r, c)] = sum_K K[r', r] conj(K[c', c]).
    Eigen::MatrixXcd superoperator() const;
};

/// Applies a channel to the given qubits of a density matrix in place.
void apply_channel(DensityMatrix& rho, const NoiseChannel& channel, std::span<const int> qubits);

/// rho -> U rho U^dagger for one gate.
void apply_gate(DensityMatrix& rho, const Gate& gate);

/// Evolves density matrices over a fixed register of physical qubits ("slots").
///
/// Per gate, in serial order: the ideal gate, depolarizing noise with the gate-class error on
/// the participating slots (a SWAP counts as three two-qubit gates), then thermal relaxation
/// for the gate duration on every slot, active or idle.
class NoisyExecutor {
   public:
    NoisyExecutor(const DeviceModel& device, std::vector<int> slots);

    const std::vector<int>& slots() const { return slots_; }
    int slot_of(int physical) const;

    /// Runs a routed circuit whose gates act on physical qubits inside the slot set.
    void run(DensityMatrix& rho, const RoutedCircuit& routed) const;

   private:
    void relax_all(DensityMatrix& rho, double duration_ns) const;

    const DeviceModel& device_;
    std::vector<int> slots_;
    NoiseChannel depol_1q_;
    NoiseChannel depol_2q_;
    std::map<double, std::vector<NoiseChannel>> relaxation_cache_;  // keyed by duration in ns
};

/// Noisy execution of one routed circuit from a logical-basis state; returns the logical-basis result.
DensityMatrix apply_circuit_noisy(const DensityMatrix& rho, const RoutedCircuit& routed, const DeviceModel& device);

/// Applies per-qubit confusion matrices; logical qubit l is read on physical qubit physical_of_logical[l].
MomentumDistribution measure_readout(const MomentumDistribution& dist, const DeviceModel& device,
                                     std::span<const int> physical_of_logical);

/// Multinomial sample indexed by basis index (m = index - dim/2). Deterministic in `seed`.
std::vector<std::int64_t> sample_shots(const MomentumDistribution& dist, std::int64_t shots, std::uint64_t seed);

struct StepRecord {
    int t = 0;
    std::vector<double> modeled;  // readout-corrupted distribution from the density matrix
    std::vector<double> sampled;  // mean relative frequency over repetitions
    std::vector<double> stderr_;  // standard error of the sampled mean per bin
    double peak = 0.0;            // sampled W_t(m0)
    double peak_stderr = 0.0;
    double peak_modeled = 0.0;
    bool visible = false;
};

struct NoisyRunResult {
    MapParams params;
    std::string device;
    int initial_momentum = 0;
    int steps = 0;
    std::int64_t shots = 0;
    int repetitions = 0;
    std::uint64_t seed = 0;
    std::vector<int> placement;
    int swap_count = 0;
    double avg_decoherence_us = 0.0;
    double total_error = 0.0;
    double execution_time_us = 0.0;
    std::vector<StepRecord> per_step;  // t = 0..steps
};

/// Peak visibility rule: W(m0) exceeds the mean of all other bins by at least 3 standard errors.
bool peak_visible(std::span<const double> sampled, double peak_stderr, std::size_t peak_index);

/// Continuous density-matrix evolution over `steps` map steps with non-destructive,
/// readout-corrupted sampling after each step.
NoisyRunResult noisy_localization_run(const MapParams& params, const DeviceModel& device, int initial_momentum,
                                      int steps, std::int64_t shots, int repetitions, std::uint64_t seed);

}  // namespace sawloc
