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

#include <filesystem>
#include <string>
#include <string_view>

#include "sawloc/circuit.h"
#include "sawloc/classical_map.h"
#include "sawloc/core_state.h"
#include "sawloc/noise.h"

namespace sawloc {

/// Bumped whenever a field of any emitted document changes meaning.
inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

/// CSV with header `m,W`, one row per momentum in ascending order.
std::string distribution_csv(const MomentumDistribution& dist);

/// JSON array [{"m": ..., "W": ...}, ...].
std::string distribution_json(const MomentumDistribution& dist);

/// {"n": ..., "gates": [{"kind", "qubits", "angle"}], "relabel": [...]}.
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(std::string_view source);

/// {schema_version, params, device, t, per_step: [{t, distribution, modeled, stderr, peak, visible}], seed, ...}.
std::string noisy_run_json(const NoisyRunResult& run);

/// CSV with header `t,msd,stderr`.
std::string diffusion_csv(const DiffusionResult& result);

/// {schema_version, params, m0, steps, trajectories, seed, D_fit, D_quasilinear, ratio}.
std::string diffusion_summary_json(const DiffusionResult& result, const MapParams& params, double m0,
                                   std::uint64_t seed);

/// Writes to a sibling temporary file and renames it over `path`; nothing is left behind on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace sawloc
