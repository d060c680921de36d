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
#include <optional>
#include <span>
#include <vector>

#include "sawloc/core_state.h"

namespace sawloc {

/// One classical trajectory point: unbounded momentum I and angle theta in [0, 2*pi).
struct PhasePoint {
    double momentum = 0.0;
    double angle = 0.0;

    bool operator==(const PhasePoint&) const = default;
};

/// Kick then rotate: I' = I + k (theta - pi), theta' = (theta + T I') mod 2*pi.
PhasePoint classical_step(PhasePoint point, const MapParams& params);

/// Exact algebraic inverse of classical_step (angle first, then momentum).
PhasePoint classical_step_inverse(PhasePoint point, const MapParams& params);

/// Reduces an angle into [0, 2*pi).
double wrap_angle(double angle);

struct ClassicalEnsemble {
    std::vector<PhasePoint> trajectories;
    std::uint64_t seed = 0;

    /// Every trajectory starts at I = m0; trajectory i draws its angle from derive_seed(seed, i).
    static ClassicalEnsemble random_angles(double m0, std::size_t size, std::uint64_t seed);

    void validate() const;
};

struct DiffusionResult {
    std::vector<double> msd;      // <(I - m0)^2> at t = 0..steps
    std::vector<double> stderr_;  // Monte Carlo standard error of each msd entry
    double d_fit = 0.0;           // least squares slope through the origin over t >= 1
    double d_quasilinear = 0.0;   // pi^2 k^2 / 3
    std::size_t trajectories = 0;

    /// d_fit / d_quasilinear; empty when k = 0.
    std::optional<double> ratio() const;
};

/// Sums with a fixed pairwise tree so the result does not depend on thread count or chunking.
double pairwise_sum(std::span<const double> values);

DiffusionResult diffusion_experiment(const MapParams& params, double m0, std::size_t ensemble_size, int steps,
                                     std::uint64_t seed);

}  // namespace sawloc
