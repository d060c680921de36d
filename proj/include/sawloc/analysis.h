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

#include <optional>
#include <span>
#include <vector>

#include "sawloc/core_state.h"

namespace sawloc {

/// Bins at or below this weight are excluded from the localization fit.
inline constexpr double kFitFloor = 1e-12;

/// Break-time rule: first t >= 1 with msd(t) < kBreakFactor * D * t.
inline constexpr double kBreakFactor = 0.5;

struct LocalizationFit {
    double ell = 0.0;       // W_m ~ exp(-2 |m - m0| / ell)
    double peak = 0.0;      // W(m0)
    double residual = 0.0;  // rms residual of ln W
    int points_used = 0;
};

double peak_height(const MomentumDistribution& dist, int m0);

/// sum_m (m - m0)^2 W_m.
double second_moment(const MomentumDistribution& dist, int m0);

/// Weight below m0 minus weight above m0.
double asymmetry(const MomentumDistribution& dist, int m0);

/// Pooled two-sided least squares of ln W_m against |m - m0|. Throws FitUndefinedError with
/// fewer than two usable bins, a single distinct distance, or a non-negative slope.
LocalizationFit fit_localization_length(const MomentumDistribution& dist, int m0);

/// Smallest t >= 1 with msd[t] < kBreakFactor * d * t, or nullopt. msd[0] is t = 0.
std::optional<int> break_time(std::span<const double> msd, double d);

/// Uniform mixture of equally sized distributions.
MomentumDistribution average_distributions(std::span<const MomentumDistribution> dists);

}  // namespace sawloc
