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


#include "sawloc/analysis.h"

#include <cmath>
#include <string>

#include "sawloc/errors.h"

namespace sawloc {
namespace {

void require_momentum(const MomentumDistribution& dist, int m0) {
    if (!dist.contains(m0)) {
        throw DomainError("momentum " + std::to_string(m0) + " outside [" + std::to_string(dist.min_momentum()) +
                          ", " + std::to_string(dist.max_momentum()) + "]");
    }
}

}  // namespace

double peak_height(const MomentumDistribution& dist, int m0) {
    dist.validate();
    require_momentum(dist, m0);
    return dist.at(m0);
}

double second_moment(const MomentumDistribution& dist, int m0) {
    dist.validate();
    double s = 0.0;
    for (int m = dist.min_momentum(); m <= dist.max_momentum(); ++m) {
        const double d = m - m0;
        s += d * d * dist.at(m);
    }
    return s;
}

double asymmetry(const MomentumDistribution& dist, int m0) {
    dist.validate();
    require_momentum(dist, m0);
    double below = 0.0;
    double above = 0.0;
    for (int m = dist.min_momentum(); m <= dist.max_momentum(); ++m) {
        if (m < m0) below += dist.at(m);
        if (m > m0) above += dist.at(m);
    }
    return below - above;
}

LocalizationFit fit_localization_length(const MomentumDistribution& dist, int m0) {
    dist.validate();
    require_momentum(dist, m0);
    std::vector<double> xs;
    std::vector<double> ys;
    for (int m = dist.min_momentum(); m <= dist.max_momentum(); ++m) {
        const double w = dist.at(m);
        if (w > kFitFloor) {
            xs.push_back(std::abs(m - m0));
            ys.push_back(std::log(w));
        }
    }
    if (xs.size() < 2) {
        throw FitUndefinedError("localization fit needs at least 2 bins above " + std::to_string(kFitFloor) +
                                ", found " + std::to_string(xs.size()));
    }
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw FitUndefinedError("localization fit: all usable bins lie at the same distance from m0");
    }
    const double slope = sxy / sxx;
    if (!(slope < 0.0)) {
        throw FitUndefinedError("localization fit: slope " + std::to_string(slope) + " is not negative");
    }
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
    }
    LocalizationFit fit;
    fit.ell = -2.0 / slope;
    fit.peak = dist.at(m0);
    fit.residual = std::sqrt(ss / n);
    fit.points_used = static_cast<int>(xs.size());
    return fit;
}

std::optional<int> break_time(std::span<const double> msd, double d) {
    if (!(d > 0.0)) throw DomainError("break_time: diffusion coefficient must be > 0");
    for (std::size_t t = 1; t < msd.size(); ++t) {
        if (msd[t] < kBreakFactor * d * static_cast<double>(t)) return static_cast<int>(t);
    }
    return std::nullopt;
}

MomentumDistribution average_distributions(std::span<const MomentumDistribution> dists) {
    if (dists.empty()) throw DomainError("average_distributions: empty input");
    std::vector<double> acc(dists.front().dim(), 0.0);
    for (const auto& d : dists) {
        if (d.dim() != acc.size()) throw DomainError("average_distributions: dimension mismatch");
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += d.weights()[i];
    }
    for (double& v : acc) v /= static_cast<double>(dists.size());
    return MomentumDistribution(std::move(acc));
}

}  // namespace sawloc
