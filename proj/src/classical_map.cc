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


#include "sawloc/classical_map.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sawloc/errors.h"
#include "sawloc/rng.h"

namespace sawloc {

double wrap_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

PhasePoint classical_step(PhasePoint point, const MapParams& params) {
    if (!(point.angle >= 0.0 && point.angle < kTwoPi)) {
        throw DomainError("classical_step: angle " + std::to_string(point.angle) + " outside [0, 2pi)");
    }
    const double momentum = point.momentum + params.kick * (point.angle - kPi);
    return {momentum, wrap_angle(point.angle + params.period * momentum)};
}

PhasePoint classical_step_inverse(PhasePoint point, const MapParams& params) {
    const double angle = wrap_angle(point.angle - params.period * point.momentum);
    return {point.momentum - params.kick * (angle - kPi), angle};
}

ClassicalEnsemble ClassicalEnsemble::random_angles(double m0, std::size_t size, std::uint64_t seed) {
    ClassicalEnsemble e;
    e.seed = seed;
    e.trajectories.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        const double theta = kTwoPi * uniform01(splitmix64(derive_seed(seed, i)));
        e.trajectories.push_back({m0, theta});
    }
    return e;
}

void ClassicalEnsemble::validate() const {
    for (const auto& p : trajectories) {
        if (!(p.angle >= 0.0 && p.angle < kTwoPi)) {
            throw DomainError("ensemble angle outside [0, 2pi)");
        }
    }
}

std::optional<double> DiffusionResult::ratio() const {
    if (d_quasilinear == 0.0) return std::nullopt;
    return d_fit / d_quasilinear;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

DiffusionResult diffusion_experiment(const MapParams& params, double m0, std::size_t ensemble_size, int steps,
                                     std::uint64_t seed) {
    if (ensemble_size < 2) throw DomainError("diffusion_experiment: ensemble size must be >= 2");
    if (steps < 1) throw DomainError("diffusion_experiment: steps must be >= 1");

    ClassicalEnsemble ensemble = ClassicalEnsemble::random_angles(m0, ensemble_size, seed);
    DiffusionResult out;
    out.trajectories = ensemble_size;
    out.d_quasilinear = kPi * kPi * params.kick * params.kick / 3.0;
    out.msd.push_back(0.0);
    out.stderr_.push_back(0.0);

    const auto m = static_cast<double>(ensemble_size);
    std::vector<double> sq(ensemble_size);
    std::vector<double> quad(ensemble_size);
    double num = 0.0;
    double den = 0.0;
    for (int t = 1; t <= steps; ++t) {
        for (std::size_t i = 0; i < ensemble_size; ++i) {
            auto& p = ensemble.trajectories[i];
            p = classical_step(p, params);
            const double d = p.momentum - m0;
            sq[i] = d * d;
            quad[i] = sq[i] * sq[i];
        }
        const double mean = pairwise_sum(sq) / m;
        const double var = std::max(0.0, (pairwise_sum(quad) - m * mean * mean) / (m - 1.0));
        out.msd.push_back(mean);
        out.stderr_.push_back(std::sqrt(var / m));
        num += t * mean;
        den += static_cast<double>(t) * t;
    }
    out.d_fit = num / den;
    return out;
}

}  // namespace sawloc
