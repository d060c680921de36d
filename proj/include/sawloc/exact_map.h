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

/// Reference evolution of the sawtooth map without any gate decomposition.
///
/// One step is psi -> exp(-i T m^2 / 2) F^dagger exp(i k (theta - pi)^2 / 2) F psi, where F
/// takes momentum amplitudes (m = b - dim/2) to the angle grid theta_b = 2 pi b / dim with
/// kernel <theta_b | m> = exp(i m theta_b) / sqrt(dim). F is evaluated with a 0-based FFT;
/// the phase ramps produced by the momentum offset cancel between F and F^dagger.

#include <memory>
#include <span>
#include <vector>

#include "sawloc/core_state.h"

namespace sawloc {

/// Dense one-step propagator (dim <= 64).
struct StepUnitary {
    Eigen::MatrixXcd matrix;

    /// max |U^dagger U - I|.
    double unitarity_error() const;
};

/// Max entrywise distance between a and e^{i phi} b, with phi chosen as arg tr(b^dagger a).
double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Reusable stepper holding the precomputed diagonal phases and FFT plans for one MapParams.
/// Not safe for concurrent use of one instance; use one per thread.
class ExactStepper {
   public:
    explicit ExactStepper(const MapParams& params);
    ~ExactStepper();
    ExactStepper(const ExactStepper&) = delete;
    ExactStepper& operator=(const ExactStepper&) = delete;
    ExactStepper(ExactStepper&&) noexcept;
    ExactStepper& operator=(ExactStepper&&) noexcept;

    const MapParams& params() const { return params_; }

    /// In-place single step on momentum amplitudes of length params().dim.
    void step(std::span<Complex> amplitudes) const;

    /// Diagonal factors, exposed for tests: exp(i k (theta_b - pi)^2 / 2) and exp(-i T m^2 / 2).
    std::span<const Complex> kick_phases() const { return kick_phases_; }
    std::span<const Complex> rotation_phases() const { return rotation_phases_; }

   private:
    struct Plans;
    MapParams params_;
    std::vector<Complex> kick_phases_;
    std::vector<Complex> kick_factors_;  // kick phase scaled by 1/dim for the unnormalized FFT pair
    std::vector<Complex> rotation_phases_;
    std::unique_ptr<Plans> plans_;
};

/// Returns U_T U_k psi. Throws DomainError on dimension mismatch.
StateVector exact_step(const StateVector& state, const MapParams& params);

/// Column b is exact_step applied to basis state b. Throws CapabilityError for dim > 64.
StepUnitary exact_step_unitary(const MapParams& params);

/// Distributions after 0, 1, ..., steps applications, starting from the momentum eigenstate m0.
std::vector<MomentumDistribution> exact_evolve(const MapParams& params, int initial_momentum, int steps);

}  // namespace sawloc
