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

#include "sawloc/exact_map.h"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "sawloc/errors.h"
#include "sawloc/simd/kernels.h"

namespace sawloc {
namespace {

// FFTW planning is not thread safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

Complex unit_phase(double angle) {
    const double reduced = std::fmod(angle, kTwoPi);
    return {std::cos(reduced), std::sin(reduced)};
}

}  // namespace

struct ExactStepper::Plans {
    std::size_t dim;
    fftw_complex* buffer = nullptr;
    fftw_plan to_angle = nullptr;     // sum_j psi_j e^{+2 pi i j b / N}
    fftw_plan to_momentum = nullptr;  // sum_b a_b e^{-2 pi i j b / N}

    explicit Plans(std::size_t n) : dim(n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        buffer = fftw_alloc_complex(dim);
        const int len = static_cast<int>(dim);
        to_angle = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        to_momentum = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(to_angle);
        fftw_destroy_plan(to_momentum);
        fftw_free(buffer);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;

    std::span<Complex> data() { return {reinterpret_cast<Complex*>(buffer), dim}; }
};

double StepUnitary::unitarity_error() const {
    const auto n = matrix.rows();
    return (matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DomainError("phase_aligned_distance: shape mismatch");
    }
    const Complex overlap = (b.adjoint() * a).trace();
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    return (a - phase * b).cwiseAbs().maxCoeff();
}

ExactStepper::ExactStepper(const MapParams& params)
    : params_(params),
      kick_phases_(params.dim),
      kick_factors_(params.dim),
      rotation_phases_(params.dim),
      plans_(std::make_unique<Plans>(params.dim)) {
    const std::size_t n = params.dim;
    const double inv_dim = 1.0 / static_cast<double>(n);
    for (std::size_t b = 0; b < n; ++b) {
        const double theta = kTwoPi * static_cast<double>(b) * inv_dim;
        const double offset = theta - kPi;
        kick_phases_[b] = unit_phase(0.5 * params.kick * offset * offset);
        // The (-1)^b ramps of the forward and inverse transforms multiply to 1; only the
        // 1/sqrt(N) normalizations of the two transforms remain.
        kick_factors_[b] = kick_phases_[b] * inv_dim;
        const double m = static_cast<double>(momentum_of_index(b, n));
        rotation_phases_[b] = unit_phase(-0.5 * params.period * m * m);
    }
}

ExactStepper::~ExactStepper() = default;
ExactStepper::ExactStepper(ExactStepper&&) noexcept = default;
ExactStepper& ExactStepper::operator=(ExactStepper&&) noexcept = default;

void ExactStepper::step(std::span<Complex> amplitudes) const {
    if (amplitudes.size() != params_.dim) {
        throw DomainError("state dimension " + std::to_string(amplitudes.size()) + " does not match map dimension " +
                          std::to_string(params_.dim));
    }
    const auto& k = simd::kernels();
    std::span<Complex> buf = plans_->data();
    std::copy(amplitudes.begin(), amplitudes.end(), buf.begin());
    fftw_execute(plans_->to_angle);
    k.multiply(buf, kick_factors_);
    fftw_execute(plans_->to_momentum);
    std::copy(buf.begin(), buf.end(), amplitudes.begin());
    k.multiply(amplitudes, rotation_phases_);
}

StateVector exact_step(const StateVector& state, const MapParams& params) {
    if (state.dim() != params.dim) {
        throw DomainError("exact_step: state dimension does not match params");
    }
    ExactStepper stepper(params);
    StateVector out = state;
    stepper.step(out.mutable_amplitudes());
    return out;
}

StepUnitary exact_step_unitary(const MapParams& params) {
    if (params.num_qubits > kMaxDenseQubits) {
        throw CapabilityError("dense step unitary supports at most " + std::to_string(kMaxDenseQubits) +
                              " qubits, got " + std::to_string(params.num_qubits));
    }
    ExactStepper stepper(params);
    const auto n = static_cast<Eigen::Index>(params.dim);
    StepUnitary u{Eigen::MatrixXcd::Zero(n, n)};
    std::vector<Complex> column(params.dim);
    for (Eigen::Index c = 0; c < n; ++c) {
        std::fill(column.begin(), column.end(), Complex{});
        column[static_cast<std::size_t>(c)] = 1.0;
        stepper.step(column);
        for (Eigen::Index r = 0; r < n; ++r) {
            u.matrix(r, c) = column[static_cast<std::size_t>(r)];
        }
    }
    return u;
}

std::vector<MomentumDistribution> exact_evolve(const MapParams& params, int initial_momentum, int steps) {
    if (steps < 0) {
        throw DomainError("step count must be >= 0");
    }
    StateVector psi = basis_state(params, initial_momentum);
    std::vector<MomentumDistribution> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(momentum_distribution(psi));
    if (steps == 0) {
        return out;
    }
    ExactStepper stepper(params);
    for (int t = 1; t <= steps; ++t) {
        stepper.step(psi.mutable_amplitudes());
        out.push_back(momentum_distribution(psi));
    }
    return out;
}

}  // namespace sawloc
