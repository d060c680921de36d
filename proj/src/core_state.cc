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

#include "sawloc/core_state.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sawloc/errors.h"
#include "sawloc/simd/kernels.h"

namespace sawloc {
namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kDistributionTolerance = 1e-9;
constexpr double kClampTolerance = 1e-12;

void check_qubits(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
        throw DomainError("qubit count must be in [1, " + std::to_string(kMaxStateQubits) +
                          "], got " + std::to_string(num_qubits));
    }
}

}  // namespace

int log2_exact(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        return -1;
    }
    int n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    return n;
}

MapParams MapParams::from_cells(int num_qubits, int cells, double chaos) {
    check_qubits(num_qubits);
    if (cells < 1) {
        throw DomainError("cells (L) must be >= 1 so that the period is positive");
    }
    if (!std::isfinite(chaos) || chaos == 0.0) {
        throw DomainError("chaos parameter K must be finite and nonzero; use MapParams::direct for k = 0");
    }
    MapParams p;
    p.num_qubits = num_qubits;
    p.dim = std::size_t{1} << num_qubits;
    p.cells = cells;
    p.period = kTwoPi * cells / static_cast<double>(p.dim);
    p.chaos = chaos;
    p.kick = chaos / p.period;
    return p;
}

MapParams MapParams::direct(int num_qubits, double kick, double period) {
    check_qubits(num_qubits);
    if (!std::isfinite(kick) || !std::isfinite(period) || period < 0.0) {
        throw DomainError("kick must be finite and period finite and >= 0");
    }
    MapParams p;
    p.num_qubits = num_qubits;
    p.dim = std::size_t{1} << num_qubits;
    p.period = period;
    p.kick = kick;
    p.chaos = kick * period;
    return p;
}

int momentum_of_index(std::size_t index, std::size_t dim) {
    if (log2_exact(dim) < 1) {
        throw DomainError("dimension must be a power of two >= 2, got " + std::to_string(dim));
    }
    if (index >= dim) {
        throw DomainError("basis index " + std::to_string(index) + " outside [0, " + std::to_string(dim) + ")");
    }
    return static_cast<int>(index) - static_cast<int>(dim / 2);
}

std::size_t index_of_momentum(int momentum, std::size_t dim) {
    if (log2_exact(dim) < 1) {
        throw DomainError("dimension must be a power of two >= 2, got " + std::to_string(dim));
    }
    const long long half = static_cast<long long>(dim / 2);
    if (momentum < -half || momentum >= half) {
        throw DomainError("momentum " + std::to_string(momentum) + " outside [" + std::to_string(-half) + ", " +
                          std::to_string(half) + ")");
    }
    return static_cast<std::size_t>(momentum + half);
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    num_qubits_ = log2_exact(amps_.size());
    if (num_qubits_ < 1 || num_qubits_ > kMaxStateQubits) {
        throw DomainError("state size must be 2^n with 1 <= n <= " + std::to_string(kMaxStateQubits));
    }
    const double nrm = norm();
    if (!(std::abs(nrm - 1.0) <= kNormTolerance)) {
        throw DomainError("state norm " + std::to_string(nrm) + " differs from 1");
    }
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    check_qubits(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw DomainError("basis index out of range");
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm() const { return std::sqrt(simd::kernels().norm_sqr(amps_)); }

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : rho_(std::move(entries)) {
    if (rho_.rows() != rho_.cols()) {
        throw DomainError("density matrix must be square");
    }
    num_qubits_ = log2_exact(static_cast<std::size_t>(rho_.rows()));
    if (num_qubits_ < 1 || num_qubits_ > kMaxDenseQubits + 4) {
        throw DomainError("density matrix dimension must be 2^n with 1 <= n <= 10");
    }
    validate();
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
    Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), static_cast<Eigen::Index>(state.dim()));
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    check_qubits(num_qubits);
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    if (hermiticity_error() > kNormTolerance) {
        throw DomainError("density matrix is not Hermitian (error " + std::to_string(hermiticity_error()) + ")");
    }
    if (std::abs(trace() - 1.0) > kNormTolerance || std::abs(rho_.trace().imag()) > kNormTolerance) {
        throw DomainError("density matrix trace " + std::to_string(trace()) + " differs from 1");
    }
    if (min_eigenvalue() < -1e-8) {
        throw DomainError("density matrix is not positive semidefinite");
    }
}

MomentumDistribution::MomentumDistribution(std::vector<double> weights) : weights_(std::move(weights)) {
    if (log2_exact(weights_.size()) < 1) {
        throw DomainError("distribution size must be a power of two >= 2");
    }
    for (double& w : weights_) {
        if (!std::isfinite(w) || w < -kClampTolerance || w > 1.0 + kClampTolerance) {
            throw DomainError("distribution weight " + std::to_string(w) + " outside [0, 1]");
        }
        w = std::clamp(w, 0.0, 1.0);
    }
    validate();
}

double MomentumDistribution::at(int momentum) const { return weights_[index_of_momentum(momentum, weights_.size())]; }

void MomentumDistribution::validate() const {
    double total = 0.0;
    for (double w : weights_) {
        total += w;
    }
    if (std::abs(total - 1.0) > kDistributionTolerance) {
        throw DomainError("distribution sums to " + std::to_string(total) + ", not 1");
    }
}

StateVector basis_state(const MapParams& params, int initial_momentum) {
    return StateVector::basis(params.num_qubits, index_of_momentum(initial_momentum, params.dim));
}

MomentumDistribution momentum_distribution(const StateVector& state) {
    std::vector<double> w(state.dim());
    simd::kernels().probabilities(state.amplitudes(), w);
    return MomentumDistribution(std::move(w));
}

MomentumDistribution momentum_distribution(const DensityMatrix& state) {
    std::vector<double> w(state.dim());
    for (std::size_t b = 0; b < state.dim(); ++b) {
        w[b] = state.matrix()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
    }
    return MomentumDistribution(std::move(w));
}

}  // namespace sawloc
