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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sawloc {

using Complex = std::complex<double>;

inline constexpr int kMaxStateQubits = 20;
inline constexpr int kMaxDenseQubits = 6;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Parameter bundle of the quantum sawtooth map on a register of `num_qubits` qubits.
///
/// The kick strength and period are the only quantities the dynamics use; `chaos` is their
/// product and `cells` is the integer L of the period = 2*pi*L/dim convention when the
/// bundle was built that way.
struct MapParams {
    int num_qubits = 0;
    std::size_t dim = 0;
    std::optional<int> cells;
    double period = 0.0;
    double chaos = 0.0;
    double kick = 0.0;

    /// period = 2*pi*cells/dim, kick = chaos/period. Requires cells >= 1 and chaos != 0.
    static MapParams from_cells(int num_qubits, int cells, double chaos);

    /// Arbitrary (kick, period), including the degenerate kick = 0 or period = 0 cases.
    static MapParams direct(int num_qubits, double kick, double period);

    bool operator==(const MapParams&) const = default;
};

/// m = b - dim/2. Throws DomainError for b outside [0, dim) or dim not a power of two.
int momentum_of_index(std::size_t index, std::size_t dim);

/// Inverse of momentum_of_index.
std::size_t index_of_momentum(int momentum, std::size_t dim);

/// Pure state over the computational basis. Qubit 0 is the most significant bit of the index.
class StateVector {
   public:
    /// Throws DomainError unless the size is a power of two (>= 2) and the norm is 1 within 1e-10.
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    double norm() const;

    /// Raw access for in-place evolution. Callers must apply only norm-preserving maps.
    std::span<Complex> mutable_amplitudes() { return amps_; }

   private:
    int num_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// Mixed state. Stored column-major, so entry (r, c) sits at flat index c*dim + r: the low
/// num_qubits bits of the flat index are the row (ket) bits and the high bits the column bits.
class DensityMatrix {
   public:
    /// Validates Hermiticity and unit trace (1e-10) and positivity (min eigenvalue >= -1e-8).
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    static DensityMatrix pure(const StateVector& state);
    static DensityMatrix maximally_mixed(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return rho_; }
    std::span<const Complex> flat() const { return {rho_.data(), static_cast<std::size_t>(rho_.size())}; }

    /// Raw access for channel application. Callers must apply only CPTP maps.
    std::span<Complex> mutable_flat() { return {rho_.data(), static_cast<std::size_t>(rho_.size())}; }

    double trace() const;
    double min_eigenvalue() const;
    double hermiticity_error() const;

    /// Re-runs the constructor checks; throws DomainError on failure.
    void validate() const;

   private:
    int num_qubits_ = 0;
    Eigen::MatrixXcd rho_;
};

/// Probabilities W_m over m in [-dim/2, dim/2), stored by basis index b = m + dim/2.
class MomentumDistribution {
   public:
    /// Entries must lie in [0, 1] (round-off down to -1e-12 is clamped) and sum to 1 within 1e-9.
    explicit MomentumDistribution(std::vector<double> weights);

    std::size_t dim() const { return weights_.size(); }
    int min_momentum() const { return -static_cast<int>(weights_.size() / 2); }
    int max_momentum() const { return static_cast<int>(weights_.size() / 2) - 1; }
    bool contains(int momentum) const { return momentum >= min_momentum() && momentum <= max_momentum(); }

    /// W_m; throws DomainError if m is outside the window.
    double at(int momentum) const;
    std::span<const double> weights() const { return weights_; }

    /// Re-checks the normalization invariant (analysis entry points call this).
    void validate() const;

   private:
    std::vector<double> weights_;
};

StateVector basis_state(const MapParams& params, int initial_momentum);

MomentumDistribution momentum_distribution(const StateVector& state);
MomentumDistribution momentum_distribution(const DensityMatrix& state);

/// Number of qubits n with 2^n == dim, or -1.
int log2_exact(std::size_t dim);

}  // namespace sawloc
