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

/// Data-parallel inner loops over dense complex amplitude arrays.
///
/// Every kernel addresses qubits by *bit position* in the array index (bit 0 is the least
/// significant), so the same kernels serve state vectors (n bits) and vectorized density
/// matrices (2n bits). Translating a qubit label into a bit position is the caller's job.
///
/// Each kernel has a scalar reference implementation and, on x86-64, an AVX2 variant. The
/// active table is chosen once at startup from the CPU feature set; `SAWLOC_SIMD=scalar` in
/// the environment forces the reference path. Both tables are always queryable so tests can
/// compare them directly.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace sawloc::simd {

using Complex = std::complex<double>;

enum class Backend { kScalar, kAvx2 };

struct KernelTable {
    Backend backend;

    /// amps[i], amps[i | 1<<bit] <- (a0 + a1, a0 - a1) / sqrt(2).
    void (*hadamard)(std::span<Complex> amps, unsigned bit);

    /// Multiplies every amplitude whose index has all bits of `mask` set by `factor`.
    void (*masked_phase)(std::span<Complex> amps, std::uint64_t mask, Complex factor);

    /// Exchanges the two bits in every index.
    void (*swap_bits)(std::span<Complex> amps, unsigned bit_a, unsigned bit_b);

    /// Applies a dense 2^k x 2^k row-major matrix on the subspace spanned by `bits`
    /// (bits[0] is the most significant bit of the local subspace index), k <= 4.
    void (*apply_matrix)(std::span<Complex> amps, std::span<const unsigned> bits,
                         std::span<const Complex> matrix);

    /// amps[i] *= factors[i].
    void (*multiply)(std::span<Complex> amps, std::span<const Complex> factors);

    double (*norm_sqr)(std::span<const Complex> amps);

    /// out[i] = |amps[i]|^2.
    void (*probabilities)(std::span<const Complex> amps, std::span<double> out);
};

inline constexpr unsigned kMaxMatrixBits = 4;

const KernelTable& scalar_kernels();

/// True if the backend was compiled in and the CPU supports it.
bool backend_available(Backend backend);

const KernelTable& kernels_for(Backend backend);

/// The table used by all library modules.
const KernelTable& kernels();

Backend active_backend();

/// Overrides runtime selection (tests, benchmarking). Throws if unavailable.
void set_active_backend(Backend backend);

std::string_view backend_name(Backend backend);

}  // namespace sawloc::simd
