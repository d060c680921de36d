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

#include <array>
#include <cstddef>
#include <span>

#include "sawloc/simd/kernels.h"

namespace sawloc::simd {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// Plain real-arithmetic product. std::complex operator* goes through the NaN-recovering
// __muldc3 path and its rounding differs from the vector code.
inline Complex cmul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct SubspaceLayout {
    std::size_t dim = 1;
    std::size_t mask = 0;
    std::array<std::size_t, 16> offsets{};

    explicit SubspaceLayout(std::span<const unsigned> bits) {
        const std::size_t k = bits.size();
        dim = std::size_t{1} << k;
        for (unsigned b : bits) {
            mask |= std::size_t{1} << b;
        }
        for (std::size_t local = 0; local < dim; ++local) {
            std::size_t off = 0;
            for (std::size_t t = 0; t < k; ++t) {
                if ((local >> (k - 1 - t)) & 1U) {
                    off |= std::size_t{1} << bits[t];
                }
            }
            offsets[local] = off;
        }
    }
};

#if defined(SAWLOC_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

}  // namespace sawloc::simd
