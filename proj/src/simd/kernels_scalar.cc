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

#include <array>
#include <cmath>

#include "kernels_internal.h"

namespace sawloc::simd {
namespace {

void hadamard(std::span<Complex> amps, unsigned bit) {
    const std::size_t stride = std::size_t{1} << bit;
    const double s = kInvSqrt2;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
            const Complex a0 = amps[j];
            const Complex a1 = amps[j + stride];
            amps[j] = {(a0.real() + a1.real()) * s, (a0.imag() + a1.imag()) * s};
            amps[j + stride] = {(a0.real() - a1.real()) * s, (a0.imag() - a1.imag()) * s};
        }
    }
}

void masked_phase(std::span<Complex> amps, std::uint64_t mask, Complex factor) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] = cmul(amps[i], factor);
        }
    }
}

void swap_bits(std::span<Complex> amps, unsigned bit_a, unsigned bit_b) {
    if (bit_a == bit_b) {
        return;
    }
    const std::size_t ma = std::size_t{1} << bit_a;
    const std::size_t mb = std::size_t{1} << bit_b;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ma) && !(i & mb)) {
            std::swap(amps[i], amps[i ^ ma ^ mb]);
        }
    }
}

void apply_matrix(std::span<Complex> amps, std::span<const unsigned> bits,
                  std::span<const Complex> matrix) {
    const SubspaceLayout layout(bits);
    const std::size_t d = layout.dim;
    std::array<Complex, 16> in{};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & layout.mask) {
            continue;
        }
        for (std::size_t c = 0; c < d; ++c) {
            in[c] = amps[i + layout.offsets[c]];
        }
        for (std::size_t r = 0; r < d; ++r) {
            double re = 0.0;
            double im = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const Complex p = cmul(matrix[r * d + c], in[c]);
                re += p.real();
                im += p.imag();
            }
            amps[i + layout.offsets[r]] = {re, im};
        }
    }
}

void multiply(std::span<Complex> amps, std::span<const Complex> factors) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = cmul(amps[i], factors[i]);
    }
}

double norm_sqr(std::span<const Complex> amps) {
    double total = 0.0;
    for (const Complex& a : amps) {
        total += a.real() * a.real() + a.imag() * a.imag();
    }
    return total;
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        Backend::kScalar, hadamard, masked_phase, swap_bits, apply_matrix,
        multiply,         norm_sqr, probabilities,
    };
    return table;
}

}  // namespace sawloc::simd
