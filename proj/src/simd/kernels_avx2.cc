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

// AVX2 variants. One __m256d holds two complex doubles laid out [re0, im0, re1, im1].
// Products use separate mul/addsub (no FMA) so element-wise kernels round exactly like
// the scalar reference; only the norm reduction changes summation order.

#include <immintrin.h>

#include "kernels_internal.h"

namespace sawloc::simd {
namespace {

inline double* raw(Complex* p) { return reinterpret_cast<double*>(p); }
inline const double* raw(const Complex* p) { return reinterpret_cast<const double*>(p); }

inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(raw(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(raw(p), v); }

// x * (re + i im) with re/im broadcast to all lanes.
inline __m256d cmul_bcast(__m256d x, __m256d re, __m256d im) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_addsub_pd(_mm256_mul_pd(x, re), _mm256_mul_pd(swapped, im));
}

// Lane-wise complex product of two packed pairs.
inline __m256d cmul_packed(__m256d x, __m256d f) {
    const __m256d re = _mm256_movedup_pd(f);
    const __m256d im = _mm256_permute_pd(f, 0b1111);
    return cmul_bcast(x, re, im);
}

void hadamard(std::span<Complex> amps, unsigned bit) {
    const __m256d s = _mm256_set1_pd(kInvSqrt2);
    Complex* a = amps.data();
    const std::size_t size = amps.size();
    if (size < 2) {
        return;
    }
    if (bit == 0) {
        for (std::size_t i = 0; i < size; i += 2) {
            const __m256d v = load2(a + i);
            const __m256d sw = _mm256_permute2f128_pd(v, v, 0x01);
            const __m256d sum = _mm256_add_pd(v, sw);
            const __m256d diff = _mm256_sub_pd(sw, v);
            store2(a + i, _mm256_mul_pd(_mm256_blend_pd(sum, diff, 0b1100), s));
        }
        return;
    }
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; j += 2) {
            const __m256d a0 = load2(a + j);
            const __m256d a1 = load2(a + j + stride);
            store2(a + j, _mm256_mul_pd(_mm256_add_pd(a0, a1), s));
            store2(a + j + stride, _mm256_mul_pd(_mm256_sub_pd(a0, a1), s));
        }
    }
}

void masked_phase(std::span<Complex> amps, std::uint64_t mask, Complex factor) {
    const std::size_t size = amps.size();
    if (size < 2) {
        scalar_kernels().masked_phase(amps, mask, factor);
        return;
    }
    const __m256d re = _mm256_set1_pd(factor.real());
    const __m256d im = _mm256_set1_pd(factor.imag());
    Complex* a = amps.data();
    const bool low_bit = (mask & 1U) != 0;
    for (std::size_t i = 0; i < size; i += 2) {
        if (((i | 1U) & mask) != mask) {
            continue;
        }
        const __m256d v = load2(a + i);
        const __m256d p = cmul_bcast(v, re, im);
        store2(a + i, low_bit ? _mm256_blend_pd(v, p, 0b1100) : p);
    }
}

void swap_bits(std::span<Complex> amps, unsigned bit_a, unsigned bit_b) {
    if (bit_a == 0 || bit_b == 0 || amps.size() < 2) {
        scalar_kernels().swap_bits(amps, bit_a, bit_b);
        return;
    }
    if (bit_a == bit_b) {
        return;
    }
    const std::size_t ma = std::size_t{1} << bit_a;
    const std::size_t mb = std::size_t{1} << bit_b;
    Complex* a = amps.data();
    for (std::size_t i = 0; i < amps.size(); i += 2) {
        if ((i & ma) && !(i & mb)) {
            const std::size_t k = i ^ ma ^ mb;
            const __m256d x = load2(a + i);
            store2(a + i, load2(a + k));
            store2(a + k, x);
        }
    }
}

void apply_matrix(std::span<Complex> amps, std::span<const unsigned> bits,
                  std::span<const Complex> matrix) {
    const SubspaceLayout layout(bits);
    if ((layout.mask & 1U) || amps.size() < 2) {
        scalar_kernels().apply_matrix(amps, bits, matrix);
        return;
    }
    const std::size_t d = layout.dim;
    __m256d m_re[256];
    __m256d m_im[256];
    for (std::size_t e = 0; e < d * d; ++e) {
        m_re[e] = _mm256_set1_pd(matrix[e].real());
        m_im[e] = _mm256_set1_pd(matrix[e].imag());
    }
    Complex* a = amps.data();
    __m256d in[16];
    for (std::size_t i = 0; i < amps.size(); i += 2) {
        if (i & layout.mask) {
            continue;
        }
        for (std::size_t c = 0; c < d; ++c) {
            in[c] = load2(a + i + layout.offsets[c]);
        }
        for (std::size_t r = 0; r < d; ++r) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t c = 0; c < d; ++c) {
                acc = _mm256_add_pd(acc, cmul_bcast(in[c], m_re[r * d + c], m_im[r * d + c]));
            }
            store2(a + i + layout.offsets[r], acc);
        }
    }
}

void multiply(std::span<Complex> amps, std::span<const Complex> factors) {
    const std::size_t size = amps.size();
    std::size_t i = 0;
    for (; i + 2 <= size; i += 2) {
        store2(amps.data() + i, cmul_packed(load2(amps.data() + i), load2(factors.data() + i)));
    }
    for (; i < size; ++i) {
        amps[i] = cmul(amps[i], factors[i]);
    }
}

double norm_sqr(std::span<const Complex> amps) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= amps.size(); i += 2) {
        const __m256d v = load2(amps.data() + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < amps.size(); ++i) {
        total += amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
    }
    return total;
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
    std::size_t i = 0;
    for (; i + 2 <= amps.size(); i += 2) {
        const __m256d v = load2(amps.data() + i);
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v, v), _mm256_setzero_pd());
        const __m256d packed = _mm256_permute4x64_pd(h, 0b1000);
        _mm_storeu_pd(out.data() + i, _mm256_castpd256_pd128(packed));
    }
    for (; i < amps.size(); ++i) {
        out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
    }
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{
        Backend::kAvx2, hadamard, masked_phase, swap_bits, apply_matrix,
        multiply,       norm_sqr, probabilities,
    };
    return table;
}

}  // namespace sawloc::simd
