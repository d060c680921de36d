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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_internal.h"

namespace sawloc::simd {
namespace {

bool cpu_has_avx2() {
#if defined(SAWLOC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    return supported;
#else
    return false;
#endif
}

Backend initial_backend() {
    if (const char* env = std::getenv("SAWLOC_SIMD"); env != nullptr && std::string(env) == "scalar") {
        return Backend::kScalar;
    }
    return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& active() {
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

}  // namespace

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::kScalar:
            return true;
        case Backend::kAvx2:
            return cpu_has_avx2();
    }
    return false;
}

const KernelTable& kernels_for(Backend backend) {
    if (!backend_available(backend)) {
        throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(backend)));
    }
#if defined(SAWLOC_HAVE_AVX2)
    if (backend == Backend::kAvx2) {
        return avx2_kernels();
    }
#endif
    return scalar_kernels();
}

const KernelTable& kernels() { return kernels_for(active().load(std::memory_order_relaxed)); }

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
    if (!backend_available(backend)) {
        throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(backend)));
    }
    active().store(backend, std::memory_order_relaxed);
}

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::kScalar:
            return "scalar";
        case Backend::kAvx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace sawloc::simd
