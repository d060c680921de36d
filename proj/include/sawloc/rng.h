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

#include <cstdint>

namespace sawloc {

/// SplitMix64 finalizer (Steele, Lea & Flood). Used as a counter-based generator: the
/// i-th draw of stream `seed` is splitmix64(derive_seed(seed, i)).
std::uint64_t splitmix64(std::uint64_t x);

/// Independent per-task seed for task `index` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Top 53 bits mapped to [0, 1).
double uniform01(std::uint64_t bits);

}  // namespace sawloc
