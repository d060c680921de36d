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

#include <stdexcept>
#include <string>

namespace sawloc {

/// Argument outside the mathematical domain of an operation (bad index, size mismatch, broken invariant).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Request exceeds what a dense construction supports (e.g. unitary extraction above 6 qubits).
struct CapabilityError : std::length_error {
    using std::length_error::length_error;
};

/// Malformed or unphysical device / experiment configuration. The message names the field.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Localization fit has fewer than two usable bins or a non-decaying slope.
struct FitUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sawloc
