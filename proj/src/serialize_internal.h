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

#include <span>

#include "json.hpp"
#include "sawloc/core_state.h"
#include "sawloc/device.h"
#include "sawloc/noise.h"

namespace sawloc::internal {

nlohmann::ordered_json number_json(double v);
nlohmann::ordered_json params_json(const MapParams& params);
nlohmann::ordered_json device_json(const DeviceModel& device);
nlohmann::ordered_json distribution_entries(std::span<const double> weights);
nlohmann::ordered_json noisy_run_doc(const NoisyRunResult& run);

}  // namespace sawloc::internal
