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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sawloc/analysis.h"
#include "sawloc/classical_map.h"
#include "sawloc/core_state.h"
#include "sawloc/device.h"
#include "sawloc/noise.h"

namespace sawloc {

enum class RunMode { kNoiseless, kNoisy };
enum class OutputFormat { kCsv, kJson };

RunMode parse_run_mode(std::string_view name);
OutputFormat parse_output_format(std::string_view name);
std::string_view run_mode_name(RunMode mode);

/// Fully resolved description of one command invocation.
///
/// The map is given either by (cells, chaos) or by (kick, period); when neither pair is set the
/// defaults cells = 7, chaos = 1.5 apply.
struct ExperimentConfig {
    int num_qubits = 3;
    std::optional<int> cells;
    std::optional<double> chaos;
    std::optional<double> kick;
    std::optional<double> period;
    int m0 = 0;
    int steps = 1;
    RunMode mode = RunMode::kNoiseless;
    std::optional<std::filesystem::path> device_path;
    std::int64_t shots = 8192;
    int repetitions = 10;
    std::uint64_t seed = 1;
    std::size_t trajectories = 100000;

    /// Throws ConfigError for inconsistent or incomplete settings.
    void validate() const;
    MapParams params() const;
};

struct StepAnalysis {
    double peak = 0.0;
    std::optional<double> ell;
    std::optional<double> residual;
    double asymmetry = 0.0;
    double msd = 0.0;
};

StepAnalysis analyze_step(const MomentumDistribution& dist, int m0);

struct LocalizeResult {
    ExperimentConfig config;
    MapParams params;
    std::vector<std::vector<double>> distributions;  // t = 0..steps; sampled mean in noisy mode
    std::vector<StepAnalysis> analysis;
    std::optional<DeviceModel> device;
    std::optional<NoisyRunResult> noisy;
};

/// Exact evolution or noisy simulation depending on config.mode. The device is loaded from
/// config.device_path unless one is passed in.
LocalizeResult run_localize(const ExperimentConfig& config, const DeviceModel* device = nullptr);

std::string render_localize(const LocalizeResult& result, OutputFormat format);

/// Human-readable per-step table for stdout.
std::string peak_table(const LocalizeResult& result);

struct VerifyCase {
    int num_qubits = 0;
    int cells = 0;
    double chaos = 0.0;
    double distance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyCase> cases;
    double max_distance = 0.0;
    bool ok() const;
};

/// Random (K, L) per trial: L uniform in [1, 2N], |K| uniform in [0.1, 10) with a random sign.
/// `corrupt_angle` is added to the first phase gate of every circuit as a negative control.
VerifyReport verify_equivalence(int n_min, int n_max, int trials, std::uint64_t seed, double corrupt_angle = 0.0,
                                double tolerance = 1e-9);

struct DiffusionRun {
    MapParams params;
    double m0 = 0.0;
    std::uint64_t seed = 0;
    DiffusionResult result;
};

DiffusionRun run_diffusion(const ExperimentConfig& config);
std::string render_diffusion(const DiffusionRun& run, OutputFormat format);

struct DeviceRow {
    std::string name;
    std::string file;
    std::vector<int> placement;
    int swap_count = 0;
    double avg_decoherence_us = 0.0;
    double total_error = 0.0;
    double execution_time_us = 0.0;
};

struct DeviceSurvey {
    std::vector<DeviceRow> rows;       // ascending total_error, then name
    std::vector<std::string> failures;  // "file: reason", sorted by file
};

/// Routes the one-step circuit of `params` on every *.json device in `dir`. Throws ConfigError
/// when the directory holds no device files.
DeviceSurvey survey_devices(const std::filesystem::path& dir, const MapParams& params);
std::string render_survey(const DeviceSurvey& survey, const MapParams& params, OutputFormat format);
std::string survey_table(const DeviceSurvey& survey);

enum class SweepAxis { kErr2q, kErr1q, kT1T2Scale, kSteps };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view sweep_axis_name(SweepAxis axis);

/// Device with one calibration parameter replaced (err_2q, err_1q) or T1 and T2 scaled.
/// The steps axis leaves the device unchanged.
DeviceModel transform_device(const DeviceModel& device, SweepAxis axis, double value);

struct SweepPoint {
    double value = 0.0;
    NoisyRunResult run;
};

std::vector<SweepPoint> run_sweep(const ExperimentConfig& config, const DeviceModel& device, SweepAxis axis,
                                  std::span<const double> values);
std::string render_sweep(const ExperimentConfig& config, const DeviceModel& device, SweepAxis axis,
                         std::span<const SweepPoint> points, OutputFormat format);

/// Comma-separated numbers or an inclusive integer range "a..b".
std::vector<double> parse_value_list(std::string_view text);

}  // namespace sawloc
