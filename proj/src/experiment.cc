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


#include "sawloc/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "sawloc/circuit.h"
#include "sawloc/errors.h"
#include "sawloc/exact_map.h"
#include "sawloc/rng.h"
#include "sawloc/serialize.h"
#include "serialize_internal.h"

namespace sawloc {
namespace {

using nlohmann::ordered_json;

constexpr int kDefaultCells = 7;
constexpr double kDefaultChaos = 1.5;

ordered_json optional_json(const std::optional<double>& v) {
    return v ? internal::number_json(*v) : ordered_json(nullptr);
}

ordered_json config_json(const ExperimentConfig& c) {
    const MapParams p = c.params();
    ordered_json j;
    j["n"] = c.num_qubits;
    j["L"] = p.cells ? ordered_json(*p.cells) : ordered_json(nullptr);
    j["K"] = p.chaos;
    j["k"] = p.kick;
    j["T"] = p.period;
    j["m0"] = c.m0;
    j["steps"] = c.steps;
    j["mode"] = std::string(run_mode_name(c.mode));
    j["device"] = c.device_path ? ordered_json(c.device_path->string()) : ordered_json(nullptr);
    j["shots"] = c.shots;
    j["reps"] = c.repetitions;
    j["seed"] = c.seed;
    return j;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

ordered_json analysis_json(const StepAnalysis& a) {
    ordered_json j;
    j["peak"] = a.peak;
    j["ell"] = optional_json(a.ell);
    j["residual"] = optional_json(a.residual);
    j["asymmetry"] = a.asymmetry;
    j["msd"] = a.msd;
    return j;
}

}  // namespace

RunMode parse_run_mode(std::string_view name) {
    if (name == "noiseless") return RunMode::kNoiseless;
    if (name == "noisy") return RunMode::kNoisy;
    throw ConfigError("unknown mode '" + std::string(name) + "' (expected noiseless or noisy)");
}

std::string_view run_mode_name(RunMode mode) { return mode == RunMode::kNoisy ? "noisy" : "noiseless"; }

OutputFormat parse_output_format(std::string_view name) {
    if (name == "csv") return OutputFormat::kCsv;
    if (name == "json") return OutputFormat::kJson;
    throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

void ExperimentConfig::validate() const {
    const bool direct = kick.has_value() || period.has_value();
    if (direct && (cells.has_value() || chaos.has_value())) {
        throw ConfigError("--k/--T cannot be combined with --L/--K");
    }
    if (direct && !(kick.has_value() && period.has_value())) {
        throw ConfigError("--k and --T must be given together");
    }
    if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
        throw ConfigError("--n must lie in [1, " + std::to_string(kMaxStateQubits) + "]");
    }
    if (steps < 0) throw ConfigError("--steps must be >= 0");
    if (shots < 1) throw ConfigError("--shots must be >= 1");
    if (repetitions < 1) throw ConfigError("--reps must be >= 1");
    if (mode == RunMode::kNoisy && !device_path) throw ConfigError("noisy mode requires --device");
    const MapParams p = params();
    const int half = static_cast<int>(p.dim / 2);
    if (m0 < -half || m0 >= half) {
        throw ConfigError("--m0 must lie in [" + std::to_string(-half) + ", " + std::to_string(half - 1) + "]");
    }
}

MapParams ExperimentConfig::params() const {
    try {
        if (kick && period) return MapParams::direct(num_qubits, *kick, *period);
        return MapParams::from_cells(num_qubits, cells.value_or(kDefaultCells), chaos.value_or(kDefaultChaos));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

StepAnalysis analyze_step(const MomentumDistribution& dist, int m0) {
    StepAnalysis a;
    a.peak = peak_height(dist, m0);
    a.asymmetry = asymmetry(dist, m0);
    a.msd = second_moment(dist, m0);
    try {
        const LocalizationFit fit = fit_localization_length(dist, m0);
        a.ell = fit.ell;
        a.residual = fit.residual;
    } catch (const FitUndefinedError&) {
    }
    return a;
}

LocalizeResult run_localize(const ExperimentConfig& config, const DeviceModel* device) {
    config.validate();
    LocalizeResult r;
    r.config = config;
    r.params = config.params();
    if (config.mode == RunMode::kNoiseless) {
        for (const auto& d : exact_evolve(r.params, config.m0, config.steps)) {
            r.distributions.emplace_back(d.weights().begin(), d.weights().end());
        }
    } else {
        r.device = device ? *device : load_device_file(*config.device_path);
        r.noisy = noisy_localization_run(r.params, *r.device, config.m0, config.steps, config.shots,
                                         config.repetitions, config.seed);
        for (const auto& s : r.noisy->per_step) r.distributions.push_back(s.sampled);
    }
    for (const auto& w : r.distributions) {
        r.analysis.push_back(analyze_step(MomentumDistribution(w), config.m0));
    }
    return r;
}

std::string render_localize(const LocalizeResult& r, OutputFormat format) {
    if (format == OutputFormat::kCsv) {
        std::string out = "t,m,W,stderr\n";
        for (std::size_t t = 0; t < r.distributions.size(); ++t) {
            const auto& w = r.distributions[t];
            for (std::size_t b = 0; b < w.size(); ++b) {
                const double se = r.noisy ? r.noisy->per_step[t].stderr_[b] : 0.0;
                out += std::to_string(t) + "," + std::to_string(momentum_of_index(b, w.size())) + "," +
                       format_double(w[b]) + "," + format_double(se) + "\n";
            }
        }
        return out;
    }
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "localize";
    j["config"] = config_json(r.config);
    j["params"] = internal::params_json(r.params);
    j["device"] = r.device ? internal::device_json(*r.device) : ordered_json(nullptr);
    j["t"] = r.config.steps;
    j["seed"] = r.config.seed;
    ordered_json steps = ordered_json::array();
    for (std::size_t t = 0; t < r.distributions.size(); ++t) {
        ordered_json e;
        e["t"] = t;
        e["distribution"] = internal::distribution_entries(r.distributions[t]);
        if (r.noisy) {
            const StepRecord& s = r.noisy->per_step[t];
            e["modeled"] = internal::distribution_entries(s.modeled);
            e["stderr"] = s.stderr_;
            e["peak"] = s.peak;
            e["peak_stderr"] = s.peak_stderr;
            e["peak_modeled"] = s.peak_modeled;
            e["visible"] = s.visible;
        } else {
            e["stderr"] = std::vector<double>(r.distributions[t].size(), 0.0);
            e["peak"] = r.analysis[t].peak;
        }
        e["analysis"] = analysis_json(r.analysis[t]);
        steps.push_back(std::move(e));
    }
    j["per_step"] = std::move(steps);
    if (r.noisy) {
        ordered_json m;
        m["placement"] = r.noisy->placement;
        m["swap_count"] = r.noisy->swap_count;
        m["avg_decoherence_us"] = internal::number_json(r.noisy->avg_decoherence_us);
        m["total_error"] = r.noisy->total_error;
        m["execution_time_us"] = r.noisy->execution_time_us;
        j["metrics"] = std::move(m);
    }
    return j.dump(2) + "\n";
}

std::string peak_table(const LocalizeResult& r) {
    std::string out;
    const std::string m0 = std::to_string(r.config.m0);
    if (r.noisy) {
        out += "   t   W_t(" + m0 + ")    stderr   modeled  visible\n";
        for (const auto& s : r.noisy->per_step) {
            out += pad(std::to_string(s.t), 4) + pad(fixed(s.peak, 6), 10) + pad(fixed(s.peak_stderr, 6), 10) +
                   pad(fixed(s.peak_modeled, 6), 10) + pad(s.visible ? "yes" : "no", 9) + "\n";
        }
    } else {
        out += "   t   W_t(" + m0 + ")       msd\n";
        for (std::size_t t = 0; t < r.analysis.size(); ++t) {
            out += pad(std::to_string(t), 4) + pad(fixed(r.analysis[t].peak, 6), 10) +
                   pad(fixed(r.analysis[t].msd, 4), 10) + "\n";
        }
    }
    return out;
}

bool VerifyReport::ok() const {
    return std::all_of(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.pass; });
}

VerifyReport verify_equivalence(int n_min, int n_max, int trials, std::uint64_t seed, double corrupt_angle,
                                double tolerance) {
    if (n_min < 1 || n_max > kMaxDenseQubits || n_min > n_max) {
        throw ConfigError("verify: qubit range must lie within [1, " + std::to_string(kMaxDenseQubits) + "]");
    }
    if (trials < 1) throw ConfigError("verify: trials must be >= 1");
    VerifyReport report;
    std::uint64_t task = 0;
    for (int n = n_min; n <= n_max; ++n) {
        const int dim = 1 << n;
        for (int trial = 0; trial < trials; ++trial, ++task) {
            const std::uint64_t s = derive_seed(seed, task);
            VerifyCase c;
            c.num_qubits = n;
            c.cells = 1 + static_cast<int>(uniform01(splitmix64(derive_seed(s, 0))) * (2 * dim));
            const double magnitude = 0.1 + 9.9 * uniform01(splitmix64(derive_seed(s, 1)));
            c.chaos = (splitmix64(derive_seed(s, 2)) & 1) ? -magnitude : magnitude;
            const MapParams p = MapParams::from_cells(n, c.cells, c.chaos);
            Circuit circuit = build_step_circuit(p);
            if (corrupt_angle != 0.0) {
                for (Gate& g : circuit.gates) {
                    if (g.kind == GateKind::kP) {
                        g.angle += corrupt_angle;
                        break;
                    }
                }
            }
            c.distance = phase_aligned_distance(circuit_unitary(circuit).matrix, exact_step_unitary(p).matrix);
            c.pass = c.distance < tolerance;
            report.max_distance = std::max(report.max_distance, c.distance);
            report.cases.push_back(c);
        }
    }
    return report;
}

DiffusionRun run_diffusion(const ExperimentConfig& config) {
    if (config.trajectories < 2) throw ConfigError("--trajectories must be >= 2");
    if (config.steps < 1) throw ConfigError("--steps must be >= 1 for a diffusion fit");
    const bool direct = config.kick.has_value() || config.period.has_value();
    if (direct && (config.cells || config.chaos)) throw ConfigError("--k/--T cannot be combined with --L/--K");
    if (direct && !(config.kick && config.period)) throw ConfigError("--k and --T must be given together");
    DiffusionRun run;
    run.params = config.params();
    run.m0 = config.m0;
    run.seed = config.seed;
    run.result = diffusion_experiment(run.params, run.m0, config.trajectories, config.steps, config.seed);
    return run;
}

std::string render_diffusion(const DiffusionRun& run, OutputFormat format) {
    if (format == OutputFormat::kCsv) return diffusion_csv(run.result);
    ordered_json j = ordered_json::parse(diffusion_summary_json(run.result, run.params, run.m0, run.seed));
    ordered_json series = ordered_json::array();
    for (std::size_t t = 0; t < run.result.msd.size(); ++t) {
        series.push_back({{"t", t}, {"msd", run.result.msd[t]}, {"stderr", run.result.stderr_[t]}});
    }
    j["series"] = std::move(series);
    return j.dump(2) + "\n";
}

DeviceSurvey survey_devices(const std::filesystem::path& dir, const MapParams& params) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw ConfigError("device directory " + dir.string() + " does not exist");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no devices in " + dir.string());

    const Circuit step = build_step_circuit(params);
    DeviceSurvey survey;
    for (const auto& f : files) {
        try {
            const DeviceModel d = load_device_file(f);
            const RoutedCircuit routed = route_circuit(step, d);
            DeviceRow row;
            row.name = d.name;
            row.file = f.filename().string();
            row.placement = routed.placement;
            row.swap_count = routed.swap_count;
            row.avg_decoherence_us = avg_decoherence(d, routed.placement);
            row.total_error = total_relative_error(routed, d);
            row.execution_time_us = execution_time(routed, d);
            survey.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            const std::string msg = e.what();
            const std::string file = f.filename().string();
            survey.failures.push_back(msg.rfind(file, 0) == 0 ? msg : file + ": " + msg);
        }
    }
    std::stable_sort(survey.rows.begin(), survey.rows.end(), [](const DeviceRow& a, const DeviceRow& b) {
        if (a.total_error != b.total_error) return a.total_error < b.total_error;
        return a.name < b.name;
    });
    return survey;
}

std::string render_survey(const DeviceSurvey& survey, const MapParams& params, OutputFormat format) {
    if (format == OutputFormat::kCsv) {
        std::string out = "name,file,placement,swap_count,avg_decoherence_us,total_error,execution_time_us\n";
        for (const auto& r : survey.rows) {
            std::string placement;
            for (std::size_t i = 0; i < r.placement.size(); ++i) {
                placement += (i ? " " : "") + std::to_string(r.placement[i]);
            }
            out += r.name + "," + r.file + "," + placement + "," + std::to_string(r.swap_count) + "," +
                   format_double(r.avg_decoherence_us) + "," + format_double(r.total_error) + "," +
                   format_double(r.execution_time_us) + "\n";
        }
        return out;
    }
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "devices";
    j["params"] = internal::params_json(params);
    ordered_json rows = ordered_json::array();
    for (const auto& r : survey.rows) {
        ordered_json e;
        e["name"] = r.name;
        e["file"] = r.file;
        e["placement"] = r.placement;
        e["swap_count"] = r.swap_count;
        e["avg_decoherence_us"] = internal::number_json(r.avg_decoherence_us);
        e["total_error"] = r.total_error;
        e["execution_time_us"] = r.execution_time_us;
        rows.push_back(std::move(e));
    }
    j["devices"] = std::move(rows);
    j["failures"] = survey.failures;
    return j.dump(2) + "\n";
}

std::string survey_table(const DeviceSurvey& survey) {
    std::string out = "device          placement  swaps  <T_dec> [us]  E_tot     time [us]\n";
    for (const auto& r : survey.rows) {
        std::string placement;
        for (std::size_t i = 0; i < r.placement.size(); ++i) {
            placement += (i ? "," : "") + std::to_string(r.placement[i]);
        }
        std::string name = r.name;
        name.resize(std::max<std::size_t>(name.size(), 14), ' ');
        out += name + pad(placement, 11) + pad(std::to_string(r.swap_count), 7) +
               pad(fixed(r.avg_decoherence_us, 2), 14) + pad(fixed(r.total_error, 4), 9) +
               pad(fixed(r.execution_time_us, 3), 13) + "\n";
    }
    return out;
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "err_2q") return SweepAxis::kErr2q;
    if (name == "err_1q") return SweepAxis::kErr1q;
    if (name == "t1t2-scale") return SweepAxis::kT1T2Scale;
    if (name == "steps") return SweepAxis::kSteps;
    throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected err_2q, err_1q, t1t2-scale, steps)");
}

std::string_view sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::kErr2q:
            return "err_2q";
        case SweepAxis::kErr1q:
            return "err_1q";
        case SweepAxis::kT1T2Scale:
            return "t1t2-scale";
        case SweepAxis::kSteps:
            return "steps";
    }
    return "";
}

DeviceModel transform_device(const DeviceModel& device, SweepAxis axis, double value) {
    DeviceModel d = device;
    switch (axis) {
        case SweepAxis::kErr2q:
            d.err_2q = value;
            break;
        case SweepAxis::kErr1q:
            d.err_1q = value;
            break;
        case SweepAxis::kT1T2Scale:
            if (!(value > 0.0)) throw ConfigError("t1t2-scale values must be > 0");
            for (auto& q : d.qubits) {
                q.t1_us *= value;
                q.t2_us *= value;
            }
            break;
        case SweepAxis::kSteps:
            break;
    }
    d.validate();
    return d;
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& config, const DeviceModel& device, SweepAxis axis,
                                  std::span<const double> values) {
    if (values.empty()) throw ConfigError("sweep: no grid values");
    std::vector<SweepPoint> points;
    for (double v : values) {
        ExperimentConfig c = config;
        if (axis == SweepAxis::kSteps) {
            if (v < 0 || v != std::floor(v)) throw ConfigError("steps axis values must be non-negative integers");
            c.steps = static_cast<int>(v);
        }
        const DeviceModel d = transform_device(device, axis, v);
        SweepPoint p;
        p.value = v;
        p.run = noisy_localization_run(c.params(), d, c.m0, c.steps, c.shots, c.repetitions, c.seed);
        points.push_back(std::move(p));
    }
    return points;
}

std::string render_sweep(const ExperimentConfig& config, const DeviceModel& device, SweepAxis axis,
                         std::span<const SweepPoint> points, OutputFormat format) {
    const std::string axis_name(sweep_axis_name(axis));
    if (format == OutputFormat::kCsv) {
        std::string out = "axis,value,t,peak,peak_sampled,peak_stderr,visible\n";
        for (const auto& p : points) {
            for (const auto& s : p.run.per_step) {
                if (axis == SweepAxis::kSteps && s.t != p.run.steps) continue;
                out += axis_name + "," + format_double(p.value) + "," + std::to_string(s.t) + "," +
                       format_double(s.peak_modeled) + "," + format_double(s.peak) + "," +
                       format_double(s.peak_stderr) + "," + (s.visible ? "1" : "0") + "\n";
            }
        }
        return out;
    }
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "sweep";
    j["axis"] = axis_name;
    j["config"] = config_json(config);
    j["device"] = internal::device_json(device);
    ordered_json grid = ordered_json::array();
    for (const auto& p : points) {
        ordered_json e;
        e["value"] = p.value;
        e["run"] = internal::noisy_run_doc(p.run);
        grid.push_back(std::move(e));
    }
    j["grid"] = std::move(grid);
    return j.dump(2) + "\n";
}

std::vector<double> parse_value_list(std::string_view text) {
    std::vector<double> out;
    const auto dots = text.find("..");
    if (dots != std::string_view::npos) {
        int lo = 0;
        int hi = 0;
        const auto a = text.substr(0, dots);
        const auto b = text.substr(dots + 2);
        if (std::from_chars(a.data(), a.data() + a.size(), lo).ec != std::errc() ||
            std::from_chars(b.data(), b.data() + b.size(), hi).ec != std::errc() || hi < lo) {
            throw ConfigError("bad range '" + std::string(text) + "'");
        }
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size()) {
            throw ConfigError("bad number '" + item + "' in value list");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace sawloc
