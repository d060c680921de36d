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


// Command-line driver for the sawloc library.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sawloc/circuit.h"
#include "sawloc/device.h"
#include "sawloc/errors.h"
#include "sawloc/experiment.h"
#include "sawloc/serialize.h"

namespace {

using namespace sawloc;

constexpr const char* kDeviceDirEnv = "SAWLOC_DEVICE_DIR";

struct MapFlags {
    int n = 3;
    int cells = 0;
    double chaos = 0.0;
    double kick = 0.0;
    double period = 0.0;
    CLI::Option* cells_opt = nullptr;
    CLI::Option* chaos_opt = nullptr;
    CLI::Option* kick_opt = nullptr;
    CLI::Option* period_opt = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--n", n, "Number of qubits")->capture_default_str();
        cells_opt = app->add_option("--L", cells, "Integer L of T = 2*pi*L/N (default 7)");
        chaos_opt = app->add_option("--K", chaos, "Chaos parameter K = k*T (default 1.5)");
        kick_opt = app->add_option("--k", kick, "Kick strength (with --T)");
        period_opt = app->add_option("--T", period, "Period (with --k)");
        kick_opt->excludes(cells_opt)->excludes(chaos_opt);
        period_opt->excludes(cells_opt)->excludes(chaos_opt);
    }

    void apply(ExperimentConfig& c) const {
        c.num_qubits = n;
        if (cells_opt->count()) c.cells = cells;
        if (chaos_opt->count()) c.chaos = chaos;
        if (kick_opt->count()) c.kick = kick;
        if (period_opt->count()) c.period = period;
    }
};

struct OutputFlags {
    std::string out;
    std::string format = "json";

    void attach(CLI::App* app) {
        app->add_option("--out", out, "Output file (written atomically)");
        app->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    }
};

std::filesystem::path device_dir() {
    const char* env = std::getenv(kDeviceDirEnv);
    return env && *env ? std::filesystem::path(env) : std::filesystem::path("devices");
}

// A bare name such as "lima" resolves to <device dir>/lima.json.
std::filesystem::path resolve_device(const std::string& arg) {
    std::filesystem::path p(arg);
    if (std::filesystem::exists(p)) return p;
    if (!p.has_parent_path() && p.extension().empty()) return device_dir() / (arg + ".json");
    return p;
}

void emit(const OutputFlags& o, const std::string& text) {
    if (!o.out.empty()) write_file_atomic(o.out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum sawtooth-map localization simulator"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    MapFlags localize_map, diffusion_map, devices_map, sweep_map, circuit_map;
    OutputFlags output;
    std::string mode = "noiseless";
    std::string device;

    auto add_run_flags = [&](CLI::App* sub, MapFlags& map, bool with_mode) {
        map.attach(sub);
        sub->add_option("--m0", cfg.m0, "Initial momentum")->capture_default_str();
        sub->add_option("--steps", cfg.steps, "Number of map steps")->capture_default_str();
        if (with_mode) {
            sub->add_option("--mode", mode, "noiseless or noisy")
                ->check(CLI::IsMember({"noiseless", "noisy"}))
                ->capture_default_str();
        }
        sub->add_option("--device", device, "Device file, or a name looked up in $" + std::string(kDeviceDirEnv));
        sub->add_option("--shots", cfg.shots, "Shots per repetition")->capture_default_str();
        sub->add_option("--reps", cfg.repetitions, "Repetitions")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
        output.attach(sub);
    };

    CLI::App* localize = app.add_subcommand("localize", "Per-step momentum distributions and peak heights");
    add_run_flags(localize, localize_map, true);

    CLI::App* verify = app.add_subcommand("verify", "Check the gate circuit against the exact step unitary");
    int n_min = 1;
    int n_max = 3;
    int trials = 10;
    std::uint64_t verify_seed = 1;
    double corrupt = 0.0;
    verify->add_option("--n-min", n_min, "Smallest qubit count")->capture_default_str();
    verify->add_option("--n-max", n_max, "Largest qubit count")->capture_default_str();
    verify->add_option("--trials", trials, "Random (K, L) pairs per qubit count")->capture_default_str();
    verify->add_option("--seed", verify_seed, "Base seed")->capture_default_str();
    verify->add_option("--corrupt-angle", corrupt)->group("");

    CLI::App* diffusion = app.add_subcommand("diffusion", "Classical ensemble second moment and diffusion fit");
    diffusion_map.attach(diffusion);
    diffusion->add_option("--m0", cfg.m0, "Initial momentum")->capture_default_str();
    int diffusion_steps = 50;
    diffusion->add_option("--steps", diffusion_steps, "Number of map steps")->capture_default_str();
    diffusion->add_option("--trajectories", cfg.trajectories, "Ensemble size")->capture_default_str();
    diffusion->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    output.attach(diffusion);

    CLI::App* devices = app.add_subcommand("devices", "Compare device fixtures for the one-step circuit");
    std::string dir;
    devices_map.attach(devices);
    devices->add_option("--dir", dir, "Device directory (default $" + std::string(kDeviceDirEnv) + " or ./devices)");
    output.attach(devices);

    CLI::App* sweep = app.add_subcommand("sweep", "Noisy runs over a grid of one device parameter");
    add_run_flags(sweep, sweep_map, false);
    std::string axis;
    std::string values;
    sweep->add_option("--axis", axis, "err_2q, err_1q, t1t2-scale or steps")->required();
    sweep->add_option("--values", values, "Comma-separated values or an integer range a..b")->required();

    CLI::App* circuit = app.add_subcommand("circuit", "Emit the one-step gate circuit");
    circuit_map.attach(circuit);
    bool routed = false;
    circuit->add_flag("--routed", routed, "Route onto --device");
    circuit->add_option("--device", device, "Device file or name");
    output.attach(circuit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        for (auto [sub, flags] : {std::pair{localize, &localize_map}, std::pair{diffusion, &diffusion_map},
                                  std::pair{devices, &devices_map}, std::pair{sweep, &sweep_map},
                                  std::pair{circuit, &circuit_map}}) {
            if (sub->parsed()) flags->apply(cfg);
        }
        if (diffusion->parsed()) cfg.steps = diffusion_steps;
        if (!device.empty()) cfg.device_path = resolve_device(device);
        const OutputFormat format = parse_output_format(output.format);

        if (localize->parsed()) {
            cfg.mode = parse_run_mode(mode);
            const LocalizeResult r = run_localize(cfg);
            emit(output, render_localize(r, format));
            std::cout << peak_table(r);
            return 0;
        }
        if (verify->parsed()) {
            const VerifyReport report = verify_equivalence(n_min, n_max, trials, verify_seed, corrupt);
            for (const auto& c : report.cases) {
                if (!c.pass) {
                    std::cerr << "FAIL n=" << c.num_qubits << " K=" << format_double(c.chaos) << " L=" << c.cells
                              << " distance=" << format_double(c.distance) << "\n";
                }
            }
            std::cout << "checked " << report.cases.size() << " cases, max distance "
                      << format_double(report.max_distance) << "\n";
            return report.ok() ? 0 : 1;
        }
        if (diffusion->parsed()) {
            const DiffusionRun run = run_diffusion(cfg);
            if (!output.out.empty()) {
                write_file_atomic(output.out, render_diffusion(run, format));
                if (format == OutputFormat::kCsv) {
                    std::filesystem::path summary = output.out;
                    summary.replace_extension(".summary.json");
                    write_file_atomic(summary, diffusion_summary_json(run.result, run.params, run.m0, run.seed));
                }
            }
            const auto ratio = run.result.ratio();
            std::cout << "D_fit " << format_double(run.result.d_fit) << "\nD_quasilinear "
                      << format_double(run.result.d_quasilinear) << "\nratio "
                      << (ratio ? format_double(*ratio) : std::string("undefined")) << "\n";
            return 0;
        }
        if (devices->parsed()) {
            const MapParams params = cfg.params();
            const DeviceSurvey survey = survey_devices(dir.empty() ? device_dir() : std::filesystem::path(dir), params);
            emit(output, render_survey(survey, params, format));
            std::cout << survey_table(survey);
            for (const auto& f : survey.failures) std::cerr << "skipped " << f << "\n";
            return survey.failures.empty() ? 0 : 1;
        }
        if (sweep->parsed()) {
            if (!cfg.device_path) throw ConfigError("sweep requires --device");
            cfg.mode = RunMode::kNoisy;
            cfg.validate();
            const DeviceModel d = load_device_file(*cfg.device_path);
            const SweepAxis a = parse_sweep_axis(axis);
            const auto grid = parse_value_list(values);
            const auto points = run_sweep(cfg, d, a, grid);
            emit(output, render_sweep(cfg, d, a, points, format));
            std::cout << render_sweep(cfg, d, a, points, OutputFormat::kCsv);
            return 0;
        }
        if (circuit->parsed()) {
            const Circuit step = build_step_circuit(cfg.params());
            std::string text;
            if (routed) {
                if (!cfg.device_path) throw ConfigError("--routed requires --device");
                const RoutedCircuit r = route_circuit(step, load_device_file(*cfg.device_path));
                text = circuit_to_json(r.circuit);
                std::cerr << "swaps " << r.swap_count << "\n";
            } else {
                text = circuit_to_json(step);
            }
            const GateCounts counts = count_gates(step);
            if (output.out.empty()) {
                std::cout << text;
            } else {
                emit(output, text);
            }
            std::cerr << "H " << counts.h << " P " << counts.p << " CP " << counts.cp << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
