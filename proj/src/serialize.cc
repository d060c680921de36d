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


#include "sawloc/serialize.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sawloc/errors.h"
#include "serialize_internal.h"

namespace sawloc {

using nlohmann::ordered_json;

namespace internal {

ordered_json number_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

ordered_json params_json(const MapParams& params) {
    ordered_json j;
    j["n"] = params.num_qubits;
    j["dim"] = params.dim;
    j["L"] = params.cells ? ordered_json(*params.cells) : ordered_json(nullptr);
    j["K"] = params.chaos;
    j["k"] = params.kick;
    j["T"] = params.period;
    return j;
}

ordered_json device_json(const DeviceModel& device) {
    return ordered_json::parse(serialize_device_model(device));
}

ordered_json distribution_entries(std::span<const double> weights) {
    ordered_json arr = ordered_json::array();
    const std::size_t dim = weights.size();
    for (std::size_t b = 0; b < dim; ++b) {
        arr.push_back({{"m", momentum_of_index(b, dim)}, {"W", weights[b]}});
    }
    return arr;
}

ordered_json noisy_run_doc(const NoisyRunResult& run) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params_json(run.params);
    j["device"] = run.device;
    j["m0"] = run.initial_momentum;
    j["t"] = run.steps;
    j["shots"] = run.shots;
    j["repetitions"] = run.repetitions;
    j["seed"] = run.seed;
    j["placement"] = run.placement;
    j["swap_count"] = run.swap_count;
    j["avg_decoherence_us"] = number_json(run.avg_decoherence_us);
    j["total_error"] = run.total_error;
    j["execution_time_us"] = run.execution_time_us;
    ordered_json steps = ordered_json::array();
    for (const auto& s : run.per_step) {
        ordered_json e;
        e["t"] = s.t;
        e["distribution"] = distribution_entries(s.sampled);
        e["modeled"] = distribution_entries(s.modeled);
        e["stderr"] = s.stderr_;
        e["peak"] = s.peak;
        e["peak_stderr"] = s.peak_stderr;
        e["peak_modeled"] = s.peak_modeled;
        e["visible"] = s.visible;
        steps.push_back(std::move(e));
    }
    j["per_step"] = std::move(steps);
    return j;
}

}  // namespace internal

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string distribution_csv(const MomentumDistribution& dist) {
    std::string out = "m,W\n";
    for (std::size_t b = 0; b < dist.dim(); ++b) {
        out += std::to_string(momentum_of_index(b, dist.dim())) + "," + format_double(dist.weights()[b]) + "\n";
    }
    return out;
}

std::string distribution_json(const MomentumDistribution& dist) {
    return internal::distribution_entries(dist.weights()).dump(2) + "\n";
}

std::string circuit_to_json(const Circuit& circuit) {
    ordered_json j;
    j["n"] = circuit.num_qubits;
    ordered_json gates = ordered_json::array();
    for (const Gate& g : circuit.gates) {
        ordered_json e;
        e["kind"] = std::string(gate_kind_name(g.kind));
        if (g.is_two_qubit()) {
            e["qubits"] = {g.qubits[0], g.qubits[1]};
        } else {
            e["qubits"] = {g.qubits[0]};
        }
        e["angle"] = g.angle;
        gates.push_back(std::move(e));
    }
    j["gates"] = std::move(gates);
    j["relabel"] = circuit.relabel;
    return j.dump(2) + "\n";
}

Circuit circuit_from_json(std::string_view source) {
    ordered_json j;
    try {
        j = ordered_json::parse(source);
        Circuit c(j.at("n").get<int>());
        for (const auto& e : j.at("gates")) {
            const GateKind kind = parse_gate_kind(e.at("kind").get<std::string>());
            const auto qs = e.at("qubits").get<std::vector<int>>();
            const double angle = e.at("angle").get<double>();
            Gate g{kind, {0, 0}, angle};
            if (qs.size() != static_cast<std::size_t>(g.arity())) {
                throw ConfigError("circuit json: gate " + std::string(gate_kind_name(kind)) + " has " +
                                  std::to_string(qs.size()) + " qubits");
            }
            g.qubits = {qs[0], qs.back()};
            c.gates.push_back(g);
        }
        c.relabel = j.at("relabel").get<std::vector<int>>();
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("circuit json: ") + e.what());
    }
}

std::string noisy_run_json(const NoisyRunResult& run) { return internal::noisy_run_doc(run).dump(2) + "\n"; }

std::string diffusion_csv(const DiffusionResult& result) {
    std::string out = "t,msd,stderr\n";
    for (std::size_t t = 0; t < result.msd.size(); ++t) {
        out += std::to_string(t) + "," + format_double(result.msd[t]) + "," + format_double(result.stderr_[t]) + "\n";
    }
    return out;
}

std::string diffusion_summary_json(const DiffusionResult& result, const MapParams& params, double m0,
                                   std::uint64_t seed) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = internal::params_json(params);
    j["m0"] = m0;
    j["steps"] = result.msd.size() - 1;
    j["trajectories"] = result.trajectories;
    j["seed"] = seed;
    j["D_fit"] = result.d_fit;
    j["D_quasilinear"] = result.d_quasilinear;
    const auto ratio = result.ratio();
    j["ratio"] = ratio ? ordered_json(*ratio) : ordered_json(nullptr);
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.close();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw ConfigError("write failed for " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot move output into place at " + path.string());
    }
}

}  // namespace sawloc
