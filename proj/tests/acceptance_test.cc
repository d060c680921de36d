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


// Acceptance suite: one PASS/FAIL line per criterion. Argument 1 is the CLI binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "sawloc/analysis.h"
#include "sawloc/circuit.h"
#include "sawloc/classical_map.h"
#include "sawloc/device.h"
#include "sawloc/exact_map.h"
#include "sawloc/experiment.h"
#include "sawloc/noise.h"

using namespace sawloc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string num(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MapParams standard() { return MapParams::from_cells(3, 7, 1.5); }

DeviceModel fixture(const std::string& name) {
    return load_device_file(std::string(SAWLOC_DEVICE_FIXTURES) + "/" + name + ".json");
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const VerifyReport r = verify_equivalence(1, 6, 10, 2026);
    const double secs = seconds_since(t0);
    o.check(r.ok(), "all cases below 1e-9");
    o.check(r.cases.size() == 60, "60 cases");
    o.check(secs < 30, "runtime < 30 s");
    o.note(std::to_string(r.cases.size()) + " cases, max distance " + num(r.max_distance) + ", " + num(secs, 3) + " s");
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double w = exact_evolve(standard(), 0, 1).back().at(0);
    const double secs = seconds_since(t0);
    o.check(std::abs(w - 0.83) <= 0.01, "W1(0) = 0.83 +- 0.01");
    o.check(std::abs(w - 0.829455036666805) < 1e-12, "matches frozen 0.829455036666805");
    o.check(secs < 1, "runtime < 1 s");
    o.note("W1(0) = " + num(w, 15));
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        const GateCounts c = count_gates(build_step_circuit(MapParams::from_cells(n, 7, 1.5)));
        o.check(c.h == 2 * n && c.p == 2 * n && c.cp == 2 * (n * n - n) && c.swap == 0,
                "counts at n=" + std::to_string(n));
    }
    const GateCounts c3 = count_gates(build_step_circuit(standard()));
    o.check(c3.single_qubit() == 12 && c3.two_qubit() == 12, "12 + 12 at n=3");
    o.note("n=3: " + std::to_string(c3.single_qubit()) + " single-qubit, " + std::to_string(c3.two_qubit()) +
           " two-qubit");
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto d = exact_evolve(standard(), 0, 50);
    double lo = 1.0;
    double sum = 0.0;
    for (int t = 1; t <= 50; ++t) {
        const double w = d[static_cast<std::size_t>(t)].at(0);
        lo = std::min(lo, w);
        sum += w;
    }
    const double mean = sum / 50;
    o.check(lo > 0.7, "min > 0.7");
    o.check(std::abs(mean - 0.9) <= 0.1, "mean within 0.9 +- 0.1");
    o.check(std::abs(d[50].at(0) - 0.976001051350560) < 1e-12, "frozen W50(0)");
    o.note("min " + num(lo, 6) + ", mean " + num(mean, 6));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (double k : {0.1, 0.273, 1.5}) {
        const auto r = diffusion_experiment(MapParams::direct(3, k, 2.0), 0.0, 100000, 1, 5);
        const double want = k * k * kPi * kPi / 3;
        o.check(std::abs(r.msd[1] - want) <= 4 * r.stderr_[1], "one-step variance at k=" + num(k));
    }
    const auto r = diffusion_experiment(standard(), 0.0, 100000, 50, 1);
    const double ratio = *r.ratio();
    o.check(std::abs(ratio - 1.0) <= 0.4, "D within 40% of quasilinear");
    const double secs = seconds_since(t0);
    o.check(secs < 30, "runtime < 30 s");
    o.note("D_fit " + num(r.d_fit) + ", D_ql " + num(r.d_quasilinear) + ", ratio " + num(ratio) + ", " + num(secs, 3) +
           " s");
    return o;
}

Outcome criterion6() {
    Outcome o;
    constexpr int kQubits = 8;
    constexpr double kKick = 3.0;
    constexpr double kPeriod = 0.8;
    constexpr int kBegin = 300;
    constexpr int kEnd = 1000;
    constexpr int kEnsemble = 16;
    std::vector<MomentumDistribution> averages;
    std::vector<double> msd(kEnd, 0.0);
    for (int i = 0; i < kEnsemble; ++i) {
        const MapParams p = MapParams::direct(kQubits, kKick, kPeriod * (1.0 + 0.01 * i));
        const auto traj = exact_evolve(p, 0, kEnd - 1);
        averages.push_back(average_distributions(std::span(traj).subspan(kBegin, kEnd - kBegin)));
        for (int t = 0; t < kEnd; ++t) msd[static_cast<std::size_t>(t)] += second_moment(traj[static_cast<std::size_t>(t)], 0) / kEnsemble;
    }
    const MomentumDistribution steady = average_distributions(averages);
    const double d = kPi * kPi * kKick * kKick / 3;
    try {
        const LocalizationFit fit = fit_localization_length(steady, 0);
        o.check(fit.residual < 0.5, "log residual < 0.5");
        o.check(fit.ell > d / 3 && fit.ell < 3 * d, "ell within a factor 3 of D");
        o.check(fit.ell < static_cast<double>(1 << kQubits), "ell below N");
        const auto tb = break_time(msd, d);
        o.note("ell " + num(fit.ell) + ", D " + num(d) + ", residual " + num(fit.residual) + ", break time " +
               (tb ? std::to_string(*tb) : std::string("none")));
        o.check(tb.has_value() && *tb > fit.ell / 3 && *tb < 3 * fit.ell, "break time within a factor 3 of ell");
    } catch (const std::exception& e) {
        o.check(false, std::string("fit: ") + e.what());
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    const DeviceModel lima = fixture("lima");
    const DeviceModel york = fixture("yorktown");
    const auto rl = noisy_localization_run(standard(), lima, 0, 6, 8192, 10, 1);
    const auto ry = noisy_localization_run(standard(), york, 0, 6, 8192, 10, 1);
    const double w1 = rl.per_step[1].peak;
    o.check(w1 > 0.56 && w1 < 0.83, "(a) lima W1(0) in (0.56, 0.83)");

    bool monotone = true;
    const std::vector<std::pair<SweepAxis, std::vector<double>>> sweeps = {
        {SweepAxis::kErr2q, {0.0, 0.005, 0.01, 0.02, 0.05, 0.1}},
        {SweepAxis::kErr1q, {0.0, 0.001, 0.01, 0.05}},
        {SweepAxis::kT1T2Scale, {100.0, 10.0, 1.0, 0.5, 0.1}},
    };
    for (const auto& [axis, grid] : sweeps) {
        double last = 2.0;
        for (double v : grid) {
            const auto run = noisy_localization_run(standard(), transform_device(lima, axis, v), 0, 1, 64, 1, 1);
            const double w = run.per_step[1].peak_modeled;
            monotone = monotone && w <= last + 1e-12;
            last = w;
        }
    }
    o.check(monotone, "(b) monotone sweeps");

    DeviceModel flip = lima;
    for (auto& q : flip.qubits) q.readout_p01 = q.readout_p10 = 0;
    const double p = 0.05;
    flip.qubits[0].readout_p10 = p;
    std::vector<double> w(8, 0.0);
    w[4] = 0.6;
    w[5] = 0.4;
    const int phys[] = {0, 1, 2};
    const auto out = measure_readout(MomentumDistribution(w), flip, phys);
    o.check(std::abs(out.at(-4) - p * 0.6) < 1e-15 && std::abs(out.at(0) - (1 - p) * 0.6) < 1e-15,
            "(c) MSB flip moves p*W(0) to m=-4");

    bool ordered = true;
    for (int t = 0; t <= 6; ++t) {
        ordered = ordered && ry.per_step[static_cast<std::size_t>(t)].peak_modeled <
                                 rl.per_step[static_cast<std::size_t>(t)].peak_modeled;
    }
    o.check(ordered, "(d) yorktown-like below lima-like for t <= 6");
    o.note("lima W1(0) " + num(w1) + " +- " + num(rl.per_step[1].peak_stderr, 2) + ", yorktown W1(0) " +
           num(ry.per_step[1].peak));
    return o;
}

int oracle_swaps(const Circuit& c, const DeviceModel& d) {
    std::vector<std::array<int, 2>> pairs;
    for (const Gate& g : c.gates) {
        if (g.is_two_qubit()) pairs.push_back(g.qubits);
    }
    using State = std::pair<std::size_t, std::vector<int>>;
    std::map<State, int> dist;
    std::priority_queue<std::pair<int, State>, std::vector<std::pair<int, State>>, std::greater<>> pq;
    const int m = d.num_qubits();
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int e = 0; e < m; ++e) {
                if (a == b || b == e || a == e) continue;
                State s{0, {a, b, e}};
                dist[s] = 0;
                pq.push({0, s});
            }
    while (!pq.empty()) {
        auto [cost, s] = pq.top();
        pq.pop();
        if (dist[s] < cost) continue;
        if (s.first == pairs.size()) return cost;
        auto relax = [&](State next, int c2) {
            auto it = dist.find(next);
            if (it == dist.end() || c2 < it->second) {
                dist[next] = c2;
                pq.push({c2, next});
            }
        };
        const auto& g = pairs[s.first];
        if (d.adjacent(s.second[static_cast<std::size_t>(g[0])], s.second[static_cast<std::size_t>(g[1])])) {
            relax({s.first + 1, s.second}, cost);
        }
        for (const auto& e : d.coupling) {
            std::vector<int> next = s.second;
            bool touched = false;
            for (int& q : next) {
                if (q == e[0] || q == e[1]) {
                    q = q == e[0] ? e[1] : e[0];
                    touched = true;
                }
            }
            if (touched) relax({s.first, next}, cost + 1);
        }
    }
    return -1;
}

Outcome criterion8() {
    Outcome o;
    const Circuit step = build_step_circuit(standard());
    const DeviceModel york = fixture("yorktown");
    const RoutedCircuit best = route_circuit(step, york);
    o.check(best.swap_count == 0, "triangle placement has 0 SWAPs");
    int paths = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c) {
                if (a == b || b == c || a == c) continue;
                if (york.adjacent(a, b) + york.adjacent(b, c) + york.adjacent(a, c) != 2) continue;
                const std::vector<int> placement = {a, b, c};
                const RoutedCircuit r = route_with_placement(step, york, placement);
                o.check(execution_time(r, york) > execution_time(best, york) &&
                            total_relative_error(r, york) > total_relative_error(best, york),
                        "path placement " + std::to_string(a) + std::to_string(b) + std::to_string(c));
                ++paths;
            }
    o.check(paths > 0, "path placements exist");
    std::string counts;
    for (const char* name : {"lima", "belem", "quito", "santiago", "athens", "yorktown"}) {
        const DeviceModel d = fixture(name);
        const int got = route_circuit(step, d).swap_count;
        const int want = oracle_swaps(step, d);
        o.check(got == want, std::string("oracle swap count on ") + name);
        counts += std::string(counts.empty() ? "" : " ") + name + "=" + std::to_string(got);
    }
    o.note(std::to_string(paths) + " path placements worse; swaps " + counts);
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion9(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.check(false, "CLI path not given");
        return o;
    }
    const auto dir = std::filesystem::temp_directory_path() / "sawloc_acceptance_determinism";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::string devices = SAWLOC_DEVICE_FIXTURES;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"localize.json", "localize --steps 4 --out {}"},
        {"localize_noisy.json", "localize --mode noisy --device " + devices + "/lima.json --steps 3 --seed 7 --out {}"},
        {"localize_noisy.csv",
         "localize --mode noisy --device " + devices + "/yorktown.json --steps 2 --format csv --out {}"},
        {"diffusion.csv", "diffusion --trajectories 20000 --seed 3 --format csv --out {}"},
        {"devices.json", "devices --dir " + devices + " --out {}"},
        {"sweep.csv", "sweep --device " + devices + "/lima.json --axis err_2q --values 0,0.01,0.02 --shots 2048 "
                      "--reps 3 --format csv --out {}"},
        {"circuit.json", "circuit --out {}"},
    };
    int compared = 0;
    for (const auto& [file, args] : commands) {
        std::string first;
        for (int run = 0; run < 2; ++run) {
            const auto out = dir / (std::to_string(run) + "_" + file);
            std::string a = args;
            a.replace(a.find("{}"), 2, out.string());
            const std::string cmd = "\"" + cli + "\" " + a + " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                o.check(false, "command failed: " + a);
                break;
            }
            const std::string text = slurp(out);
            if (run == 0) {
                first = text;
            } else {
                o.check(!text.empty() && text == first, "byte-identical " + file);
                ++compared;
            }
        }
    }
    std::filesystem::remove_all(dir);
    o.note(std::to_string(compared) + " outputs compared");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"circuit-oracle equivalence", criterion1},
        {"peak value after one step", criterion2},
        {"gate counts", criterion3},
        {"long-time noiseless localization", criterion4},
        {"classical diffusion", criterion5},
        {"exponential localization shape", criterion6},
        {"noise-model substitutes", criterion7},
        {"routing", criterion8},
        {"determinism", [&] { return criterion9(cli); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
