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


#include "sawloc/device.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "gtest/gtest.h"
#include "sawloc/errors.h"
#include "sawloc/exact_map.h"

using namespace sawloc;

namespace {

DeviceModel fixture(const std::string& name) {
    return load_device_file(std::string(SAWLOC_DEVICE_FIXTURES) + "/" + name + ".json");
}

DeviceModel toy_device(int n, std::vector<std::array<int, 2>> coupling) {
    DeviceModel d;
    d.name = "toy";
    d.qubits.assign(static_cast<std::size_t>(n), QubitCalibration{100, 100, 0.01, 0.02});
    d.coupling = std::move(coupling);
    d.err_1q = 1e-3;
    d.err_2q = 1e-2;
    d.dur_1q_ns = 50;
    d.dur_2q_ns = 300;
    d.readout_duration_ns = 1000;
    return d;
}

// Minimum SWAP count by Dijkstra over (next two-qubit gate, layout), free initial layout, SWAPs
// on any coupling edge.
int brute_force_swaps(const Circuit& c, const DeviceModel& d) {
    std::vector<std::array<int, 2>> pairs;
    for (const Gate& g : c.gates) {
        if (g.is_two_qubit()) pairs.push_back(g.qubits);
    }
    using State = std::pair<std::size_t, std::vector<int>>;
    std::map<State, int> dist;
    std::priority_queue<std::pair<int, State>, std::vector<std::pair<int, State>>, std::greater<>> pq;
    const int n = c.num_qubits;
    const int m = d.num_qubits();
    std::vector<int> layout(static_cast<std::size_t>(n));
    // All injective placements.
    std::function<void(int, std::vector<bool>&)> place = [&](int w, std::vector<bool>& used) {
        if (w == n) {
            State s{0, layout};
            dist[s] = 0;
            pq.push({0, s});
            return;
        }
        for (int q = 0; q < m; ++q) {
            if (used[static_cast<std::size_t>(q)]) continue;
            used[static_cast<std::size_t>(q)] = true;
            layout[static_cast<std::size_t>(w)] = q;
            place(w + 1, used);
            used[static_cast<std::size_t>(q)] = false;
        }
    };
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    place(0, used);
    while (!pq.empty()) {
        auto [cost, s] = pq.top();
        pq.pop();
        if (dist[s] < cost) continue;
        if (s.first == pairs.size()) return cost;
        const auto& lay = s.second;
        const auto& g = pairs[s.first];
        auto relax = [&](State next, int c2) {
            auto it = dist.find(next);
            if (it == dist.end() || c2 < it->second) {
                dist[next] = c2;
                pq.push({c2, next});
            }
        };
        if (d.adjacent(lay[static_cast<std::size_t>(g[0])], lay[static_cast<std::size_t>(g[1])])) {
            relax({s.first + 1, lay}, cost);
        }
        for (const auto& e : d.coupling) {
            std::vector<int> next = lay;
            bool touched = false;
            for (int& p : next) {
                if (p == e[0]) {
                    p = e[1];
                    touched = true;
                } else if (p == e[1]) {
                    p = e[0];
                    touched = true;
                }
            }
            if (touched) relax({s.first, next}, cost + 1);
        }
    }
    return -1;
}

bool routed_gates_are_native(const RoutedCircuit& r, const DeviceModel& d) {
    return std::all_of(r.circuit.gates.begin(), r.circuit.gates.end(), [&](const Gate& g) {
        return !g.is_two_qubit() || d.adjacent(g.qubits[0], g.qubits[1]);
    });
}

}  // namespace

TEST(DeviceModel, loads_fixtures) {
    for (const char* name : {"lima", "belem", "quito", "santiago", "athens", "yorktown"}) {
        const DeviceModel d = fixture(name);
        EXPECT_EQ(d.num_qubits(), 5) << name;
        EXPECT_NO_THROW(d.validate());
        EXPECT_EQ(load_device_model(serialize_device_model(d)), d);
    }
}

TEST(DeviceModel, rejects_bad_files) {
    std::string good = serialize_device_model(toy_device(2, {{0, 1}}));
    EXPECT_NO_THROW(load_device_model(good));
    auto with = [&](const std::string& from, const std::string& to) {
        std::string s = good;
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    EXPECT_THROW(load_device_model(with("\"err_1q\"", "\"err_1qq\"")), ConfigError);
    EXPECT_THROW(load_device_model("{"), ConfigError);
    try {
        load_device_model(with("\"t2_us\": 100.0", "\"t2_us\": 500.0"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("qubits[0].t2_us"), std::string::npos) << e.what();
    }
    try {
        load_device_model(with("\"t1_us\": 100.0", "\"t1_us\": -1.0"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("qubits[0].t1_us"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load_device_model(with("[\n      0,\n      1\n    ]", "[0, 0]")), ConfigError);
}

TEST(DeviceModel, infinite_times) {
    DeviceModel d = toy_device(2, {{0, 1}});
    d.qubits[0].t1_us = std::numeric_limits<double>::infinity();
    d.qubits[0].t2_us = std::numeric_limits<double>::infinity();
    const std::string text = serialize_device_model(d);
    EXPECT_NE(text.find("\"inf\""), std::string::npos);
    EXPECT_EQ(load_device_model(text), d);
}

TEST(Routing, triangle_needs_no_swaps) {
    const DeviceModel york = fixture("yorktown");
    const RoutedCircuit r = route_circuit(build_step_circuit(MapParams::from_cells(3, 7, 1.5)), york);
    EXPECT_EQ(r.swap_count, 0);
    EXPECT_EQ(r.placement, (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(routed_gates_are_native(r, york));
}

TEST(Routing, matches_brute_force_oracle) {
    const Circuit step = build_step_circuit(MapParams::from_cells(3, 7, 1.5));
    for (const char* name : {"lima", "belem", "quito", "santiago", "athens", "yorktown"}) {
        const DeviceModel d = fixture(name);
        const RoutedCircuit r = route_circuit(step, d);
        EXPECT_EQ(r.swap_count, brute_force_swaps(step, d)) << name;
        EXPECT_TRUE(routed_gates_are_native(r, d)) << name;
    }
    const DeviceModel ring = toy_device(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    for (int n = 2; n <= 4; ++n) {
        const Circuit c = build_step_circuit(MapParams::from_cells(n, 3, 1.0));
        EXPECT_EQ(route_circuit(c, ring).swap_count, brute_force_swaps(c, ring)) << n;
    }
}

TEST(Routing, routed_circuit_is_equivalent) {
    const DeviceModel lima = fixture("lima");
    const Circuit step = build_step_circuit(MapParams::from_cells(3, 7, 1.5));
    const RoutedCircuit r = route_circuit(step, lima);
    EXPECT_GT(r.swap_count, 0);
    const Circuit local = r.local_circuit();
    EXPECT_LT(phase_aligned_distance(circuit_unitary(local).matrix, circuit_unitary(step).matrix), 1e-12);
}

TEST(Routing, forced_path_placements_are_worse) {
    const DeviceModel york = fixture("yorktown");
    const Circuit step = build_step_circuit(MapParams::from_cells(3, 7, 1.5));
    const RoutedCircuit best = route_circuit(step, york);
    const double t_best = execution_time(best, york);
    const double e_best = total_relative_error(best, york);
    int paths = 0;
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            for (int c = 0; c < 5; ++c) {
                if (a == b || b == c || a == c) continue;
                const int edges = york.adjacent(a, b) + york.adjacent(b, c) + york.adjacent(a, c);
                if (edges != 2) continue;
                const std::vector<int> placement = {a, b, c};
                const RoutedCircuit r = route_with_placement(step, york, placement);
                EXPECT_GT(r.swap_count, 0);
                EXPECT_GT(execution_time(r, york), t_best);
                EXPECT_GT(total_relative_error(r, york), e_best);
                ++paths;
            }
        }
    }
    EXPECT_GT(paths, 0);
}

TEST(Routing, unroutable) {
    const DeviceModel small = toy_device(2, {{0, 1}});
    EXPECT_THROW(route_circuit(build_step_circuit(MapParams::from_cells(3, 7, 1.5)), small), RoutingError);
    const DeviceModel split = toy_device(4, {{0, 1}, {2, 3}});
    EXPECT_THROW(route_circuit(build_step_circuit(MapParams::from_cells(3, 7, 1.5)), split), RoutingError);
}

TEST(Metrics, definitions) {
    const DeviceModel d = toy_device(3, {{0, 1}, {1, 2}});
    Circuit c(2);
    c.gates = {Gate::h(0), Gate::cp(0, 1, 0.3)};
    const RoutedCircuit r = route_circuit(c, d);
    EXPECT_EQ(r.swap_count, 0);
    EXPECT_NEAR(execution_time(r, d), (50 + 300 + 1000) / 1000.0, 1e-12);
    EXPECT_NEAR(total_relative_error(r, d), 1e-3 + 1e-2 + 2 * 0.015, 1e-12);
    const int qs[] = {0, 1};
    EXPECT_DOUBLE_EQ(avg_decoherence(d, qs), 100.0);
    EXPECT_THROW(avg_decoherence(d, std::span<const int>()), DomainError);
}

TEST(Metrics, zero_error_device) {
    DeviceModel d = toy_device(3, {{0, 1}, {1, 2}, {0, 2}});
    d.err_1q = 0;
    d.err_2q = 0;
    for (auto& q : d.qubits) q.readout_p01 = q.readout_p10 = 0;
    const RoutedCircuit r = route_circuit(build_step_circuit(MapParams::from_cells(3, 7, 1.5)), d);
    EXPECT_EQ(total_relative_error(r, d), 0.0);
}
