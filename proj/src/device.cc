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
#include <deque>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sawloc/errors.h"

namespace sawloc {
namespace {

using nlohmann::json;

const std::set<std::string> kDeviceFields = {"name",      "qubits",    "coupling",  "err_1q",
                                             "err_2q",    "dur_1q_ns", "dur_2q_ns", "readout_duration_ns"};
const std::set<std::string> kQubitFields = {"t1_us", "t2_us", "readout_p01", "readout_p10"};

double read_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) {
        throw ConfigError(where + key + ": missing");
    }
    const json& v = obj.at(key);
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "Infinity")) {
        return std::numeric_limits<double>::infinity();
    }
    throw ConfigError(where + key + ": expected a number");
}

json write_number(double v) {
    if (std::isinf(v) && v > 0) {
        return "inf";
    }
    return v;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError(where + key + ": unknown field");
        }
    }
}

std::string qubit_field(std::size_t i, const char* field) {
    return "qubits[" + std::to_string(i) + "]." + field;
}

void check_probability(double v, const std::string& field) {
    if (!(v >= 0.0 && v < 1.0)) {
        throw ConfigError(field + ": must lie in [0, 1), got " + std::to_string(v));
    }
}

void check_duration(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string(field) + ": must be a positive duration, got " + std::to_string(v));
    }
}

double gate_duration_ns(const Gate& g, const DeviceModel& d) {
    switch (g.kind) {
        case GateKind::kH:
        case GateKind::kP:
            return d.dur_1q_ns;
        case GateKind::kCP:
            return d.dur_2q_ns;
        case GateKind::kSwap:
            return 3.0 * d.dur_2q_ns;
    }
    return 0.0;
}

double gate_error(const Gate& g, const DeviceModel& d) {
    switch (g.kind) {
        case GateKind::kH:
        case GateKind::kP:
            return d.err_1q;
        case GateKind::kCP:
            return d.err_2q;
        case GateKind::kSwap:
            return 3.0 * d.err_2q;
    }
    return 0.0;
}

// Adjacency restricted to the qubits of one placement.
class Subgraph {
   public:
    Subgraph(const DeviceModel& device, std::span<const int> members)
        : device_(device), members_(members.begin(), members.end()) {
        std::sort(members_.begin(), members_.end());
    }

    bool contains(int q) const { return std::binary_search(members_.begin(), members_.end(), q); }

    bool connected() const {
        if (members_.empty()) return true;
        std::set<int> seen{members_.front()};
        std::deque<int> frontier{members_.front()};
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop_front();
            for (int v : members_) {
                if (!seen.count(v) && device_.adjacent(u, v)) {
                    seen.insert(v);
                    frontier.push_back(v);
                }
            }
        }
        return seen.size() == members_.size();
    }

    /// BFS path from a to b inside the subgraph, neighbors visited in ascending order.
    std::vector<int> shortest_path(int a, int b) const {
        std::vector<int> prev(static_cast<std::size_t>(device_.num_qubits()), -1);
        std::vector<bool> seen(static_cast<std::size_t>(device_.num_qubits()), false);
        std::deque<int> frontier{a};
        seen[static_cast<std::size_t>(a)] = true;
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop_front();
            if (u == b) break;
            for (int v : members_) {
                if (!seen[static_cast<std::size_t>(v)] && device_.adjacent(u, v)) {
                    seen[static_cast<std::size_t>(v)] = true;
                    prev[static_cast<std::size_t>(v)] = u;
                    frontier.push_back(v);
                }
            }
        }
        std::vector<int> path{b};
        while (path.back() != a) {
            path.push_back(prev[static_cast<std::size_t>(path.back())]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

   private:
    const DeviceModel& device_;
    std::vector<int> members_;
};

struct Layout {
    std::vector<int> wire_to_phys;
    std::vector<int> phys_to_wire;

    Layout(std::span<const int> placement, int device_size)
        : wire_to_phys(placement.begin(), placement.end()), phys_to_wire(static_cast<std::size_t>(device_size), -1) {
        for (std::size_t w = 0; w < wire_to_phys.size(); ++w) {
            phys_to_wire[static_cast<std::size_t>(wire_to_phys[w])] = static_cast<int>(w);
        }
    }

    void swap_physical(int x, int y) {
        const int wx = phys_to_wire[static_cast<std::size_t>(x)];
        const int wy = phys_to_wire[static_cast<std::size_t>(y)];
        phys_to_wire[static_cast<std::size_t>(x)] = wy;
        phys_to_wire[static_cast<std::size_t>(y)] = wx;
        if (wx >= 0) wire_to_phys[static_cast<std::size_t>(wx)] = y;
        if (wy >= 0) wire_to_phys[static_cast<std::size_t>(wy)] = x;
    }
};

// Moves wire `mover` along the shortest path toward `target` until adjacent. Returns the
// SWAPs performed as physical pairs.
std::vector<std::array<int, 2>> bring_adjacent(Layout& layout, const Subgraph& graph, int mover, int target) {
    const std::vector<int> path = graph.shortest_path(layout.wire_to_phys[static_cast<std::size_t>(mover)],
                                                      layout.wire_to_phys[static_cast<std::size_t>(target)]);
    std::vector<std::array<int, 2>> swaps;
    for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        layout.swap_physical(path[i], path[i + 1]);
        swaps.push_back({path[i], path[i + 1]});
    }
    return swaps;
}

struct TwoQubitStep {
    int a;
    int b;
};

class SwapSearch {
   public:
    SwapSearch(const DeviceModel& device, const Subgraph& graph, std::vector<TwoQubitStep> steps)
        : device_(device), graph_(graph), steps_(std::move(steps)) {}

    // Returns, per two-qubit gate, whether its first wire moves (true) or its second (false);
    // the entry is ignored for gates that are already adjacent.
    std::vector<bool> solve(const Layout& start) {
        best_ = std::numeric_limits<int>::max();
        std::vector<bool> choice(steps_.size(), true);
        recurse(0, start, 0, choice);
        return best_choice_;
    }

   private:
    void recurse(std::size_t i, const Layout& layout, int swaps, std::vector<bool>& choice) {
        if (swaps >= best_) return;
        if (i == steps_.size()) {
            best_ = swaps;
            best_choice_ = choice;
            return;
        }
        const auto& s = steps_[i];
        if (device_.adjacent(layout.wire_to_phys[static_cast<std::size_t>(s.a)],
                             layout.wire_to_phys[static_cast<std::size_t>(s.b)])) {
            recurse(i + 1, layout, swaps, choice);
            return;
        }
        for (bool move_first : {true, false}) {
            Layout next = layout;
            const auto added = bring_adjacent(next, graph_, move_first ? s.a : s.b, move_first ? s.b : s.a);
            choice[i] = move_first;
            recurse(i + 1, next, swaps + static_cast<int>(added.size()), choice);
        }
        choice[i] = true;
    }

    const DeviceModel& device_;
    const Subgraph& graph_;
    std::vector<TwoQubitStep> steps_;
    int best_ = 0;
    std::vector<bool> best_choice_;
};

}  // namespace

bool DeviceModel::adjacent(int a, int b) const {
    for (const auto& e : coupling) {
        if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) {
            return true;
        }
    }
    return false;
}

void DeviceModel::validate() const {
    if (name.empty()) {
        throw ConfigError("name: must be non-empty");
    }
    if (qubits.empty()) {
        throw ConfigError("qubits: device needs at least one qubit");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const auto& q = qubits[i];
        if (!(q.t1_us > 0.0)) {
            throw ConfigError(qubit_field(i, "t1_us") + ": must be > 0, got " + std::to_string(q.t1_us));
        }
        if (!(q.t2_us > 0.0)) {
            throw ConfigError(qubit_field(i, "t2_us") + ": must be > 0, got " + std::to_string(q.t2_us));
        }
        if (q.t2_us > 2.0 * q.t1_us) {
            throw ConfigError(qubit_field(i, "t2_us") + ": must satisfy t2 <= 2*t1 (t1=" + std::to_string(q.t1_us) +
                              ", t2=" + std::to_string(q.t2_us) + ")");
        }
        check_probability(q.readout_p01, qubit_field(i, "readout_p01"));
        check_probability(q.readout_p10, qubit_field(i, "readout_p10"));
    }
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < coupling.size(); ++i) {
        const auto& e = coupling[i];
        const std::string where = "coupling[" + std::to_string(i) + "]";
        if (e[0] < 0 || e[1] < 0 || e[0] >= num_qubits() || e[1] >= num_qubits()) {
            throw ConfigError(where + ": qubit index out of range");
        }
        if (e[0] == e[1]) {
            throw ConfigError(where + ": self-loop");
        }
        if (!seen.insert({std::min(e[0], e[1]), std::max(e[0], e[1])}).second) {
            throw ConfigError(where + ": duplicate edge");
        }
    }
    check_probability(err_1q, "err_1q");
    check_probability(err_2q, "err_2q");
    check_duration(dur_1q_ns, "dur_1q_ns");
    check_duration(dur_2q_ns, "dur_2q_ns");
    if (!(readout_duration_ns >= 0.0) || !std::isfinite(readout_duration_ns)) {
        throw ConfigError("readout_duration_ns: must be a finite non-negative duration");
    }
}

DeviceModel load_device_model(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("device file: parse error: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("device file: top level must be an object");
    }
    reject_unknown(doc, kDeviceFields, "");
    DeviceModel d;
    if (!doc.contains("name") || !doc.at("name").is_string()) {
        throw ConfigError("name: missing or not a string");
    }
    d.name = doc.at("name").get<std::string>();
    if (!doc.contains("qubits") || !doc.at("qubits").is_array()) {
        throw ConfigError("qubits: missing or not an array");
    }
    const json& qs = doc.at("qubits");
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const std::string where = "qubits[" + std::to_string(i) + "].";
        if (!qs[i].is_object()) {
            throw ConfigError("qubits[" + std::to_string(i) + "]: expected an object");
        }
        reject_unknown(qs[i], kQubitFields, where);
        QubitCalibration q;
        q.t1_us = read_number(qs[i], "t1_us", where);
        q.t2_us = read_number(qs[i], "t2_us", where);
        q.readout_p01 = read_number(qs[i], "readout_p01", where);
        q.readout_p10 = read_number(qs[i], "readout_p10", where);
        d.qubits.push_back(q);
    }
    if (!doc.contains("coupling") || !doc.at("coupling").is_array()) {
        throw ConfigError("coupling: missing or not an array");
    }
    for (const json& e : doc.at("coupling")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw ConfigError("coupling: each edge must be a pair of integers");
        }
        d.coupling.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    d.err_1q = read_number(doc, "err_1q", "");
    d.err_2q = read_number(doc, "err_2q", "");
    d.dur_1q_ns = read_number(doc, "dur_1q_ns", "");
    d.dur_2q_ns = read_number(doc, "dur_2q_ns", "");
    d.readout_duration_ns = read_number(doc, "readout_duration_ns", "");
    d.validate();
    return d;
}

DeviceModel load_device_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open device file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return load_device_model(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.filename().string() + ": " + e.what());
    }
}

std::string serialize_device_model(const DeviceModel& device) {
    json doc;
    doc["name"] = device.name;
    doc["qubits"] = json::array();
    for (const auto& q : device.qubits) {
        doc["qubits"].push_back({{"t1_us", write_number(q.t1_us)},
                                 {"t2_us", write_number(q.t2_us)},
                                 {"readout_p01", q.readout_p01},
                                 {"readout_p10", q.readout_p10}});
    }
    doc["coupling"] = json::array();
    for (const auto& e : device.coupling) {
        doc["coupling"].push_back({e[0], e[1]});
    }
    doc["err_1q"] = device.err_1q;
    doc["err_2q"] = device.err_2q;
    doc["dur_1q_ns"] = device.dur_1q_ns;
    doc["dur_2q_ns"] = device.dur_2q_ns;
    doc["readout_duration_ns"] = device.readout_duration_ns;
    return doc.dump(2) + "\n";
}

Circuit RoutedCircuit::local_circuit() const {
    const int n = num_logical();
    std::vector<int> slot_of(static_cast<std::size_t>(circuit.num_qubits), -1);
    for (int s = 0; s < n; ++s) {
        slot_of[static_cast<std::size_t>(placement[static_cast<std::size_t>(s)])] = s;
    }
    Circuit local(n);
    for (Gate g : circuit.gates) {
        g.qubits[0] = slot_of[static_cast<std::size_t>(g.qubits[0])];
        g.qubits[1] = slot_of[static_cast<std::size_t>(g.qubits[1])];
        local.gates.push_back(g);
    }
    for (int l = 0; l < n; ++l) {
        local.relabel[static_cast<std::size_t>(l)] = slot_of[static_cast<std::size_t>(final_layout[static_cast<std::size_t>(l)])];
    }
    return local;
}

RoutedCircuit route_with_placement(const Circuit& circuit, const DeviceModel& device, std::span<const int> placement) {
    circuit.validate();
    const int n = circuit.num_qubits;
    if (n > device.num_qubits()) {
        throw RoutingError("circuit needs " + std::to_string(n) + " qubits, device " + device.name + " has " +
                           std::to_string(device.num_qubits()));
    }
    if (placement.size() != static_cast<std::size_t>(n)) {
        throw RoutingError("placement must map every logical qubit");
    }
    std::set<int> distinct(placement.begin(), placement.end());
    if (distinct.size() != placement.size() || *distinct.begin() < 0 || *distinct.rbegin() >= device.num_qubits()) {
        throw RoutingError("placement must be injective onto device qubits");
    }
    const Subgraph graph(device, placement);
    if (!graph.connected()) {
        throw RoutingError("placement does not induce a connected subgraph on " + device.name);
    }

    std::vector<TwoQubitStep> steps;
    for (const Gate& g : circuit.gates) {
        if (g.is_two_qubit()) {
            steps.push_back({g.qubits[0], g.qubits[1]});
        }
    }
    const Layout start(placement, device.num_qubits());
    SwapSearch search(device, graph, steps);
    const std::vector<bool> choice = search.solve(start);

    RoutedCircuit routed{Circuit(device.num_qubits()), std::vector<int>(placement.begin(), placement.end()), {}, 0};
    Layout layout = start;
    std::size_t two_q_index = 0;
    for (const Gate& g : circuit.gates) {
        Gate phys = g;
        if (g.is_two_qubit()) {
            const int pa = layout.wire_to_phys[static_cast<std::size_t>(g.qubits[0])];
            const int pb = layout.wire_to_phys[static_cast<std::size_t>(g.qubits[1])];
            if (!device.adjacent(pa, pb)) {
                const bool move_first = choice[two_q_index];
                const auto swaps = bring_adjacent(layout, graph, move_first ? g.qubits[0] : g.qubits[1],
                                                  move_first ? g.qubits[1] : g.qubits[0]);
                for (const auto& s : swaps) {
                    routed.circuit.gates.push_back(Gate::swap(s[0], s[1]));
                    ++routed.swap_count;
                }
            }
            ++two_q_index;
        }
        phys.qubits[0] = layout.wire_to_phys[static_cast<std::size_t>(g.qubits[0])];
        phys.qubits[1] = layout.wire_to_phys[static_cast<std::size_t>(g.qubits[1])];
        routed.circuit.gates.push_back(phys);
    }
    routed.final_layout.resize(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        routed.final_layout[static_cast<std::size_t>(l)] =
            layout.wire_to_phys[static_cast<std::size_t>(circuit.relabel[static_cast<std::size_t>(l)])];
    }
    return routed;
}

RoutedCircuit route_circuit(const Circuit& circuit, const DeviceModel& device, RoutingObjective objective) {
    circuit.validate();
    const int n = circuit.num_qubits;
    const int size = device.num_qubits();
    if (n > size) {
        throw RoutingError("circuit needs " + std::to_string(n) + " qubits, device " + device.name + " has " +
                           std::to_string(size));
    }
    std::optional<RoutedCircuit> best;
    double best_time = 0.0;
    // Lexicographic enumeration of injective maps [0, n) -> [0, size).
    std::vector<int> placement(static_cast<std::size_t>(n), 0);
    std::vector<bool> used(static_cast<std::size_t>(size), false);
    auto consider = [&](const std::vector<int>& pl) {
        if (!Subgraph(device, pl).connected()) return;
        RoutedCircuit r = route_with_placement(circuit, device, pl);
        const double t = execution_time(r, device);
        bool better = !best.has_value();
        if (!better) {
            if (objective == RoutingObjective::kMinSwaps) {
                better = r.swap_count < best->swap_count || (r.swap_count == best->swap_count && t < best_time);
            } else {
                better = t < best_time || (t == best_time && r.swap_count < best->swap_count);
            }
        }
        if (better) {
            best_time = t;
            best = std::move(r);
        }
    };
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            consider(placement);
            return;
        }
        for (int q = 0; q < size; ++q) {
            if (used[static_cast<std::size_t>(q)]) continue;
            used[static_cast<std::size_t>(q)] = true;
            placement[static_cast<std::size_t>(depth)] = q;
            self(self, depth + 1);
            used[static_cast<std::size_t>(q)] = false;
        }
    };
    recurse(recurse, 0);
    if (!best) {
        throw RoutingError("no connected placement of " + std::to_string(n) + " qubits on " + device.name);
    }
    return *std::move(best);
}

double execution_time(const RoutedCircuit& routed, const DeviceModel& device) {
    double ns = 0.0;
    for (const Gate& g : routed.circuit.gates) {
        ns += gate_duration_ns(g, device);
    }
    return (ns + device.readout_duration_ns) / 1000.0;
}

double avg_decoherence(const DeviceModel& device, std::span<const int> qubits) {
    if (qubits.empty()) {
        throw DomainError("avg_decoherence needs at least one qubit");
    }
    double total = 0.0;
    for (int q : qubits) {
        if (q < 0 || q >= device.num_qubits()) {
            throw DomainError("qubit index " + std::to_string(q) + " out of range");
        }
        const auto& c = device.qubits[static_cast<std::size_t>(q)];
        total += std::min(c.t1_us, c.t2_us);
    }
    return total / static_cast<double>(qubits.size());
}

double total_relative_error(const RoutedCircuit& routed, const DeviceModel& device, std::span<const int> measured) {
    double total = 0.0;
    for (const Gate& g : routed.circuit.gates) {
        total += gate_error(g, device);
    }
    for (int q : measured) {
        if (q < 0 || q >= device.num_qubits()) {
            throw DomainError("measured qubit index " + std::to_string(q) + " out of range");
        }
        const auto& c = device.qubits[static_cast<std::size_t>(q)];
        total += 0.5 * (c.readout_p01 + c.readout_p10);
    }
    return total;
}

double total_relative_error(const RoutedCircuit& routed, const DeviceModel& device) {
    return total_relative_error(routed, device, routed.final_layout);
}

}  // namespace sawloc
