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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "sawloc/errors.h"
#include "sawloc/exact_map.h"

using namespace sawloc;

TEST(Serialize, format_double_round_trips) {
    for (double v : {0.1, 1.0 / 3.0, 0.829455036666805, 1e-300, -2.5, 0.0}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Serialize, distribution_formats) {
    std::vector<double> w(4, 0.0);
    w[2] = 1.0;
    const MomentumDistribution d(w);
    EXPECT_EQ(distribution_csv(d), "m,W\n-2,0\n-1,0\n0,1\n1,0\n");
    const std::string json = distribution_json(d);
    EXPECT_NE(json.find("\"m\": -2"), std::string::npos);
    EXPECT_NE(json.find("\"W\": 1.0"), std::string::npos);
}

TEST(Serialize, circuit_round_trip) {
    Circuit c = build_step_circuit(MapParams::from_cells(4, 3, 1.1));
    c.gates.push_back(Gate::swap(0, 3));
    c.relabel = {3, 1, 2, 0};
    const Circuit back = circuit_from_json(circuit_to_json(c));
    EXPECT_EQ(back, c);
    EXPECT_THROW(circuit_from_json("{\"n\": 2, \"gates\": [{\"kind\": \"CP\", \"qubits\": [0], \"angle\": 1}], "
                                   "\"relabel\": [0, 1]}"),
                 ConfigError);
    EXPECT_THROW(circuit_from_json("{\"n\": 2}"), ConfigError);
}

TEST(Serialize, diffusion_outputs) {
    DiffusionResult r;
    r.msd = {0.0, 0.5, 1.25};
    r.stderr_ = {0.0, 0.01, 0.02};
    r.d_fit = 0.6;
    r.d_quasilinear = 0.5;
    r.trajectories = 10;
    EXPECT_EQ(diffusion_csv(r), "t,msd,stderr\n0,0,0\n1,0.5,0.01\n2,1.25,0.02\n");
    const std::string j = diffusion_summary_json(r, MapParams::from_cells(3, 7, 1.5), 0.0, 4);
    EXPECT_NE(j.find("\"D_fit\": 0.6"), std::string::npos);
    EXPECT_NE(j.find("\"ratio\": 1.2"), std::string::npos);
    EXPECT_NE(j.find("\"schema_version\": 1"), std::string::npos);
}

TEST(Serialize, atomic_write) {
    const auto dir = std::filesystem::temp_directory_path() / "sawloc_serialize_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    write_file_atomic(path, "hello\n");
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    EXPECT_EQ(s.str(), "hello\n");
    EXPECT_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
    EXPECT_THROW(write_file_atomic(dir / "missing" / "x.txt", "x"), ConfigError);
    std::filesystem::remove_all(dir);
}
