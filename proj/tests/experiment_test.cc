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

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "sawloc/errors.h"

using namespace sawloc;

namespace {

std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(SAWLOC_DEVICE_FIXTURES) / (name + ".json");
}

}  // namespace

TEST(ExperimentConfig, defaults_resolve_to_standard_parameters) {
    const ExperimentConfig c;
    const MapParams p = c.params();
    EXPECT_EQ(p.num_qubits, 3);
    EXPECT_EQ(p.cells, 7);
    EXPECT_DOUBLE_EQ(p.chaos, 1.5);
    EXPECT_NO_THROW(c.validate());
}

TEST(ExperimentConfig, validation) {
    ExperimentConfig c;
    c.mode = RunMode::kNoisy;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.kick = 1.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c.period = 1.0;
    EXPECT_NO_THROW(c.validate());
    c.chaos = 1.5;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.shots = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.m0 = 4;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.cells = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_THROW(parse_run_mode("loud"), ConfigError);
    EXPECT_THROW(parse_output_format("xml"), ConfigError);
}

TEST(Localize, noiseless_default) {
    const LocalizeResult r = run_localize(ExperimentConfig{});
    ASSERT_EQ(r.distributions.size(), 2u);
    EXPECT_NEAR(r.analysis[1].peak, 0.829455036666805, 1e-12);
    EXPECT_NE(peak_table(r).find("0.829455"), std::string::npos);
    const std::string json = render_localize(r, OutputFormat::kJson);
    EXPECT_NE(json.find("\"schema_version\": 1"), std::string::npos);
    EXPECT_NE(json.find("\"config\""), std::string::npos);
    EXPECT_NE(json.find("\"ell\""), std::string::npos);
}

TEST(Localize, zero_steps_is_the_initial_delta) {
    ExperimentConfig c;
    c.steps = 0;
    c.m0 = -2;
    const LocalizeResult r = run_localize(c);
    ASSERT_EQ(r.distributions.size(), 1u);
    EXPECT_EQ(r.distributions[0][2], 1.0);
    const std::string csv = render_localize(r, OutputFormat::kCsv);
    EXPECT_EQ(csv.substr(0, 13), "t,m,W,stderr\n");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

TEST(Localize, noisy_is_deterministic) {
    ExperimentConfig c;
    c.mode = RunMode::kNoisy;
    c.device_path = fixture_path("lima");
    c.steps = 3;
    c.shots = 2048;
    c.repetitions = 3;
    const std::string a = render_localize(run_localize(c), OutputFormat::kJson);
    const std::string b = render_localize(run_localize(c), OutputFormat::kJson);
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("\"metrics\""), std::string::npos);
}

TEST(Verify, passes_and_detects_corruption) {
    const VerifyReport ok = verify_equivalence(1, 3, 10, 1);
    EXPECT_TRUE(ok.ok());
    EXPECT_EQ(ok.cases.size(), 30u);
    EXPECT_LT(ok.max_distance, 1e-9);
    const VerifyReport bad = verify_equivalence(2, 2, 2, 1, 0.05);
    EXPECT_FALSE(bad.ok());
    EXPECT_THROW(verify_equivalence(0, 3, 1, 1), ConfigError);
    EXPECT_THROW(verify_equivalence(1, 7, 1, 1), ConfigError);
}

TEST(Devices, survey_fixtures) {
    const DeviceSurvey s = survey_devices(SAWLOC_DEVICE_FIXTURES, MapParams::from_cells(3, 7, 1.5));
    ASSERT_EQ(s.rows.size(), 6u);
    EXPECT_TRUE(s.failures.empty());
    for (std::size_t i = 1; i < s.rows.size(); ++i) EXPECT_LE(s.rows[i - 1].total_error, s.rows[i].total_error);
    for (const auto& r : s.rows) {
        if (r.name == "yorktown-like") {
            EXPECT_EQ(r.swap_count, 0);
        } else {
            EXPECT_GE(r.swap_count, 1) << r.name;
        }
    }
}

TEST(Devices, empty_and_broken_directories) {
    const auto dir = std::filesystem::temp_directory_path() / "sawloc_devices_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    try {
        survey_devices(dir, MapParams::from_cells(3, 7, 1.5));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("no devices"), std::string::npos);
    }
    std::filesystem::copy_file(fixture_path("lima"), dir / "lima.json");
    std::ofstream(dir / "broken.json") << "{ not json";
    const DeviceSurvey s = survey_devices(dir, MapParams::from_cells(3, 7, 1.5));
    EXPECT_EQ(s.rows.size(), 1u);
    ASSERT_EQ(s.failures.size(), 1u);
    EXPECT_EQ(s.failures[0].rfind("broken.json", 0), 0u);
    std::filesystem::remove_all(dir);
}

TEST(Sweep, transforms_and_values) {
    const DeviceModel d = load_device_file(fixture_path("lima"));
    EXPECT_EQ(transform_device(d, SweepAxis::kErr2q, 0.05).err_2q, 0.05);
    EXPECT_EQ(transform_device(d, SweepAxis::kErr1q, 0.01).err_1q, 0.01);
    EXPECT_DOUBLE_EQ(transform_device(d, SweepAxis::kT1T2Scale, 2.0).qubits[0].t1_us, 2 * d.qubits[0].t1_us);
    EXPECT_EQ(transform_device(d, SweepAxis::kSteps, 4.0), d);
    EXPECT_THROW(transform_device(d, SweepAxis::kErr2q, 1.5), ConfigError);
    EXPECT_EQ(parse_value_list("1..4"), (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(parse_value_list("0,0.01,0.5"), (std::vector<double>{0, 0.01, 0.5}));
    EXPECT_THROW(parse_value_list("0,,1"), ConfigError);
    EXPECT_THROW(parse_sweep_axis("t1"), ConfigError);
}

TEST(Sweep, err_2q_peak_is_monotone) {
    ExperimentConfig c;
    c.shots = 1024;
    c.repetitions = 2;
    const DeviceModel d = load_device_file(fixture_path("lima"));
    const std::vector<double> grid = {0.0, 0.005, 0.01, 0.02, 0.05};
    const auto points = run_sweep(c, d, SweepAxis::kErr2q, grid);
    for (std::size_t i = 1; i < points.size(); ++i) {
        EXPECT_LE(points[i].run.per_step[1].peak_modeled, points[i - 1].run.per_step[1].peak_modeled);
    }
}

TEST(Sweep, steps_axis_on_silent_device_matches_exact) {
    DeviceModel d = load_device_file(fixture_path("santiago"));
    d.err_1q = d.err_2q = 0;
    for (auto& q : d.qubits) q = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0, 0};
    ExperimentConfig c;
    c.shots = 4096;
    c.repetitions = 4;
    const std::vector<double> grid = {1, 2, 3, 4, 5, 6};
    const auto points = run_sweep(c, d, SweepAxis::kSteps, grid);
    const auto exact = run_localize([] {
        ExperimentConfig e;
        e.steps = 6;
        return e;
    }());
    for (const auto& p : points) {
        const auto t = static_cast<std::size_t>(p.value);
        EXPECT_NEAR(p.run.per_step.back().peak_modeled, exact.analysis[t].peak, 1e-9);
    }
}

TEST(Diffusion, run_and_render) {
    ExperimentConfig c;
    c.steps = 10;
    c.trajectories = 2000;
    const DiffusionRun r = run_diffusion(c);
    EXPECT_EQ(render_diffusion(r, OutputFormat::kCsv).substr(0, 13), "t,msd,stderr\n");
    EXPECT_NE(render_diffusion(r, OutputFormat::kJson).find("\"D_quasilinear\""), std::string::npos);
    c.kick = 0.0;
    c.period = 1.0;
    EXPECT_EQ(run_diffusion(c).result.d_fit, 0.0);
}

TEST(Sweep, better_device_stays_visible_at_least_as_long) {
    ExperimentConfig c;
    const std::vector<double> grid = {1, 2, 3, 4, 5, 6};
    auto visible_steps = [&](const std::string& name) {
        int n = 0;
        for (const auto& p : run_sweep(c, load_device_file(fixture_path(name)), SweepAxis::kSteps, grid)) {
            n += p.run.per_step.back().visible ? 1 : 0;
        }
        return n;
    };
    EXPECT_GE(visible_steps("lima"), visible_steps("yorktown"));
}
