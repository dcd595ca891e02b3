// SPDX-License-Identifier: Apache-2.0
//
// mmwave-adhoc: analytical bounds and Monte Carlo validation for mmWave ad hoc networks
// Copyright (C) 2026 The mmwave-adhoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmwave/study.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mmwave;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test.
class StudyTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("mmwave_study_" + std::string(info->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string out(const std::string &sub = "out") const { return (dir_ / sub).string(); }

    fs::path dir_;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string first_line(const fs::path &p) {
    const auto text = slurp(p);
    return text.substr(0, text.find('\n'));
}

std::string sinr_study(const std::string &output) {
    return "name: fig4a_small\n"
           "kind: sinr_curves\n"
           "preset: table1_sparse\n"
           "grid:\n"
           "  link_distance_m: [25, 50]\n"
           "  threshold_db: {start: -10, stop: 30, step: 10}\n"
           "  conditioning: [overall, los_only]\n"
           "montecarlo:\n"
           "  trials: 300\n"
           "  seed: 11\n"
           "  los_mode: abstract\n"
           "output: " + output + "\n";
}

int error_line(const std::string &yaml) {
    try {
        parse_study(yaml, "t.yaml");
    } catch (const ConfigError &e) {
        return e.line();
    }
    return -1;
}

std::string error_text(const std::string &yaml) {
    try {
        parse_study(yaml, "t.yaml");
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "<accepted>";
}

} // namespace

TEST_F(StudyTest, ParsesAResolvedStudy) {
    const auto s = parse_study(sinr_study(out()));
    EXPECT_EQ(s.name, "fig4a_small");
    EXPECT_EQ(s.kind, StudyKind::sinr_curves);
    EXPECT_EQ(s.link_distances, (std::vector<double>{25, 50}));
    EXPECT_EQ(s.thresholds_db, (std::vector<double>{-10, 0, 10, 20, 30}));
    ASSERT_EQ(s.conditionings.size(), 2u);
    EXPECT_TRUE(s.montecarlo.enabled);
    EXPECT_EQ(s.montecarlo.los_modes, std::vector<LosMode>{LosMode::abstract});
    EXPECT_EQ(s.params.raw_density, find_preset("table1_sparse").params.raw_density);
}

TEST_F(StudyTest, OverridesUseExplicitUnits) {
    const auto s = parse_study("name: x\nkind: inr_curves\noutput: o\n"
                               "params:\n  noise_dbw: -120\n  tx_power_dbw: 3\n  beamwidth_deg: 90\n"
                               "  mainlobe_gain_db: 20\n  buildings: {width_m: 10, length_m: [5, 15]}\n"
                               "grid:\n  beamwidth_deg: [30]\n  threshold_db: [0]\n");
    EXPECT_EQ(s.params.noise_db, -120.0);
    EXPECT_NEAR(s.params.tx_power, 1.9952623149688795, 1e-15);
    EXPECT_NEAR(s.params.antenna.beamwidth, std::numbers::pi / 2.0, 1e-15);
    EXPECT_NEAR(s.params.antenna.mainlobe_gain, 100.0, 1e-12);
    EXPECT_EQ(s.buildings.length.kind, MarkLaw::Kind::uniform);
    // The analytic LOS law follows the overridden building field.
    EXPECT_NEAR(s.params.blockage_rate, s.buildings.blockage_rate(), 1e-15);
}

TEST_F(StudyTest, ErrorsCarryLineAndField) {
    const std::string base = "name: x\nkind: sinr_curves\noutput: o\ngrid:\n  link_distance_m: [25]\n";
    EXPECT_EQ(error_line(base + "  thresold_db: [0]\n"), 6);
    EXPECT_NE(error_text(base + "  thresold_db: [0]\n").find("grid.thresold_db: unknown key"), std::string::npos);
    EXPECT_EQ(error_line(base + "  threshold_db: [0, abc]\n"), 6);
    EXPECT_EQ(error_line("name: x\nkind: sinr_plots\noutput: o\n"), 2);
    EXPECT_EQ(error_line("name: x\nkind: sinr_curves\npreset: nope\noutput: o\n"), 3);
    EXPECT_EQ(error_line(base + "  threshold_db: [0]\nparams:\n  aloha_prob: 2\n"), 8);
    EXPECT_NE(error_text(base + "  threshold_db: [0]\nparams:\n  aloha_prob: 2\n").find("t.yaml:8: params.aloha_prob"),
              std::string::npos);
    EXPECT_EQ(error_line("name: x\nkind: [\n"), 3);
    EXPECT_NE(error_text("kind: sinr_curves\noutput: o\n").find("name: required"), std::string::npos);
}

TEST_F(StudyTest, EmptyGridIsRejectedBeforeAnyFileExists) {
    const std::string yaml = "name: x\nkind: sinr_curves\noutput: " + out() +
                             "\ngrid:\n  link_distance_m: []\n  threshold_db: [0]\n";
    EXPECT_NE(error_text(yaml).find("grid.link_distance_m: empty grid"), std::string::npos);
    EXPECT_EQ(error_line(yaml), 5);
    EXPECT_FALSE(fs::exists(out()));
}

TEST_F(StudyTest, KindRequiresItsGrid) {
    EXPECT_NE(error_text("name: x\nkind: txcap_sweep\noutput: o\ngrid: {epsilon: [0.1]}\n").find("grid.sweep_var"),
              std::string::npos);
    EXPECT_NE(error_text("name: x\nkind: rate_coverage\noutput: o\ngrid: {link_distance_m: [25]}\n")
                  .find("grid.rate_bps: empty grid"),
              std::string::npos);
    EXPECT_NE(error_text("name: x\nkind: twoway_allocation\noutput: o\ngrid: {epsilon: [1.5]}\n").find("grid.epsilon"),
              std::string::npos);
    EXPECT_NE(error_text("name: x\nkind: sinr_curves\noutput: o\ngrid: {link_distance_m: [500], threshold_db: [0]}\n"
                         "montecarlo: {trials: 200}\n")
                  .find("montecarlo.window_radius_m"),
              std::string::npos);
}

TEST_F(StudyTest, RunsAreByteIdenticalAndManifestsReproduce) {
    const auto study = parse_study(sinr_study(out("a")));
    const auto first = run_study(study, 1);
    ASSERT_EQ(first.artifacts.size(), 2u);
    const auto csv = fs::path(out("a")) / "fig4a_small.csv";
    const auto manifest = fs::path(out("a")) / "fig4a_small.manifest.yaml";
    ASSERT_TRUE(fs::exists(csv));
    ASSERT_TRUE(fs::exists(manifest));
    EXPECT_EQ(first_line(csv), "series,threshold_db,value,std_error,source,conditioning");

    auto again = study;
    again.output_dir = out("b");
    run_study(again, 3);
    EXPECT_EQ(slurp(csv), slurp(fs::path(out("b")) / "fig4a_small.csv"));

    auto replay = load_study(manifest);
    EXPECT_EQ(replay.output_dir, fs::path(out("a")));
    replay.output_dir = out("c");
    run_study(replay, 2);
    EXPECT_EQ(slurp(csv), slurp(fs::path(out("c")) / "fig4a_small.csv"));

    const auto text = slurp(manifest);
    for (const char *key : {"version:", "seed: 11", "wall_time_s:", "started_utc:", "raw_density_per_m2:"})
        EXPECT_NE(text.find(key), std::string::npos) << key;
}

TEST_F(StudyTest, SnapshotRoundTrips) {
    const auto s = parse_study(sinr_study(out()));
    std::ostringstream os;
    write_study_yaml(os, s);
    const auto back = parse_study(os.str());
    std::ostringstream again;
    write_study_yaml(again, back);
    EXPECT_EQ(os.str(), again.str());
    EXPECT_EQ(back.params.antenna.beamwidth, s.params.antenna.beamwidth);
    EXPECT_EQ(back.params.tx_power, s.params.tx_power);
}

TEST_F(StudyTest, FailedRunLeavesNoFiles) {
    // Outcome dumps of the first distance are written before the second
    // distance fails its conditioning quota.
    const auto s = parse_study("name: doomed\nkind: sinr_curves\noutput: " + out() +
                               "\ngrid:\n  link_distance_m: [25, 0.5]\n  threshold_db: [0]\n"
                               "  conditioning: nlos_only\n"
                               "montecarlo: {trials: 200, los_mode: abstract, write_outcomes: true}\n");
    EXPECT_THROW(run_study(s, 1), InsufficientSamplesError);
    ASSERT_TRUE(fs::exists(out()));
    EXPECT_TRUE(fs::is_empty(out()));
}

TEST_F(StudyTest, EveryKindWritesItsSchema) {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"kind: inr_curves\ngrid: {beamwidth_deg: [30, 90], threshold_db: [0, 10], include_los_only: true}\n",
         "series,threshold_db,value,std_error,source,conditioning"},
        {"kind: txcap_sweep\ngrid: {sweep_var: threshold_db, sweep_values: [0, 10], epsilon: [0.1],"
         " conditioning: los_only}\n",
         "series,sweep_var,value,lambda_eps,ase,valid,residual"},
        {"kind: ase_sweep\ngrid: {sweep_var: link_distance_m, sweep_values: [25], epsilon: [0.1],"
         " conditioning: los_only}\n",
         "series,sweep_var,value,lambda_eps,ase,valid,residual"},
        {"kind: rate_coverage\ngrid: {link_distance_m: [25, 75], rate_bps: [1e9]}\n",
         "series,rate_bps,threshold_db,coverage,conditioning"},
        {"kind: twoway_allocation\ngrid: {epsilon: [0.1]}\n", "series,sweep_var,value,lambda_eps,ase,valid,residual"},
    };
    int i = 0;
    for (const auto &[body, header] : cases) {
        const std::string name = "k" + std::to_string(i++);
        const auto s = parse_study("name: " + name + "\noutput: " + out() + "\n" + body);
        run_study(s, 1);
        EXPECT_EQ(first_line(fs::path(out()) / (name + ".csv")), header) << body;
    }
    const auto twoway = slurp(fs::path(out()) / "k4.csv");
    EXPECT_NE(twoway.find("eps0.1_los_only_optimum,forward_fraction,0.8"), std::string::npos);
    EXPECT_NE(twoway.find("eps0.1_los_only_oneway"), std::string::npos);
}

TEST_F(StudyTest, McValidationWritesLosTable) {
    const auto s = parse_study("name: mcv\nkind: mc_validation\noutput: " + out() +
                               "\ngrid: {link_distance_m: [25], threshold_db: [0, 10], los_distance_m: [10, 50],"
                               " segments: 500}\nmontecarlo: {trials: 150, los_mode: [geometric, abstract]}\n");
    run_study(s, 1);
    EXPECT_EQ(first_line(fs::path(out()) / "mcv_los.csv"), "distance_m,empirical,std_error,law,deviation");
    const auto curves = slurp(fs::path(out()) / "mcv.csv");
    EXPECT_NE(curves.find("r25_abstract,0,"), std::string::npos);
    EXPECT_NE(curves.find(",empirical,overall"), std::string::npos);
}

TEST_F(StudyTest, ShippedConfigsParse) {
    const fs::path dir = fs::path(MMWAVE_SOURCE_DIR) / "configs";
    ASSERT_TRUE(fs::exists(dir));
    int n = 0;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".yaml")
            continue;
        SCOPED_TRACE(entry.path().string());
        EXPECT_NO_THROW(load_study(entry.path()));
        ++n;
    }
    EXPECT_GE(n, 7);
}
