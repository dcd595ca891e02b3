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

#include "mmwave/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace mmwave;

namespace {

TrialConfig config(const char *preset, double r, std::int64_t trials, std::uint64_t seed = 3) {
    const auto &p = find_preset(preset);
    TrialConfig cfg;
    cfg.params = SystemParams(p.params).with_link_distance(r);
    cfg.buildings = p.buildings;
    cfg.trials = trials;
    cfg.root_seed = seed;
    return cfg;
}

bool same(const TrialOutcome &a, const TrialOutcome &b) {
    return a.sinr == b.sinr && a.inr == b.inr && a.desired_los == b.desired_los &&
           a.interferer_count == b.interferer_count;
}

} // namespace

TEST(MonteCarlo, ReproducibleAndThreadCountInvariant) {
    const auto cfg = config("table1_sparse", 25.0, 400);
    const auto a = simulate(cfg, 1);
    const auto b = simulate(cfg, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        ASSERT_TRUE(same(a[i], b[i])) << i;
    EXPECT_TRUE(same(run_trial(cfg, 123), a[123]));
    auto other = cfg;
    other.root_seed = 4;
    EXPECT_FALSE(same(simulate(other, 1)[0], a[0]));
}

TEST(MonteCarlo, SilentNetworkGivesTheLinkBudget) {
    auto cfg = config("table1_sparse", 40.0, 200);
    cfg.params = cfg.params.with_effective_density(0.0);
    cfg.unit_fading = true;
    const auto &p = cfg.params;
    const double s = p.tx_power() * p.aligned_gain() * p.intercept();
    for (const auto &o : simulate(cfg, 1)) {
        EXPECT_EQ(o.interferer_count, 0);
        EXPECT_EQ(o.inr, 0.0);
        const double alpha = o.desired_los ? p.los_exponent() : p.nlos_exponent();
        EXPECT_NEAR(o.sinr, s * std::pow(40.0, -alpha) / p.noise_power(), 1e-9 * o.sinr);
    }
}

TEST(MonteCarlo, EvaluateSumsInterference) {
    const SystemParams p{ParamSpec{}};
    NetworkRealization net;
    net.receiver = {0, 0};
    net.transmitter = {25, 0};
    net.desired_los = true;
    net.desired_fading = 2.0;
    net.interferers.push_back({{0, 50}, 1.0, 1.0, true});
    net.interferers.push_back({{-100, 0}, 100.0, 0.5, false});
    const auto o = evaluate(net, p);
    const double c = p.tx_power() * p.intercept();
    const double signal = c * 100.0 * 2.0 * std::pow(25.0, -2.0);
    const double interference = c * (1.0 * std::pow(50.0, -2.0) + 50.0 * std::pow(100.0, -4.0));
    EXPECT_NEAR(o.sinr, signal / (p.noise_power() + interference), 1e-9 * o.sinr);
    EXPECT_NEAR(o.inr, interference / p.noise_power(), 1e-9 * o.inr);
    EXPECT_EQ(o.interferer_count, 2);
}

TEST(MonteCarlo, DesiredLinkFollowsTheLosLaw) {
    for (auto mode : {LosMode::abstract, LosMode::geometric}) {
        auto cfg = config("table1_sparse", 60.0, 6000);
        cfg.los_mode = mode;
        std::int64_t los = 0;
        for (const auto &o : simulate(cfg, 2))
            los += o.desired_los;
        const double pl = std::exp(-0.008 * 60.0);
        EXPECT_NEAR(static_cast<double>(los) / 6000.0, pl, 4.0 * std::sqrt(pl * (1 - pl) / 6000.0))
            << to_string(mode);
    }
}

TEST(MonteCarlo, ConditioningByRejection) {
    auto cfg = config("table1_sparse", 60.0, 300);
    cfg.conditioning = Conditioning::nlos_only;
    for (const auto &o : simulate(cfg, 1))
        EXPECT_FALSE(o.desired_los);
    cfg.conditioning = Conditioning::los_only;
    for (const auto &o : simulate(cfg, 1))
        EXPECT_TRUE(o.desired_los);
}

TEST(MonteCarlo, ConditioningThatCannotBeMetFails) {
    auto cfg = config("table1_sparse", 0.5, 200);
    cfg.los_mode = LosMode::abstract;
    cfg.conditioning = Conditioning::nlos_only; // P[NLOS] = 0.004
    EXPECT_THROW(simulate(cfg, 1), InsufficientSamplesError);
}

TEST(MonteCarlo, ExplicitThinningMatchesPreThinnedInLaw) {
    auto cfg = config("table1_dense", 25.0, 3000);
    cfg.los_mode = LosMode::abstract;
    auto spec = find_preset("table1_dense").params;
    spec.raw_density = 1e-3;
    spec.aloha_prob = 0.5;
    cfg.params = SystemParams(spec);
    double pre = 0.0, marks = 0.0;
    for (const auto &o : simulate(cfg, 1))
        pre += static_cast<double>(o.interferer_count);
    cfg.thinning = Thinning::explicit_marks;
    for (const auto &o : simulate(cfg, 1))
        marks += static_cast<double>(o.interferer_count);
    const double expected = 5e-4 * cfg.window.area() * 3000.0;
    EXPECT_NEAR(pre, expected, 5.0 * std::sqrt(expected));
    EXPECT_NEAR(marks, expected, 5.0 * std::sqrt(expected));
}

// Statistical agreement in the abstract mode, where the bound must hold.
TEST(MonteCarlo, AbstractModeRespectsTheBound) {
    auto cfg = config("table1_dense", 50.0, 3000, 8);
    cfg.los_mode = LosMode::abstract;
    const auto ts = linear_grid(-20.0, 40.0, 5.0);
    const auto curve = empirical_curve(cfg, ts, Statistic::sinr_ccdf, "mc");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double a = sinr_ccdf(ts[i], cfg.params);
        EXPECT_GE(a, curve.values[i] - 4.0 * curve.std_errors[i] - 1e-9) << ts[i];
        EXPECT_NEAR(a, curve.values[i], 0.03) << ts[i];
    }
}

TEST(MonteCarlo, WilsonStandardError) {
    EXPECT_GT(wilson_std_error(0, 100), 0.0);
    EXPECT_NEAR(wilson_std_error(0, 100), wilson_std_error(100, 100), 1e-15);
    EXPECT_NEAR(wilson_std_error(5000, 10000), 0.005, 1e-4);
    EXPECT_THROW(wilson_std_error(1, 0), ValidationError);
}

TEST(MonteCarlo, EmpiricalCurveShapes) {
    std::vector<TrialOutcome> outcomes(4);
    outcomes[0].sinr = 0.5;
    outcomes[1].sinr = 2.0;
    outcomes[2].sinr = 20.0;
    outcomes[3].sinr = 200.0;
    const std::vector<double> ts{0.0, 10.0};
    const auto c = empirical_curve(outcomes, ts, Statistic::sinr_ccdf, "x", "overall");
    EXPECT_DOUBLE_EQ(c.values[0], 0.75);
    EXPECT_DOUBLE_EQ(c.values[1], 0.5);
    EXPECT_EQ(c.source, CurveSource::empirical);
    auto small = config("table1_sparse", 25.0, 50);
    EXPECT_THROW(empirical_curve(small, ts, Statistic::sinr_ccdf, "x"), ValidationError);
}

TEST(MonteCarlo, ConfigValidation) {
    auto cfg = config("table1_sparse", 25.0, 100);
    cfg.window.radius = 200.0; // < 10 r
    EXPECT_THROW(validate(cfg), ValidationError);
    cfg = config("table1_sparse", 25.0, 0);
    EXPECT_THROW(validate(cfg), ValidationError);
    EXPECT_EQ(parse_los_mode("abstract"), LosMode::abstract);
    EXPECT_THROW(parse_los_mode("raytraced"), ValidationError);
}

TEST(MonteCarlo, ThreadCountFromEnvironment) {
    ::setenv("MMWAVE_THREADS", "3", 1);
    EXPECT_EQ(worker_threads(), 3);
    ::setenv("MMWAVE_THREADS", "zero", 1);
    EXPECT_THROW(worker_threads(), ValidationError);
    ::setenv("MMWAVE_THREADS", "0", 1);
    EXPECT_THROW(worker_threads(), ValidationError);
    ::unsetenv("MMWAVE_THREADS");
    EXPECT_GE(worker_threads(), 1);
}

TEST(MonteCarlo, LosValidationReport) {
    const auto &law = find_preset("table1_sparse").buildings;
    const std::vector<double> ds{10.0, 100.0};
    const auto rep = empirical_los_validation(law, ds, 4000, 5);
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_LT(rep.max_deviation, 0.04);
    std::ostringstream os;
    write_los_validation_csv(os, rep);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "distance_m,empirical,std_error,law,deviation");
}

TEST(MonteCarlo, OutcomesCsvSchema) {
    std::vector<TrialOutcome> outcomes(1);
    outcomes[0].sinr = 10.0;
    outcomes[0].inr = 1.0;
    outcomes[0].interferer_count = 7;
    std::ostringstream os;
    write_outcomes_csv(os, outcomes);
    EXPECT_EQ(os.str(), "trial,sinr_db,inr_db,desired_los,n_interferers\n0,10,0,true,7\n");
}
