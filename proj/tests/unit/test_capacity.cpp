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

#include "mmwave/capacity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace mmwave;

namespace {

SystemParams sparse(double r = 25.0) { return SystemParams(find_preset("table1_sparse").params).with_link_distance(r); }

} // namespace

TEST(Capacity, QuadraticRootAgreesWithOracleInTaylorRegime) {
    for (double t_db : {-10.0, 0.0, 10.0, 20.0}) {
        const auto cap = transmission_capacity(t_db, 0.1, sparse(), Conditioning::los_only);
        SCOPED_TRACE(t_db);
        ASSERT_TRUE(cap.valid);
        EXPECT_GT(cap.density, 0.0);
        EXPECT_NEAR(cap.density, cap.oracle_density, 0.05 * cap.oracle_density);
        EXPECT_LE(cap.taylor_argument, 1.0);
        EXPECT_DOUBLE_EQ(cap.best(), cap.density);
    }
}

TEST(Capacity, OracleMeetsTheTarget) {
    const double eps = 0.1;
    const double lambda = capacity_oracle(5.0, eps, sparse(), Conditioning::los_only);
    ASSERT_GT(lambda, 0.0);
    const CoverageBound bound(sparse(), 5.0, Conditioning::los_only);
    EXPECT_NEAR(bound.evaluate(lambda), 1.0 - eps, 1e-6);
}

TEST(Capacity, NoiseLimitedRegimeHasNoCapacity) {
    // At 60 dB even a silent network misses 90% coverage.
    const auto cap = transmission_capacity(60.0, 0.1, sparse(), Conditioning::los_only);
    EXPECT_FALSE(cap.valid);
    EXPECT_DOUBLE_EQ(cap.density, 0.0);
    EXPECT_DOUBLE_EQ(cap.oracle_density, 0.0);
    EXPECT_DOUBLE_EQ(cap.best(), 0.0);
}

TEST(Capacity, InvalidRootFallsBackToOracle) {
    // The NLOS branch makes the overall Taylor expansion useless at r = 25 m.
    const auto cap = transmission_capacity(10.0, 0.2, sparse(), Conditioning::overall);
    EXPECT_FALSE(cap.valid);
    EXPECT_GT(cap.oracle_density, 0.0);
    EXPECT_GT(cap.taylor_argument, 0.3);
    EXPECT_DOUBLE_EQ(cap.best(), cap.oracle_density);
}

TEST(Capacity, RejectsBadOutage) {
    EXPECT_THROW(transmission_capacity(0.0, 0.0, sparse()), ValidationError);
    EXPECT_THROW(transmission_capacity(0.0, 1.0, sparse()), ValidationError);
    EXPECT_THROW(area_spectral_efficiency(1e-4, 0.0, 1.5), ValidationError);
}

TEST(Capacity, AreaSpectralEfficiency) {
    const auto ase = area_spectral_efficiency(2e-4, 10.0 * std::log10(3.0), 0.1);
    EXPECT_NEAR(ase.ase, 2e-4 * 2.0 * 0.9, 1e-15);
}

TEST(Capacity, OptimalDensityImprovesOnTheGrid) {
    const auto best = optimal_density(0.1, sparse(), Conditioning::los_only);
    EXPECT_GE(best.threshold_db, -10.0);
    EXPECT_LE(best.threshold_db, 40.0);
    for (double t_db : {-10.0, 0.0, 10.0, 20.0, 30.0}) {
        const auto cap = transmission_capacity(t_db, 0.1, sparse(), Conditioning::los_only);
        EXPECT_GE(best.ase * (1 + 1e-9), area_spectral_efficiency(cap.best(), t_db, 0.1).ase);
    }
}

TEST(Capacity, RateThresholds) {
    EXPECT_NEAR(rate_threshold_db(1e9, 500e6), 10.0 * std::log10(3.0), 1e-12);
    EXPECT_THROW(rate_threshold_db(0.0, 1e6), ValidationError);
    // 1 Gb/s over 50 MHz needs 2^20 - 1.
    EXPECT_NEAR(rate_threshold_db(1e9, 50e6), 10.0 * std::log10(1048575.0), 1e-9);
}

TEST(Capacity, TwoWayThresholds) {
    TwoWayConfig cfg;
    const auto th = twoway_thresholds(cfg);
    EXPECT_NEAR(th.forward, 15.0, 1e-12);
    EXPECT_NEAR(th.reverse, std::pow(2.0, 0.16) - 1.0, 1e-12);
    cfg.forward_fraction = 1.0;
    EXPECT_THROW(twoway_thresholds(cfg), ValidationError);
}

TEST(Capacity, TwoWayCapacityNeverExceedsOneWay) {
    const auto p = sparse();
    for (double f : {0.2, 0.5, 0.8}) {
        TwoWayConfig cfg;
        cfg.forward_fraction = f;
        const auto th = twoway_thresholds(cfg);
        const auto tw = twoway_transmission_capacity(th.forward_db(), th.reverse_db(), 0.1, p);
        const double fwd = capacity_oracle(th.forward_db(), 0.1, p, Conditioning::los_only);
        const double rev = capacity_oracle(th.reverse_db(), 0.1, p, Conditioning::los_only);
        EXPECT_LE(tw.oracle_density, std::min(fwd, rev) * (1 + 1e-9));
        EXPECT_LE(twoway_coverage(th.forward_db(), th.reverse_db(), p),
                  std::min(sinr_ccdf(th.forward_db(), p, Conditioning::los_only),
                           sinr_ccdf(th.reverse_db(), p, Conditioning::los_only)));
    }
}

TEST(Capacity, AllocationFavoursTheForwardLink) {
    const auto res = optimize_bandwidth_allocation(TwoWayConfig{}, 0.1, sparse(50.0));
    EXPECT_GT(res.fraction, 0.8);
    EXPECT_LT(res.fraction, 0.95);
    ASSERT_EQ(res.grid.size(), 19u);
    for (const auto &pt : res.grid)
        EXPECT_LE(pt.capacity.best(), res.capacity.best() * (1 + 1e-6));
}

TEST(Capacity, SweepCsvSchema) {
    std::ostringstream os;
    const std::vector<SweepRow> rows{{"eps0.1", "threshold_db", 5.0, 1e-4, 2e-4, true, 1e-3}};
    write_sweep_csv(os, rows);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "series,sweep_var,value,lambda_eps,ase,valid,residual");
    EXPECT_NE(os.str().find("eps0.1,threshold_db,5,0.0001,0.0002,true,0.001"), std::string::npos);
}
