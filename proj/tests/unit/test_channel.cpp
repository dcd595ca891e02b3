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

#include "mmwave/channel.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace mmwave;

TEST(Channel, LosProbability) {
    EXPECT_DOUBLE_EQ(los_probability(0.0, 0.008), 1.0);
    EXPECT_NEAR(los_probability(25.0, 0.008), std::exp(-0.2), 1e-15);
    EXPECT_THROW(los_probability(-1.0, 0.008), ValidationError);
}

TEST(Channel, ReceivedPower) {
    EXPECT_NEAR(received_power(1.0, 100.0, 1.0, 1e-7, 10.0, 2.0), 1e-7, 1e-20);
    EXPECT_NEAR(received_power(2.0, 1.0, 0.5, 1.0, 10.0, 4.0), 1e-4, 1e-18);
}

TEST(Channel, Lemma1Constant) {
    EXPECT_DOUBLE_EQ(lemma1_constant(1), 1.0);
    EXPECT_NEAR(lemma1_constant(2), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(lemma1_constant(3), 3.0 / std::cbrt(6.0), 1e-15);
    EXPECT_THROW(lemma1_constant(0), ValidationError);
}

// (1 - e^{-a z})^k <= P[Gamma(k, 1/k) < z], equality for k = 1.
TEST(Channel, Lemma1BoundsTheGammaCdf) {
    for (int k = 1; k <= 10; ++k) {
        const double a = lemma1_constant(k);
        for (int i = 0; i < 50; ++i) {
            const double z = 1e-3 * std::pow(1e5, i / 49.0);
            const double lower = std::pow(-std::expm1(-a * z), k);
            const double cdf = boost::math::gamma_p(static_cast<double>(k), k * z);
            if (k == 1)
                EXPECT_NEAR(lower, cdf, 1e-12);
            else
                EXPECT_LE(lower, cdf) << "k=" << k << " z=" << z;
        }
    }
}

TEST(Channel, GammaMgfTerm) {
    for (int k : {1, 3, 20})
        for (double eta : {0.0, 0.1, 2.0, 50.0})
            EXPECT_NEAR(gamma_mgf_term(eta, k), std::pow(1.0 + eta / k, -k), 1e-14);
}

TEST(Channel, SampledGainsFollowTheDistribution) {
    const SystemParams p{ParamSpec{}};
    Rng rng(3);
    const int n = 200000;
    int main_main = 0;
    for (int i = 0; i < n; ++i)
        main_main += sample_gain(p.gains(), rng) == p.gains()[GainClass::main_main].gain;
    const double q = p.gains()[GainClass::main_main].probability;
    EXPECT_NEAR(static_cast<double>(main_main) / n, q, 5.0 * std::sqrt(q * (1 - q) / n));
}

TEST(Channel, AbstractLinkStateFollowsLosLaw) {
    const SystemParams p{ParamSpec{}};
    Rng rng(5);
    const int n = 100000;
    int los = 0;
    for (int i = 0; i < n; ++i) {
        const auto s = sample_link_state(100.0, p, rng);
        los += s.los;
        EXPECT_EQ(s.exponent, s.los ? p.los_exponent() : p.nlos_exponent());
    }
    const double pl = std::exp(-0.8);
    EXPECT_NEAR(static_cast<double>(los) / n, pl, 5.0 * std::sqrt(pl * (1 - pl) / n));
}
