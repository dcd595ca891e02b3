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

#include "mmwave/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace mmwave;

TEST(Rng, SeedDerivationIsStableAndSpreads) {
    EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
    std::set<std::uint64_t> seen;
    for (std::uint64_t root : {0ULL, 1ULL, 2ULL})
        for (std::uint64_t i = 0; i < 1000; ++i)
            seen.insert(derive_seed(root, i));
    EXPECT_EQ(seen.size(), 3000u);
    // Frozen value: changing the mixer silently changes every study.
    EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Rng, SequencesAreReproducible) {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        EXPECT_EQ(x, b());
        differs |= x != c();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, UniformMoments) {
    Rng rng(7);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sq += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 2e-3);
}

class PoissonMoments : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMoments, MeanAndVarianceMatch) {
    const double mean = GetParam();
    Rng rng(static_cast<std::uint64_t>(mean * 1000) + 1);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = static_cast<double>(sample_poisson(mean, rng));
        sum += k;
        sq += k * k;
    }
    const double m = sum / n;
    EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / n));
    EXPECT_NEAR((sq / n - m * m) / mean, 1.0, 0.03);
}

INSTANTIATE_TEST_SUITE_P(Means, PoissonMoments, ::testing::Values(0.3, 2.0, 11.0, 40.0, 800.0));

TEST(Rng, PoissonZeroMean) {
    Rng rng(1);
    EXPECT_EQ(sample_poisson(0.0, rng), 0u);
}

class GammaMoments : public ::testing::TestWithParam<int> {};

TEST_P(GammaMoments, NormalizedGammaHasUnitMean) {
    const int k = GetParam();
    Rng rng(100 + k);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double h = sample_normalized_gamma(k, rng);
        ASSERT_GT(h, 0.0);
        sum += h;
        sq += h * h;
    }
    const double m = sum / n;
    EXPECT_NEAR(m, 1.0, 5.0 * std::sqrt(1.0 / k / n));
    EXPECT_NEAR(sq / n - m * m, 1.0 / k, 0.03 / k);
}

INSTANTIATE_TEST_SUITE_P(Shapes, GammaMoments, ::testing::Values(1, 3, 7, 20));
