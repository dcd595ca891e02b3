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

#pragma once

#include "mmwave/analytic.hpp"
#include "mmwave/geometry.hpp"
#include "mmwave/params.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mmwave {

// Raised when conditioned sampling cannot meet its quota.
class InsufficientSamplesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// geometric: LOS from segment tests against a sampled building field.
// abstract: Bernoulli(e^{-beta d}) per link, to isolate the boolean model.
enum class LosMode { geometric, abstract };

// pre_thinned: PPP at the effective density. explicit_marks: PPP at the raw
// density with Bernoulli(p_tx p_out) transmit marks.
enum class Thinning { pre_thinned, explicit_marks };

std::string_view to_string(LosMode m);
LosMode parse_los_mode(std::string_view text);

struct TrialConfig {
    SystemParams params{ParamSpec{}};
    SimWindow window;
    std::int64_t trials = 10000;
    std::uint64_t root_seed = 1;
    BuildingLaw buildings;
    Conditioning conditioning = Conditioning::overall;
    LosMode los_mode = LosMode::geometric;
    Thinning thinning = Thinning::pre_thinned;
    bool unit_fading = false;           // h = 1 on every link
    bool interferers_force_los = false; // buildings ignored on interfering links
};

void validate(const TrialConfig &cfg);

struct Interferer {
    Point2D position;
    double gain = 0.0;
    double fading = 1.0;
    bool los = true;
};

struct NetworkRealization {
    Point2D receiver;
    Point2D transmitter;
    bool desired_los = true;
    double desired_fading = 1.0;
    std::vector<Interferer> interferers;
};

struct TrialOutcome {
    double sinr = 0.0;
    double inr = 0.0;
    bool desired_los = true;
    std::int64_t interferer_count = 0;
};

// SINR and INR at the receiver for a frozen realization.
TrialOutcome evaluate(const NetworkRealization &net, const SystemParams &params);

// Reusable per-thread state (the lazily generated building field).
class TrialRunner {
public:
    explicit TrialRunner(const TrialConfig &cfg);
    ~TrialRunner();
    TrialRunner(TrialRunner &&) noexcept;
    TrialRunner &operator=(TrialRunner &&) noexcept;

    // One unconditioned world drawn from `seed`.
    NetworkRealization sample(std::uint64_t seed);

    // Trial `index` of the configured experiment, honouring the
    // conditioning by rejection (at most 100 attempts per trial).
    TrialOutcome run(std::int64_t index);

    // Buildings of the most recent sample within the given radius.
    std::vector<Building> buildings_within(double radius);

private:
    const TrialConfig *cfg_;
    std::unique_ptr<RadialBuildingField> field_;
};

inline constexpr int kConditionedAttemptCap = 100;

TrialOutcome run_trial(const TrialConfig &cfg, std::int64_t index);

// Worker count from MMWAVE_THREADS, defaulting to the hardware concurrency.
int worker_threads();

// All trials of `cfg`; outcome i depends only on (root_seed, i).
std::vector<TrialOutcome> simulate(const TrialConfig &cfg, int threads = 0);

enum class Statistic { sinr_ccdf, inr_cdf };

// Standard error from the Wilson score interval at one sigma.
double wilson_std_error(std::int64_t successes, std::int64_t trials);

DistributionCurve empirical_curve(std::span<const TrialOutcome> outcomes, std::span<const double> thresholds_db,
                                  Statistic statistic, std::string series, std::string conditioning);
DistributionCurve empirical_curve(const TrialConfig &cfg, std::span<const double> thresholds_db, Statistic statistic,
                                  std::string series);

struct LosValidationRow {
    double distance = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double law = 0.0;
    double deviation = 0.0;
};

struct LosValidationReport {
    std::vector<LosValidationRow> rows;
    double max_deviation = 0.0;
};

LosValidationReport empirical_los_validation(const BuildingLaw &law, std::span<const double> distances,
                                             std::int64_t segments, std::uint64_t seed);

// distance_m,empirical,std_error,law,deviation
void write_los_validation_csv(std::ostream &out, const LosValidationReport &report);

// trial,sinr_db,inr_db,desired_los,n_interferers
void write_outcomes_csv(std::ostream &out, std::span<const TrialOutcome> outcomes);

} // namespace mmwave
