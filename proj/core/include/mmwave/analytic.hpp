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

#include "mmwave/params.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmwave {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Which state of the desired link the coverage refers to. The interference
// field always keeps its LOS/NLOS mixture.
enum class Conditioning { overall, los_only, nlos_only };

std::string_view to_string(Conditioning c);
Conditioning parse_conditioning(std::string_view text);

// Laplace exponents of the interference field for term n of the coverage
// bound. `los_link_*` apply when the desired link is LOS, `nlos_link_*` when
// it is NLOS; the suffix names the state of the interferers.
struct InterferenceIntegrals {
    double los_link_los = 0.0;
    double los_link_nlos = 0.0;
    double nlos_link_los = 0.0;
    double nlos_link_nlos = 0.0;
};

// Independent of the density by construction.
InterferenceIntegrals interference_integrals(double threshold_db, int n, const SystemParams &params);

// Test fixtures for mutation checks of the validation suite.
struct BoundFault {
    // Sign error on the NLOS-interferer exponent of the LOS branch. Moves the
    // bound up by a few 1e-3 at most, so only the tightness check may notice.
    bool negate_nlos_interference = false;
    // Sign error on the alternating binomial sum; breaks the bound outright.
    bool flip_alternating_sign = false;

    bool any() const noexcept { return negate_nlos_interference || flip_alternating_sign; }
};

// Coverage bound at one threshold, reduced to a sum of exponentials in the
// density: sum_b pi_b * sum_n w_bn exp(-2 pi lambda theta_bn). Building it
// costs the quadratures; evaluating it at any density is cheap.
class CoverageBound {
public:
    struct Term {
        int branch = 0;      // 0: desired link LOS, 1: NLOS
        double weight = 0.0; // binomial coefficient, sign and noise factor
        double theta = 0.0;  // Laplace exponent / (2 pi lambda)
    };

    CoverageBound(const SystemParams &params, double threshold_db, Conditioning conditioning,
                  const BoundFault &fault = {});

    double threshold_db() const noexcept { return threshold_db_; }
    Conditioning conditioning() const noexcept { return conditioning_; }
    const std::vector<Term> &terms() const noexcept { return terms_; }
    const std::array<double, 2> &branch_probability() const noexcept { return branch_probability_; }

    // Unclamped alternating sum.
    double raw(double density) const;
    // Each branch clamped to [0, 1] before mixing.
    double evaluate(double density) const;

    // c0 + c1 lambda + c2 lambda^2 from e^{-x} ~ 1 - x + x^2/2.
    std::array<double, 3> taylor() const;
    // Largest 2 pi lambda theta over the contributing terms.
    double taylor_argument(double density) const;

private:
    double branch_sum(int branch, double density) const;

    double threshold_db_;
    Conditioning conditioning_;
    std::array<double, 2> branch_probability_{};
    std::vector<Term> terms_;
};

double sinr_ccdf(double threshold_db, const SystemParams &params, Conditioning conditioning = Conditioning::overall);
double sinr_ccdf_raw(double threshold_db, const SystemParams &params, Conditioning conditioning = Conditioning::overall);

struct ReceiverDistanceLaw {
    enum class Kind { fixed, uniform, rayleigh };
    Kind kind = Kind::fixed;
    double mean = 25.0;

    // uniform on [0, 2 mean]; Rayleigh with scale mean * sqrt(2 / pi)
    double density(double r) const;
};

ReceiverDistanceLaw::Kind parse_distance_law(std::string_view text);

// Averages the fixed-distance bound over the receiver distance law.
double sinr_ccdf_random_distance(double threshold_db, const SystemParams &params, const ReceiverDistanceLaw &law,
                                 Conditioning conditioning = Conditioning::overall);

// Interference-to-noise CDF bound with the delta approximation of order
// inr_shape().
double inr_cdf(double threshold_db, const SystemParams &params);
// Same with the NLOS interference removed.
double inr_cdf_los_only(double threshold_db, const SystemParams &params);
double inr_cdf_raw(double threshold_db, const SystemParams &params, bool los_only = false);

enum class CurveKind { ccdf, cdf };
enum class CurveSource { analytic, empirical };

struct DistributionCurve {
    std::string series;
    CurveKind kind = CurveKind::ccdf;
    CurveSource source = CurveSource::analytic;
    std::string conditioning = "overall";
    std::vector<double> thresholds_db;
    std::vector<double> values;
    std::vector<double> std_errors; // empty for analytic curves
};

DistributionCurve sinr_curve(const SystemParams &params, std::span<const double> thresholds_db,
                             Conditioning conditioning, std::string series);
DistributionCurve inr_curve(const SystemParams &params, std::span<const double> thresholds_db, bool los_only,
                            std::string series);

// series,threshold_db,value,std_error,source,conditioning
void write_curves_csv(std::ostream &out, std::span<const DistributionCurve> curves);

// Evenly spaced grid including both ends (within rounding of step).
std::vector<double> linear_grid(double start, double stop, double step);

} // namespace mmwave
