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
#include "mmwave/params.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mmwave {

struct CapacityResult {
    double density = 0.0;         // lambda_eps from the Taylor polynomial
    bool valid = false;           // Taylor regime and residual check passed
    double residual = 0.0;        // |full bound at density - (1 - eps)|
    double taylor_argument = 0.0; // largest 2 pi lambda theta at density (at the oracle without a root)
    double oracle_density = 0.0;  // bisection on the full bound
    std::vector<double> roots;    // positive real roots of the polynomial

    // The polynomial root when it is trustworthy, the bisection value otherwise.
    double best() const noexcept { return valid ? density : oracle_density; }
};

// Upper end of the bisection bracket, per m^2.
inline constexpr double kOracleDensityCap = 1e-2;

// Densities are ignored in `params`; only the rest of the model is used.
CapacityResult transmission_capacity(double threshold_db, double epsilon, const SystemParams &params,
                                     Conditioning conditioning = Conditioning::overall);

// Largest density whose full bound still meets 1 - epsilon (bisection).
double capacity_oracle(double threshold_db, double epsilon, const SystemParams &params,
                       Conditioning conditioning = Conditioning::overall);

struct AseResult {
    double ase = 0.0; // bits/s/Hz/m^2
    double density = 0.0;
    double threshold_db = 0.0;
};

AseResult area_spectral_efficiency(double density, double threshold_db, double epsilon);

struct OptimalDensity {
    double density = 0.0;
    double threshold_db = 0.0;
    double ase = 0.0;
};

// Maximizes ASE over thresholds in [t_lo_db, t_hi_db]: grid search followed
// by golden-section refinement. Uses CapacityResult::best().
OptimalDensity optimal_density(double epsilon, const SystemParams &params, Conditioning conditioning,
                               double t_lo_db = -10.0, double t_hi_db = 40.0, double step_db = 2.5);

double rate_threshold_db(double rate_bps, double bandwidth_hz);

// P[W log2(1 + SINR) >= R].
double rate_coverage(double rate_bps, double bandwidth_hz, const SystemParams &params,
                     Conditioning conditioning = Conditioning::overall);

struct TwoWayConfig {
    double total_bandwidth = 100e6; // Hz
    double forward_fraction = 0.5;
    double forward_rate = 200e6; // bits/s
    double reverse_rate = 8e6;   // bits/s
};

void validate(const TwoWayConfig &cfg);

struct TwoWayThresholds {
    double forward = 0.0; // linear
    double reverse = 0.0; // linear

    double forward_db() const;
    double reverse_db() const;
};

TwoWayThresholds twoway_thresholds(const TwoWayConfig &cfg);

// Product (FKG) lower bound on joint forward/reverse success.
double twoway_coverage(double forward_db, double reverse_db, const SystemParams &params,
                       Conditioning conditioning = Conditioning::los_only);

CapacityResult twoway_transmission_capacity(double forward_db, double reverse_db, double epsilon,
                                            const SystemParams &params,
                                            Conditioning conditioning = Conditioning::los_only);

double twoway_capacity_oracle(double forward_db, double reverse_db, double epsilon, const SystemParams &params,
                              Conditioning conditioning = Conditioning::los_only);

double twoway_ase(double density, const TwoWayConfig &cfg, double epsilon);

struct AllocationPoint {
    double fraction = 0.0;
    CapacityResult capacity;
};

struct AllocationResult {
    double fraction = 0.0; // maximizer
    CapacityResult capacity;
    std::vector<AllocationPoint> grid; // f = 0.05, 0.10, ..., 0.95
};

// Grid search over the forward fraction with golden-section refinement
// around the best grid point. cfg.forward_fraction is ignored.
AllocationResult optimize_bandwidth_allocation(const TwoWayConfig &cfg, double epsilon, const SystemParams &params,
                                               Conditioning conditioning = Conditioning::los_only);

struct SweepRow {
    std::string series;
    std::string sweep_var;
    double value = 0.0;
    double lambda_eps = 0.0;
    double ase = 0.0;
    bool valid = false;
    double residual = 0.0;
};

// series,sweep_var,value,lambda_eps,ase,valid,residual
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows);

} // namespace mmwave
