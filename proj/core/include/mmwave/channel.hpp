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
#include "mmwave/rng.hpp"

namespace mmwave {

// Exponential LOS law of a boolean building field.
double los_probability(double distance, double beta);

struct LinkState {
    bool los = true;
    double exponent = 2.0;
    double gain = 1.0;
    double fading = 1.0;
};

// Draws one of the three effective gains according to its probability.
double sample_gain(const GainDistribution &gains, Rng &rng);

// Abstract interferer link: Bernoulli LOS, random sector gain, gamma fading.
LinkState sample_link_state(double distance, const SystemParams &params, Rng &rng);

double received_power(double tx_power, double gain, double fading, double intercept, double distance, double exponent);

// k (k!)^(-1/k): the constant that makes (1 - e^{-a z})^k a lower bound on
// the normalized gamma CDF.
double lemma1_constant(int k);

// E[exp(-eta h)] for h ~ Gamma(k, 1/k).
double gamma_mgf_term(double eta, int k);

} // namespace mmwave
