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

#include <cmath>

namespace mmwave {

double los_probability(double distance, double beta) {
    if (!(distance >= 0.0))
        throw ValidationError("distance", "must be >= 0");
    if (!(beta >= 0.0))
        throw ValidationError("blockage_rate", "must be >= 0");
    return std::exp(-beta * distance);
}

double sample_gain(const GainDistribution &gains, Rng &rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (const auto &o : gains.outcomes) {
        acc += o.probability;
        if (u < acc)
            return o.gain;
    }
    return gains.outcomes.back().gain;
}

LinkState sample_link_state(double distance, const SystemParams &params, Rng &rng) {
    if (!(distance > 0.0))
        throw ValidationError("distance", "must be > 0");
    LinkState s;
    s.los = rng.bernoulli(los_probability(distance, params.blockage_rate()));
    s.exponent = s.los ? params.los_exponent() : params.nlos_exponent();
    s.gain = sample_gain(params.gains(), rng);
    s.fading = sample_normalized_gamma(params.fading_shape(), rng);
    return s;
}

double received_power(double tx_power, double gain, double fading, double intercept, double distance,
                      double exponent) {
    return tx_power * gain * fading * intercept * std::pow(distance, -exponent);
}

double lemma1_constant(int k) {
    if (k < 1)
        throw ValidationError("k", "must be >= 1");
    return k * std::exp(-std::lgamma(k + 1.0) / k);
}

double gamma_mgf_term(double eta, int k) {
    if (!(eta >= 0.0))
        throw ValidationError("eta", "must be >= 0");
    if (k < 1)
        throw ValidationError("k", "must be >= 1");
    return std::exp(-k * std::log1p(eta / k));
}

} // namespace mmwave
