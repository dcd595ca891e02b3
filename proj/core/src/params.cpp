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

#include "mmwave/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mmwave {

namespace {

void require(bool ok, const char *field, const std::string &message) {
    if (!ok)
        throw ValidationError(field, message);
}

bool in_unit_interval(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

ValidationError::ValidationError(std::string field, const std::string &message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

void validate(const AntennaPattern &pattern) {
    require(std::isfinite(pattern.beamwidth) && pattern.beamwidth > 0.0 && pattern.beamwidth < std::numbers::pi,
            "antenna.beamwidth", "must lie strictly inside (0, pi) radians");
    require(positive(pattern.sidelobe_gain), "antenna.sidelobe_gain", "must be > 0");
    require(positive(pattern.mainlobe_gain), "antenna.mainlobe_gain", "must be > 0");
    require(pattern.mainlobe_gain >= pattern.sidelobe_gain, "antenna.mainlobe_gain",
            "must be >= sidelobe gain");
}

GainDistribution gain_distribution(const AntennaPattern &pattern) {
    validate(pattern);
    const double q = pattern.beamwidth / std::numbers::pi;
    const double G = pattern.mainlobe_gain;
    const double g = pattern.sidelobe_gain;
    GainDistribution d;
    d.outcomes[0] = {G * G, q * q};
    d.outcomes[1] = {G * g, 2.0 * q * (1.0 - q)};
    d.outcomes[2] = {g * g, (1.0 - q) * (1.0 - q)};
    return d;
}

double effective_density(double raw_density, double aloha_prob, double outdoor_prob) {
    require(positive(raw_density), "raw_density", "must be > 0");
    require(in_unit_interval(aloha_prob), "aloha_prob", "must lie in [0, 1]");
    require(in_unit_interval(outdoor_prob), "outdoor_prob", "must lie in [0, 1]");
    return aloha_prob * outdoor_prob * raw_density;
}

double blockage_rate(double building_density, double mean_width, double mean_length) {
    require(std::isfinite(building_density) && building_density >= 0.0, "building_density", "must be >= 0");
    require(std::isfinite(mean_width) && mean_width >= 0.0, "mean_width", "must be >= 0");
    require(std::isfinite(mean_length) && mean_length >= 0.0, "mean_length", "must be >= 0");
    return 2.0 * building_density * (mean_width + mean_length) / std::numbers::pi;
}

double pathloss_intercept_db(double wavelength_m) {
    require(positive(wavelength_m), "wavelength", "must be > 0");
    return 20.0 * std::log10(2.0 * std::numbers::pi / wavelength_m);
}

double pathloss_intercept(double wavelength_m) { return db_to_linear(-pathloss_intercept_db(wavelength_m)); }

void validate(const MarkLaw &law, const std::string &field) {
    if (law.kind == MarkLaw::Kind::fixed) {
        if (!positive(law.low))
            throw ValidationError(field, "fixed mark must be > 0");
    } else if (!positive(law.low) || !std::isfinite(law.high) || law.high < law.low) {
        throw ValidationError(field, "uniform mark needs 0 < low <= high");
    }
}

double BuildingLaw::blockage_rate() const { return mmwave::blockage_rate(density, width.mean(), length.mean()); }

SystemParams::SystemParams(const ParamSpec &spec) : spec_(spec) {
    effective_density_ = mmwave::effective_density(spec.raw_density, spec.aloha_prob, spec.outdoor_prob);
    require(positive(spec.link_distance), "link_distance", "must be > 0");
    require(positive(spec.tx_power), "tx_power", "must be > 0");
    require(std::isfinite(spec.intercept_db), "intercept_db", "must be finite");
    require(std::isfinite(spec.noise_db), "noise_db", "must be finite");
    require(std::isfinite(spec.los_exponent) && spec.los_exponent >= 2.0, "los_exponent", "must be >= 2");
    require(std::isfinite(spec.nlos_exponent) && spec.nlos_exponent >= spec.los_exponent, "nlos_exponent",
            "must be >= los_exponent");
    // The alternating binomial sums lose all precision beyond shape ~50.
    require(spec.fading_shape >= 1 && spec.fading_shape <= kMaxShape, "fading_shape", "must be an integer in [1, 40]");
    require(std::isfinite(spec.blockage_rate) && spec.blockage_rate >= 0.0, "blockage_rate", "must be >= 0");
    require(spec.inr_shape >= 1 && spec.inr_shape <= kMaxShape, "inr_shape", "must be an integer in [1, 40]");
    gains_ = gain_distribution(spec.antenna);
    intercept_ = db_to_linear(-spec.intercept_db);
    noise_power_ = db_to_linear(spec.noise_db);
}

SystemParams SystemParams::with_effective_density(double density) const {
    ParamSpec s = spec_;
    if (!(std::isfinite(density) && density >= 0.0))
        throw ValidationError("effective_density", "must be >= 0");
    if (density > 0.0) {
        s.raw_density = density;
        s.aloha_prob = 1.0;
        s.outdoor_prob = 1.0;
    } else {
        s.aloha_prob = 0.0;
    }
    return SystemParams(s);
}

SystemParams SystemParams::with_link_distance(double distance) const {
    ParamSpec s = spec_;
    s.link_distance = distance;
    return SystemParams(s);
}

SystemParams SystemParams::with_antenna(const AntennaPattern &antenna) const {
    ParamSpec s = spec_;
    s.antenna = antenna;
    return SystemParams(s);
}

SystemParams SystemParams::with_blockage_rate(double beta) const {
    ParamSpec s = spec_;
    s.blockage_rate = beta;
    return SystemParams(s);
}

SystemParams SystemParams::with_noise_db(double noise_db) const {
    ParamSpec s = spec_;
    s.noise_db = noise_db;
    return SystemParams(s);
}

SystemParams SystemParams::with_fading_shape(int shape) const {
    ParamSpec s = spec_;
    s.fading_shape = shape;
    return SystemParams(s);
}

SystemParams SystemParams::with_inr_shape(int shape) const {
    ParamSpec s = spec_;
    s.inr_shape = shape;
    return SystemParams(s);
}

namespace {

// Short thin blockers at the density giving beta = 0.008 /m. The footprint is
// negligible, so the outdoor-conditioned LOS law stays at exp(-beta d), and
// each blocker shadows a narrow angle, so blockage of distinct links from the
// same receiver stays close to independent. Large blocks at the same beta
// correlate those events and push coverage above the independent-link bound.
BuildingLaw urban_walls() {
    BuildingLaw law;
    law.width = MarkLaw::fixed_at(0.1);
    law.length = MarkLaw::fixed_at(1.0);
    law.density = 0.008 * std::numbers::pi / (2.0 * 1.1);
    return law;
}

Preset mmwave_preset(std::string name, double density, int fading_shape) {
    Preset p;
    p.name = std::move(name);
    p.params.raw_density = density;
    p.params.fading_shape = fading_shape;
    p.bandwidth_hz = 500e6;
    p.buildings = urban_walls();
    p.description = "mmWave ad hoc network, density " + std::to_string(density) + " /m^2, N_h = " +
                    std::to_string(fading_shape);
    return p;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> all;
    all.push_back(mmwave_preset("table1_sparse", 5e-5, 3));
    all.push_back(mmwave_preset("table1_dense", 5e-4, 3));
    all.push_back(mmwave_preset("table1_sparse_nh7", 5e-5, 7));
    all.push_back(mmwave_preset("table1_dense_nh7", 5e-4, 7));

    Preset uhf;
    uhf.name = "uhf_50mhz";
    uhf.description = "UHF comparison network with equal aperture (unit gains), 50 MHz";
    uhf.params.raw_density = 5e-5;
    uhf.params.intercept_db = 40.4;
    uhf.params.noise_db = -127.0;
    uhf.params.los_exponent = 2.09;
    uhf.params.nlos_exponent = 3.75;
    uhf.params.antenna = {std::numbers::pi / 6.0, 1.0, 1.0};
    uhf.bandwidth_hz = 50e6;
    uhf.buildings = urban_walls();
    all.push_back(uhf);
    return all;
}

} // namespace

const std::vector<Preset> &presets() {
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset &find_preset(std::string_view name) {
    const auto &all = presets();
    auto it = std::find_if(all.begin(), all.end(), [&](const Preset &p) { return p.name == name; });
    if (it == all.end())
        throw ValidationError("preset", "unknown preset '" + std::string(name) + "'");
    return *it;
}

} // namespace mmwave
