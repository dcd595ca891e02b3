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

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmwave {

// Raised for any out-of-range model input. Never clamped silently.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string &message);

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

double db_to_linear(double db);
double linear_to_db(double linear);

// Sectored beam: constant gain inside the main lobe, constant gain elsewhere.
struct AntennaPattern {
    double beamwidth = 0.0;     // radians, strictly inside (0, pi)
    double mainlobe_gain = 1.0; // linear
    double sidelobe_gain = 1.0; // linear
};

void validate(const AntennaPattern &pattern);

enum class GainClass { main_main = 0, main_side = 1, side_side = 2 };

struct GainOutcome {
    double gain = 0.0;
    double probability = 0.0;
};

// Effective gain seen from a randomly pointed interferer, ordered
// main-main, main-side, side-side.
struct GainDistribution {
    std::array<GainOutcome, 3> outcomes{};

    const GainOutcome &operator[](GainClass c) const { return outcomes[static_cast<int>(c)]; }
};

GainDistribution gain_distribution(const AntennaPattern &pattern);

// Aloha and outdoor thinning of the raw transmitter density.
double effective_density(double raw_density, double aloha_prob, double outdoor_prob);

// Blockage rate of a boolean rectangle field with random orientation.
double blockage_rate(double building_density, double mean_width, double mean_length);

// Intercept loss 20 log10(2 pi d_ref / wavelength) with d_ref = 1 m, in dB.
double pathloss_intercept_db(double wavelength_m);
// Same intercept as a multiplicative linear gain 10^(-dB/10).
double pathloss_intercept(double wavelength_m);

// Positive mark law for building extents. Bounded support keeps the lazy
// building grid exact (a building never reaches beyond its neighbour cells).
struct MarkLaw {
    enum class Kind { fixed, uniform };
    Kind kind = Kind::fixed;
    double low = 0.0;  // fixed value when kind == fixed
    double high = 0.0; // unused when kind == fixed

    static MarkLaw fixed_at(double value) { return {Kind::fixed, value, value}; }
    static MarkLaw uniform_between(double lo, double hi) { return {Kind::uniform, lo, hi}; }

    double mean() const { return kind == Kind::fixed ? low : 0.5 * (low + high); }
    double max() const { return kind == Kind::fixed ? low : high; }
};

void validate(const MarkLaw &law, const std::string &field);

struct BuildingLaw {
    double density = 0.0; // building centres per m^2
    MarkLaw width = MarkLaw::fixed_at(15.0);
    MarkLaw length = MarkLaw::fixed_at(15.0);

    double blockage_rate() const;
};

// Upper limit for fading_shape and inr_shape.
inline constexpr int kMaxShape = 40;

// Raw, user-facing model inputs. dB quantities carry a _db suffix.
struct ParamSpec {
    double raw_density = 5e-5;  // transmitters per m^2
    double aloha_prob = 1.0;
    double outdoor_prob = 1.0;
    double link_distance = 25.0; // m
    double tx_power = 1.0;       // W
    double intercept_db = 69.71; // intercept loss, dB
    double noise_db = -117.0;    // dBW
    double los_exponent = 2.0;
    double nlos_exponent = 4.0;
    int fading_shape = 3;
    double blockage_rate = 0.008; // 1/m
    AntennaPattern antenna{3.14159265358979323846 / 6.0, 10.0, 0.1};
    int inr_shape = 20;
};

// Validated, immutable model parameters; internal arithmetic is linear.
class SystemParams {
public:
    explicit SystemParams(const ParamSpec &spec);

    const ParamSpec &spec() const noexcept { return spec_; }

    double effective_density() const noexcept { return effective_density_; }
    double raw_density() const noexcept { return spec_.raw_density; }
    double aloha_prob() const noexcept { return spec_.aloha_prob; }
    double outdoor_prob() const noexcept { return spec_.outdoor_prob; }
    double link_distance() const noexcept { return spec_.link_distance; }
    double tx_power() const noexcept { return spec_.tx_power; }
    double intercept() const noexcept { return intercept_; }
    double noise_power() const noexcept { return noise_power_; }
    double los_exponent() const noexcept { return spec_.los_exponent; }
    double nlos_exponent() const noexcept { return spec_.nlos_exponent; }
    int fading_shape() const noexcept { return spec_.fading_shape; }
    double blockage_rate() const noexcept { return spec_.blockage_rate; }
    const AntennaPattern &antenna() const noexcept { return spec_.antenna; }
    int inr_shape() const noexcept { return spec_.inr_shape; }
    const GainDistribution &gains() const noexcept { return gains_; }

    // Gain of the typical, perfectly aligned pair.
    double aligned_gain() const noexcept { return spec_.antenna.mainlobe_gain * spec_.antenna.mainlobe_gain; }

    // Replaces the thinning chain with an unthinned network of the given
    // effective density (a silent network when density is 0).
    SystemParams with_effective_density(double density) const;
    SystemParams with_link_distance(double distance) const;
    SystemParams with_antenna(const AntennaPattern &antenna) const;
    SystemParams with_blockage_rate(double beta) const;
    SystemParams with_noise_db(double noise_db) const;
    SystemParams with_fading_shape(int shape) const;
    SystemParams with_inr_shape(int shape) const;

private:
    ParamSpec spec_;
    double effective_density_ = 0.0;
    double intercept_ = 0.0;
    double noise_power_ = 0.0;
    GainDistribution gains_{};
};

struct Preset {
    std::string name;
    std::string description;
    ParamSpec params;
    double bandwidth_hz = 0.0;
    BuildingLaw buildings;
};

const std::vector<Preset> &presets();

// Throws ValidationError("preset", ...) for unknown names.
const Preset &find_preset(std::string_view name);

} // namespace mmwave
