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

#include "mmwave/montecarlo.hpp"

#include "mmwave/channel.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>

namespace mmwave {

namespace {

constexpr std::uint64_t kBuildingStream = 0x6275696c64696e67ULL; // "building"
constexpr std::int64_t kChunk = 64;
constexpr std::size_t kHintBins = 2048;

// Bin of a monotone pseudo-angle in [0, 4); avoids atan2.
std::size_t hint_bin(double x, double y) {
    const double r = std::abs(x) + std::abs(y);
    if (r == 0.0)
        return 0;
    const double q = y >= 0.0 ? 1.0 - x / r : 3.0 + x / r;
    return std::min(kHintBins - 1, static_cast<std::size_t>(q * (kHintBins / 4)));
}

// d^-alpha from the squared distance; the common integer exponents avoid pow.
double path_gain(double d2, double alpha) {
    if (alpha == 2.0)
        return 1.0 / d2;
    if (alpha == 4.0)
        return 1.0 / (d2 * d2);
    return std::pow(d2, -0.5 * alpha);
}

bool accepts(Conditioning c, bool desired_los) {
    switch (c) {
    case Conditioning::overall:
        return true;
    case Conditioning::los_only:
        return desired_los;
    case Conditioning::nlos_only:
        return !desired_los;
    }
    return true;
}

} // namespace

std::string_view to_string(LosMode m) { return m == LosMode::geometric ? "geometric" : "abstract"; }

LosMode parse_los_mode(std::string_view text) {
    if (text == "geometric")
        return LosMode::geometric;
    if (text == "abstract")
        return LosMode::abstract;
    throw ValidationError("los_mode", "expected geometric or abstract, got '" + std::string(text) + "'");
}

void validate(const TrialConfig &cfg) {
    validate(cfg.window);
    if (cfg.trials < 1)
        throw ValidationError("trials", "must be >= 1");
    if (cfg.window.radius < 10.0 * cfg.params.link_distance())
        throw ValidationError("window.radius", "must be at least 10 link distances");
    if (cfg.los_mode == LosMode::geometric) {
        if (!(cfg.buildings.density >= 0.0))
            throw ValidationError("buildings.density", "must be >= 0");
        validate(cfg.buildings.width, "buildings.width");
        validate(cfg.buildings.length, "buildings.length");
    }
}

TrialOutcome evaluate(const NetworkRealization &net, const SystemParams &params) {
    const double r = distance(net.receiver, net.transmitter);
    const double alpha0 = net.desired_los ? params.los_exponent() : params.nlos_exponent();
    const double signal = received_power(params.tx_power(), params.aligned_gain(), net.desired_fading,
                                         params.intercept(), r, alpha0);
    double interference = 0.0;
    for (const auto &i : net.interferers) {
        const double dx = i.position.x - net.receiver.x;
        const double dy = i.position.y - net.receiver.y;
        interference += i.gain * i.fading * path_gain(dx * dx + dy * dy, i.los ? params.los_exponent()
                                                                                : params.nlos_exponent());
    }
    interference *= params.tx_power() * params.intercept();
    TrialOutcome out;
    out.sinr = signal / (params.noise_power() + interference);
    out.inr = interference / params.noise_power();
    out.desired_los = net.desired_los;
    out.interferer_count = static_cast<std::int64_t>(net.interferers.size());
    return out;
}

TrialRunner::TrialRunner(const TrialConfig &cfg) : cfg_(&cfg) {
    validate(cfg);
    if (cfg.los_mode == LosMode::geometric)
        field_ = std::make_unique<RadialBuildingField>(cfg.buildings, cfg.window.radius, cfg.root_seed);
}

TrialRunner::~TrialRunner() = default;
TrialRunner::TrialRunner(TrialRunner &&) noexcept = default;
TrialRunner &TrialRunner::operator=(TrialRunner &&) noexcept = default;

namespace {

// Draws the desired link first so that rejected attempts stop early.
bool draw(const TrialConfig &cfg, RadialBuildingField *field, std::uint64_t seed, Conditioning conditioning,
          NetworkRealization &net) {
    const SystemParams &p = cfg.params;
    Rng rng(seed);
    net.receiver = {0.0, 0.0};
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double r = p.link_distance();
    net.transmitter = {r * std::cos(phi), r * std::sin(phi)};
    net.desired_fading = cfg.unit_fading ? 1.0 : sample_normalized_gamma(p.fading_shape(), rng);
    if (field) {
        field->reset(derive_seed(seed, kBuildingStream));
        net.desired_los = field->is_outdoor_los(net.transmitter);
    } else {
        net.desired_los = rng.bernoulli(los_probability(r, p.blockage_rate()));
    }
    net.interferers.clear();
    if (!accepts(conditioning, net.desired_los))
        return false;

    const bool explicit_marks = cfg.thinning == Thinning::explicit_marks;
    const double intensity = explicit_marks ? p.raw_density() : p.effective_density();
    const double keep = p.aloha_prob() * p.outdoor_prob();
    const auto count = intensity > 0.0 ? sample_poisson(intensity * cfg.window.area(), rng) : 0;
    const double radius = cfg.window.radius;
    const double beta = p.blockage_rate();
    std::array<std::uint32_t, kHintBins> hints{};
    for (std::uint64_t k = 0; k < count; ++k) {
        // uniform in the disc by rejection from the bounding square
        double x, y;
        do {
            x = rng.uniform(-1.0, 1.0);
            y = rng.uniform(-1.0, 1.0);
        } while (x * x + y * y > 1.0);
        if (explicit_marks && !rng.bernoulli(keep))
            continue;
        Interferer i;
        i.position = {radius * x, radius * y};
        i.gain = sample_gain(p.gains(), rng);
        i.fading = cfg.unit_fading ? 1.0 : sample_normalized_gamma(p.fading_shape(), rng);
        if (cfg.interferers_force_los)
            i.los = true;
        else if (field)
            i.los = field->is_outdoor_los(i.position, hints[hint_bin(x, y)]);
        else
            i.los = rng.bernoulli(std::exp(-beta * radius * std::sqrt(x * x + y * y)));
        net.interferers.push_back(i);
    }
    return true;
}

} // namespace

NetworkRealization TrialRunner::sample(std::uint64_t seed) {
    NetworkRealization net;
    draw(*cfg_, field_.get(), seed, Conditioning::overall, net);
    return net;
}

TrialOutcome TrialRunner::run(std::int64_t index) {
    thread_local NetworkRealization net;
    const std::uint64_t base = derive_seed(cfg_->root_seed, static_cast<std::uint64_t>(index));
    for (int attempt = 0; attempt < kConditionedAttemptCap; ++attempt) {
        const std::uint64_t seed = attempt == 0 ? base : derive_seed(base, static_cast<std::uint64_t>(attempt));
        if (draw(*cfg_, field_.get(), seed, cfg_->conditioning, net))
            return evaluate(net, cfg_->params);
    }
    throw InsufficientSamplesError("conditioned sampling exceeded " + std::to_string(kConditionedAttemptCap) +
                                   " attempts for trial " + std::to_string(index));
}

std::vector<Building> TrialRunner::buildings_within(double radius) {
    if (!field_)
        return {};
    return field_->buildings_within(radius);
}

TrialOutcome run_trial(const TrialConfig &cfg, std::int64_t index) { return TrialRunner(cfg).run(index); }

int worker_threads() {
    if (const char *env = std::getenv("MMWAVE_THREADS"); env && *env) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 1024)
            throw ValidationError("MMWAVE_THREADS", "must be an integer in [1, 1024]");
        return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<TrialOutcome> simulate(const TrialConfig &cfg, int threads) {
    validate(cfg);
    if (threads <= 0)
        threads = worker_threads();
    std::vector<TrialOutcome> out(static_cast<std::size_t>(cfg.trials));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            TrialRunner runner(cfg);
            while (true) {
                const std::int64_t begin = next.fetch_add(kChunk);
                if (begin >= cfg.trials)
                    break;
                const std::int64_t end = std::min(begin + kChunk, cfg.trials);
                for (std::int64_t i = begin; i < end; ++i)
                    out[static_cast<std::size_t>(i)] = runner.run(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next.store(cfg.trials);
        }
    };
    const int n = static_cast<int>(std::min<std::int64_t>(threads, (cfg.trials + kChunk - 1) / kChunk));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t)
            pool.emplace_back(work);
        for (auto &th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

double wilson_std_error(std::int64_t successes, std::int64_t trials) {
    if (trials < 1)
        throw ValidationError("trials", "must be >= 1");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    return std::sqrt(p * (1.0 - p) / n + 1.0 / (4.0 * n * n)) / (1.0 + 1.0 / n);
}

DistributionCurve empirical_curve(std::span<const TrialOutcome> outcomes, std::span<const double> thresholds_db,
                                  Statistic statistic, std::string series, std::string conditioning) {
    if (outcomes.empty())
        throw ValidationError("trials", "no outcomes");
    std::vector<double> v;
    v.reserve(outcomes.size());
    for (const auto &o : outcomes)
        v.push_back(statistic == Statistic::sinr_ccdf ? o.sinr : o.inr);
    std::sort(v.begin(), v.end());

    DistributionCurve c;
    c.series = std::move(series);
    c.kind = statistic == Statistic::sinr_ccdf ? CurveKind::ccdf : CurveKind::cdf;
    c.source = CurveSource::empirical;
    c.conditioning = std::move(conditioning);
    const auto n = static_cast<std::int64_t>(v.size());
    for (double t_db : thresholds_db) {
        const double t = db_to_linear(t_db);
        std::int64_t hits = 0;
        if (statistic == Statistic::sinr_ccdf)
            hits = v.end() - std::lower_bound(v.begin(), v.end(), t);
        else
            hits = std::upper_bound(v.begin(), v.end(), t) - v.begin();
        c.thresholds_db.push_back(t_db);
        c.values.push_back(static_cast<double>(hits) / static_cast<double>(n));
        c.std_errors.push_back(wilson_std_error(hits, n));
    }
    return c;
}

DistributionCurve empirical_curve(const TrialConfig &cfg, std::span<const double> thresholds_db, Statistic statistic,
                                  std::string series) {
    if (cfg.trials < 100)
        throw ValidationError("trials", "empirical curves need at least 100 trials");
    const auto outcomes = simulate(cfg);
    return empirical_curve(outcomes, thresholds_db, statistic, std::move(series),
                           std::string(to_string(cfg.conditioning)));
}

LosValidationReport empirical_los_validation(const BuildingLaw &law, std::span<const double> distances,
                                             std::int64_t segments, std::uint64_t seed) {
    LosValidationReport rep;
    const double beta = law.blockage_rate();
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const auto est = empirical_los_probability(distances[i], law, segments, derive_seed(seed, i));
        LosValidationRow row;
        row.distance = distances[i];
        row.empirical = est.probability;
        row.std_error = est.std_error;
        row.law = std::exp(-beta * distances[i]);
        row.deviation = std::abs(row.empirical - row.law);
        rep.max_deviation = std::max(rep.max_deviation, row.deviation);
        rep.rows.push_back(row);
    }
    return rep;
}

void write_los_validation_csv(std::ostream &out, const LosValidationReport &report) {
    out << "distance_m,empirical,std_error,law,deviation\n" << std::setprecision(10);
    for (const auto &r : report.rows)
        out << r.distance << ',' << r.empirical << ',' << r.std_error << ',' << r.law << ',' << r.deviation << '\n';
}

void write_outcomes_csv(std::ostream &out, std::span<const TrialOutcome> outcomes) {
    out << "trial,sinr_db,inr_db,desired_los,n_interferers\n" << std::setprecision(10);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto &o = outcomes[i];
        out << i << ',' << linear_to_db(o.sinr) << ',' << linear_to_db(o.inr) << ','
            << (o.desired_los ? "true" : "false") << ',' << o.interferer_count << '\n';
    }
}

} // namespace mmwave
