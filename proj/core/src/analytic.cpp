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

#include "mmwave/analytic.hpp"

#include "mmwave/channel.hpp"
#include "radial_integral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace mmwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::array<detail::GainTerm, 3> gain_terms(const GainDistribution &gains, double scale_per_gain) {
    std::array<detail::GainTerm, 3> terms{};
    for (std::size_t i = 0; i < 3; ++i)
        terms[i] = {gains.outcomes[i].probability, scale_per_gain * gains.outcomes[i].gain};
    return terms;
}

double positive_threshold(double threshold_db) {
    const double t = db_to_linear(threshold_db);
    if (!(t > 0.0) || !std::isfinite(t))
        throw ValidationError("threshold_db", "must be finite");
    return t;
}

// Laplace exponents with the desired link in state `los_link`.
std::array<double, 2> link_integrals(const SystemParams &p, double t, int n, bool los_link) {
    const double a = lemma1_constant(p.fading_shape());
    const double alpha0 = los_link ? p.los_exponent() : p.nlos_exponent();
    const double q = n * a * std::pow(p.link_distance(), alpha0) * t / p.aligned_gain();
    const auto terms = gain_terms(p.gains(), q);
    return {detail::radial_integral(terms, p.los_exponent(), p.fading_shape(), p.blockage_rate(),
                                    detail::LosWeight::los),
            detail::radial_integral(terms, p.nlos_exponent(), p.fading_shape(), p.blockage_rate(),
                                    detail::LosWeight::nlos)};
}

double exp_term(double density, double theta) {
    if (density == 0.0)
        return 1.0;
    return std::exp(-kTwoPi * density * theta);
}

} // namespace

std::string_view to_string(Conditioning c) {
    switch (c) {
    case Conditioning::overall:
        return "overall";
    case Conditioning::los_only:
        return "los_only";
    case Conditioning::nlos_only:
        return "nlos_only";
    }
    return "overall";
}

Conditioning parse_conditioning(std::string_view text) {
    if (text == "overall")
        return Conditioning::overall;
    if (text == "los_only")
        return Conditioning::los_only;
    if (text == "nlos_only")
        return Conditioning::nlos_only;
    throw ValidationError("conditioning", "expected overall, los_only or nlos_only, got '" + std::string(text) + "'");
}

InterferenceIntegrals interference_integrals(double threshold_db, int n, const SystemParams &params) {
    if (n < 1 || n > params.fading_shape())
        throw ValidationError("n", "must lie in [1, fading_shape]");
    const double t = positive_threshold(threshold_db);
    const auto los = link_integrals(params, t, n, true);
    const auto nlos = link_integrals(params, t, n, false);
    return {los[0], los[1], nlos[0], nlos[1]};
}

CoverageBound::CoverageBound(const SystemParams &params, double threshold_db, Conditioning conditioning,
                             const BoundFault &fault)
    : threshold_db_(threshold_db), conditioning_(conditioning) {
    const double t = positive_threshold(threshold_db);
    const double p_los = los_probability(params.link_distance(), params.blockage_rate());
    switch (conditioning) {
    case Conditioning::overall:
        branch_probability_ = {p_los, 1.0 - p_los};
        break;
    case Conditioning::los_only:
        branch_probability_ = {1.0, 0.0};
        break;
    case Conditioning::nlos_only:
        branch_probability_ = {0.0, 1.0};
        break;
    }

    const int shape = params.fading_shape();
    const double a = lemma1_constant(shape);
    for (int branch = 0; branch < 2; ++branch) {
        if (branch_probability_[branch] == 0.0)
            continue;
        const bool los_link = branch == 0;
        const double alpha0 = los_link ? params.los_exponent() : params.nlos_exponent();
        const double k = a * std::pow(params.link_distance(), alpha0) /
                         (params.tx_power() * params.aligned_gain() * params.intercept());
        for (int n = 1; n <= shape; ++n) {
            const auto ints = link_integrals(params, t, n, los_link);
            double nlos_part = ints[1];
            if (fault.negate_nlos_interference && los_link)
                nlos_part = -nlos_part;
            double sign = n % 2 == 1 ? 1.0 : -1.0;
            if (fault.flip_alternating_sign)
                sign = -sign;
            const double noise = std::exp(-n * k * t * params.noise_power());
            terms_.push_back({branch, sign * binomial(shape, n) * noise, ints[0] + nlos_part});
        }
    }
}

double CoverageBound::branch_sum(int branch, double density) const {
    double sum = 0.0;
    for (const auto &term : terms_)
        if (term.branch == branch)
            sum += term.weight * exp_term(density, term.theta);
    return sum;
}

double CoverageBound::raw(double density) const {
    double v = 0.0;
    for (int b = 0; b < 2; ++b)
        if (branch_probability_[b] > 0.0)
            v += branch_probability_[b] * branch_sum(b, density);
    return v;
}

double CoverageBound::evaluate(double density) const {
    if (!(density >= 0.0))
        throw ValidationError("density", "must be >= 0");
    double v = 0.0;
    for (int b = 0; b < 2; ++b)
        if (branch_probability_[b] > 0.0)
            v += branch_probability_[b] * clamp01(branch_sum(b, density));
    return clamp01(v);
}

std::array<double, 3> CoverageBound::taylor() const {
    std::array<double, 3> c{};
    for (const auto &term : terms_) {
        const double w = branch_probability_[term.branch] * term.weight;
        c[0] += w;
        c[1] -= w * kTwoPi * term.theta;
        c[2] += w * 0.5 * kTwoPi * kTwoPi * term.theta * term.theta;
    }
    return c;
}

double CoverageBound::taylor_argument(double density) const {
    double m = 0.0;
    for (const auto &term : terms_)
        m = std::max(m, kTwoPi * density * std::abs(term.theta));
    return m;
}

double sinr_ccdf(double threshold_db, const SystemParams &params, Conditioning conditioning) {
    return CoverageBound(params, threshold_db, conditioning).evaluate(params.effective_density());
}

double sinr_ccdf_raw(double threshold_db, const SystemParams &params, Conditioning conditioning) {
    return CoverageBound(params, threshold_db, conditioning).raw(params.effective_density());
}

double ReceiverDistanceLaw::density(double r) const {
    if (r < 0.0)
        return 0.0;
    switch (kind) {
    case Kind::fixed:
        return 0.0;
    case Kind::uniform:
        return r <= 2.0 * mean ? 1.0 / (2.0 * mean) : 0.0;
    case Kind::rayleigh: {
        const double s2 = mean * mean * 2.0 / std::numbers::pi;
        return r / s2 * std::exp(-r * r / (2.0 * s2));
    }
    }
    return 0.0;
}

ReceiverDistanceLaw::Kind parse_distance_law(std::string_view text) {
    if (text == "fixed")
        return ReceiverDistanceLaw::Kind::fixed;
    if (text == "uniform")
        return ReceiverDistanceLaw::Kind::uniform;
    if (text == "rayleigh")
        return ReceiverDistanceLaw::Kind::rayleigh;
    throw ValidationError("receiver_law", "expected fixed, uniform or rayleigh, got '" + std::string(text) + "'");
}

double sinr_ccdf_random_distance(double threshold_db, const SystemParams &params, const ReceiverDistanceLaw &law,
                                 Conditioning conditioning) {
    if (!(law.mean > 0.0) || !std::isfinite(law.mean))
        throw ValidationError("receiver_law.mean", "must be > 0");
    if (law.kind == ReceiverDistanceLaw::Kind::fixed)
        return sinr_ccdf(threshold_db, params.with_link_distance(law.mean), conditioning);

    const double upper = law.kind == ReceiverDistanceLaw::Kind::uniform
                             ? 2.0 * law.mean
                             : 10.0 * law.mean * std::sqrt(2.0 / std::numbers::pi);
    auto f = [&](double r) {
        if (r <= 1e-9)
            return law.density(r);
        return law.density(r) * sinr_ccdf(threshold_db, params.with_link_distance(r), conditioning);
    };
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, upper, 4, 1e-7, &err);
    if (err > 1e-4)
        throw QuadratureError("receiver distance average did not converge");
    return clamp01(v);
}

double inr_cdf_raw(double threshold_db, const SystemParams &params, bool los_only) {
    const double t = positive_threshold(threshold_db);
    const int order = params.inr_shape();
    const double a = lemma1_constant(order);
    const double density = params.effective_density();
    double sum = 0.0;
    for (int n = 1; n <= order; ++n) {
        double zeta = 0.0;
        if (density > 0.0) {
            const double c = a * n * params.tx_power() * params.intercept() / (params.noise_power() * t);
            const auto terms = gain_terms(params.gains(), c);
            zeta = detail::radial_integral(terms, params.los_exponent(), params.fading_shape(), params.blockage_rate(),
                                           detail::LosWeight::los);
            if (!los_only)
                zeta += detail::radial_integral(terms, params.nlos_exponent(), params.fading_shape(),
                                                params.blockage_rate(), detail::LosWeight::nlos);
        }
        sum += (n % 2 == 1 ? 1.0 : -1.0) * binomial(order, n) * exp_term(density, zeta);
    }
    return sum;
}

double inr_cdf(double threshold_db, const SystemParams &params) { return clamp01(inr_cdf_raw(threshold_db, params)); }

double inr_cdf_los_only(double threshold_db, const SystemParams &params) {
    return clamp01(inr_cdf_raw(threshold_db, params, true));
}

DistributionCurve sinr_curve(const SystemParams &params, std::span<const double> thresholds_db,
                             Conditioning conditioning, std::string series) {
    DistributionCurve c;
    c.series = std::move(series);
    c.kind = CurveKind::ccdf;
    c.source = CurveSource::analytic;
    c.conditioning = std::string(to_string(conditioning));
    c.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
    for (double t : thresholds_db)
        c.values.push_back(sinr_ccdf(t, params, conditioning));
    return c;
}

DistributionCurve inr_curve(const SystemParams &params, std::span<const double> thresholds_db, bool los_only,
                            std::string series) {
    DistributionCurve c;
    c.series = std::move(series);
    c.kind = CurveKind::cdf;
    c.source = CurveSource::analytic;
    c.conditioning = los_only ? "los_interference" : "overall";
    c.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
    for (double t : thresholds_db)
        c.values.push_back(los_only ? inr_cdf_los_only(t, params) : inr_cdf(t, params));
    return c;
}

void write_curves_csv(std::ostream &out, std::span<const DistributionCurve> curves) {
    out << "series,threshold_db,value,std_error,source,conditioning\n";
    out << std::setprecision(10);
    for (const auto &c : curves) {
        const char *source = c.source == CurveSource::analytic ? "analytic" : "empirical";
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            out << c.series << ',' << c.thresholds_db[i] << ',' << c.values[i] << ',';
            if (i < c.std_errors.size())
                out << c.std_errors[i];
            out << ',' << source << ',' << c.conditioning << '\n';
        }
    }
}

std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
        throw ValidationError("grid", "need start <= stop and step > 0");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = start + static_cast<double>(i) * step;
    return g;
}

} // namespace mmwave
