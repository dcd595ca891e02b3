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

#include "mmwave/capacity.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace mmwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResidualLimit = 0.02;
constexpr double kInvPhi = 0.6180339887498949;

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("epsilon", "must lie in (0, 1)");
}

double max_theta(const CoverageBound &cb) {
    double m = 0.0;
    for (const auto &t : cb.terms())
        if (cb.branch_probability()[t.branch] > 0.0)
            m = std::max(m, std::abs(t.theta));
    return m;
}

double horner(const std::vector<double> &c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * x + *it;
    return v;
}

// Positive real roots of sum_k c[k] x^k, ascending, Newton-polished.
std::vector<double> positive_real_roots(std::vector<double> c) {
    double scale = 0.0;
    for (double v : c)
        scale = std::max(scale, std::abs(v));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale)
        c.pop_back();
    std::vector<double> out;
    if (c.size() < 2)
        return out;

    std::vector<double> dc(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k)
        dc[k - 1] = static_cast<double>(k) * c[k];

    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(c.size()));
    for (std::size_t k = 0; k < c.size(); ++k)
        coeffs[static_cast<Eigen::Index>(k)] = c[k];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeffs);
    for (const auto &z : solver.roots()) {
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real())))
            continue;
        double x = z.real();
        for (int it = 0; it < 4; ++it) {
            const double d = horner(dc, x);
            if (d == 0.0)
                break;
            x -= horner(c, x) / d;
        }
        if (x > 0.0 && std::isfinite(x))
            out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Largest lambda in [0, cap] with coverage(lambda) >= target for a
// nonincreasing coverage function.
template <class F> double bisect_density(F coverage, double target) {
    if (coverage(0.0) < target)
        return 0.0;
    double lo = 0.0;
    double hi = kOracleDensityCap;
    if (coverage(hi) >= target)
        return hi;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (coverage(mid) >= target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Shared root selection for the one-way quadratic and two-way quartic.
// `poly` holds coefficients in the scaled variable mu = lambda / unit.
template <class Full, class Arg>
CapacityResult finish(std::vector<double> poly, double unit, double target, Full full, Arg taylor_argument) {
    CapacityResult res;
    res.oracle_density = bisect_density(full, target);
    if (!(unit > 0.0) || !std::isfinite(unit))
        return res;
    for (double mu : positive_real_roots(std::move(poly)))
        res.roots.push_back(mu * unit);
    for (double lambda : res.roots) {
        if (taylor_argument(lambda) <= 1.0) {
            res.density = lambda;
            break;
        }
    }
    if (res.density == 0.0 && !res.roots.empty())
        res.density = res.roots.front();
    if (res.density > 0.0) {
        res.taylor_argument = taylor_argument(res.density);
        res.residual = std::abs(full(res.density) - target);
        res.valid = res.taylor_argument <= 1.0 && res.residual <= kResidualLimit;
    } else {
        // No usable root: report where the Taylor expansion would have had
        // to hold, so callers can tell a noise limit from a Taylor failure.
        res.residual = std::abs(full(0.0) - target);
        res.taylor_argument = taylor_argument(res.oracle_density);
    }
    return res;
}

template <class F> double golden_max(F f, double lo, double hi, int iterations) {
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iterations; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

} // namespace

CapacityResult transmission_capacity(double threshold_db, double epsilon, const SystemParams &params,
                                     Conditioning conditioning) {
    check_epsilon(epsilon);
    const CoverageBound cb(params, threshold_db, conditioning);
    const double target = 1.0 - epsilon;
    const auto c = cb.taylor();
    const double theta = max_theta(cb);
    const double unit = 1.0 / (kTwoPi * theta);
    std::vector<double> poly{c[0] - target, c[1] * unit, c[2] * unit * unit};
    return finish(
        std::move(poly), unit, target, [&](double l) { return cb.evaluate(l); },
        [&](double l) { return cb.taylor_argument(l); });
}

double capacity_oracle(double threshold_db, double epsilon, const SystemParams &params, Conditioning conditioning) {
    check_epsilon(epsilon);
    const CoverageBound cb(params, threshold_db, conditioning);
    return bisect_density([&](double l) { return cb.evaluate(l); }, 1.0 - epsilon);
}

AseResult area_spectral_efficiency(double density, double threshold_db, double epsilon) {
    check_epsilon(epsilon);
    if (!(density >= 0.0))
        throw ValidationError("density", "must be >= 0");
    return {density * std::log2(1.0 + db_to_linear(threshold_db)) * (1.0 - epsilon), density, threshold_db};
}

OptimalDensity optimal_density(double epsilon, const SystemParams &params, Conditioning conditioning, double t_lo_db,
                               double t_hi_db, double step_db) {
    check_epsilon(epsilon);
    auto ase_at = [&](double t_db) {
        const auto cap = transmission_capacity(t_db, epsilon, params, conditioning);
        return area_spectral_efficiency(cap.best(), t_db, epsilon);
    };
    const auto grid = linear_grid(t_lo_db, t_hi_db, step_db);
    std::size_t best = 0;
    std::vector<double> values;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values.push_back(ase_at(grid[i]).ase);
        if (values[i] > values[best])
            best = i;
    }
    if (values[best] <= 0.0)
        return {0.0, grid.front(), 0.0};
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    const double t = golden_max([&](double x) { return ase_at(x).ase; }, lo, hi, 30);
    auto refined = ase_at(t);
    if (refined.ase < values[best])
        refined = ase_at(grid[best]);
    return {refined.density, refined.threshold_db, refined.ase};
}

double rate_threshold_db(double rate_bps, double bandwidth_hz) {
    if (!(rate_bps > 0.0))
        throw ValidationError("rate_bps", "must be > 0");
    if (!(bandwidth_hz > 0.0))
        throw ValidationError("bandwidth_hz", "must be > 0");
    return linear_to_db(std::expm1(rate_bps / bandwidth_hz * std::numbers::ln2));
}

double rate_coverage(double rate_bps, double bandwidth_hz, const SystemParams &params, Conditioning conditioning) {
    const double t_db = rate_threshold_db(rate_bps, bandwidth_hz);
    if (!std::isfinite(t_db))
        return 0.0;
    return sinr_ccdf(t_db, params, conditioning);
}

void validate(const TwoWayConfig &cfg) {
    if (!(cfg.total_bandwidth > 0.0) || !std::isfinite(cfg.total_bandwidth))
        throw ValidationError("total_bandwidth", "must be > 0");
    if (!(cfg.forward_fraction > 0.0 && cfg.forward_fraction < 1.0))
        throw ValidationError("forward_fraction", "must lie in (0, 1)");
    if (!(cfg.forward_rate > 0.0))
        throw ValidationError("forward_rate", "must be > 0");
    if (!(cfg.reverse_rate > 0.0))
        throw ValidationError("reverse_rate", "must be > 0");
}

double TwoWayThresholds::forward_db() const { return linear_to_db(forward); }
double TwoWayThresholds::reverse_db() const { return linear_to_db(reverse); }

TwoWayThresholds twoway_thresholds(const TwoWayConfig &cfg) {
    validate(cfg);
    const double bf = cfg.forward_fraction * cfg.total_bandwidth;
    const double br = (1.0 - cfg.forward_fraction) * cfg.total_bandwidth;
    return {std::expm1(cfg.forward_rate / bf * std::numbers::ln2), std::expm1(cfg.reverse_rate / br * std::numbers::ln2)};
}

double twoway_coverage(double forward_db, double reverse_db, const SystemParams &params, Conditioning conditioning) {
    return sinr_ccdf(forward_db, params, conditioning) * sinr_ccdf(reverse_db, params, conditioning);
}

CapacityResult twoway_transmission_capacity(double forward_db, double reverse_db, double epsilon,
                                            const SystemParams &params, Conditioning conditioning) {
    check_epsilon(epsilon);
    const double target = 1.0 - epsilon;
    if (!std::isfinite(forward_db) || !std::isfinite(reverse_db)) {
        CapacityResult res;
        res.residual = target;
        return res;
    }
    const CoverageBound fwd(params, forward_db, conditioning);
    const CoverageBound rev(params, reverse_db, conditioning);
    const double unit = 1.0 / (kTwoPi * std::max(max_theta(fwd), max_theta(rev)));
    const auto a = fwd.taylor();
    const auto b = rev.taylor();
    const double u1 = unit;
    const double u2 = unit * unit;
    const double a0 = a[0], a1 = a[1] * u1, a2 = a[2] * u2;
    const double b0 = b[0], b1 = b[1] * u1, b2 = b[2] * u2;
    std::vector<double> poly{a0 * b0 - target, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0, a1 * b2 + a2 * b1,
                             a2 * b2};
    return finish(
        std::move(poly), unit, target, [&](double l) { return fwd.evaluate(l) * rev.evaluate(l); },
        [&](double l) { return std::max(fwd.taylor_argument(l), rev.taylor_argument(l)); });
}

double twoway_capacity_oracle(double forward_db, double reverse_db, double epsilon, const SystemParams &params,
                              Conditioning conditioning) {
    check_epsilon(epsilon);
    if (!std::isfinite(forward_db) || !std::isfinite(reverse_db))
        return 0.0;
    const CoverageBound fwd(params, forward_db, conditioning);
    const CoverageBound rev(params, reverse_db, conditioning);
    return bisect_density([&](double l) { return fwd.evaluate(l) * rev.evaluate(l); }, 1.0 - epsilon);
}

double twoway_ase(double density, const TwoWayConfig &cfg, double epsilon) {
    check_epsilon(epsilon);
    if (!(density >= 0.0))
        throw ValidationError("density", "must be >= 0");
    if (!(cfg.total_bandwidth > 0.0))
        throw ValidationError("total_bandwidth", "must be > 0");
    return density * (cfg.forward_rate + cfg.reverse_rate) / cfg.total_bandwidth * (1.0 - epsilon);
}

AllocationResult optimize_bandwidth_allocation(const TwoWayConfig &cfg, double epsilon, const SystemParams &params,
                                               Conditioning conditioning) {
    check_epsilon(epsilon);
    auto at = [&](double f) {
        TwoWayConfig c = cfg;
        c.forward_fraction = f;
        const auto t = twoway_thresholds(c);
        return twoway_transmission_capacity(t.forward_db(), t.reverse_db(), epsilon, params, conditioning);
    };
    AllocationResult out;
    std::size_t best = 0;
    for (int i = 1; i <= 19; ++i) {
        const double f = 0.05 * i;
        out.grid.push_back({f, at(f)});
        if (out.grid.back().capacity.best() > out.grid[best].capacity.best())
            best = out.grid.size() - 1;
    }
    out.fraction = out.grid[best].fraction;
    out.capacity = out.grid[best].capacity;
    if (out.capacity.best() <= 0.0)
        return out;
    const double lo = out.grid[best == 0 ? 0 : best - 1].fraction;
    const double hi = out.grid[std::min(best + 1, out.grid.size() - 1)].fraction;
    const double f = golden_max([&](double x) { return at(x).best(); }, lo, hi, 25);
    auto refined = at(f);
    if (refined.best() > out.capacity.best()) {
        out.fraction = f;
        out.capacity = std::move(refined);
    }
    return out;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows) {
    out << "series,sweep_var,value,lambda_eps,ase,valid,residual\n";
    out << std::setprecision(10);
    for (const auto &r : rows)
        out << r.series << ',' << r.sweep_var << ',' << r.value << ',' << r.lambda_eps << ',' << r.ase << ','
            << (r.valid ? "true" : "false") << ',' << r.residual << '\n';
}

} // namespace mmwave
