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
#include "mmwave/study.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace mmwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

// value <= limit passes.
CheckResult at_most(std::string name, double value, double limit, std::string detail = {}) {
    return {std::move(name), value <= limit, value, limit, std::move(detail)};
}

// value >= limit passes.
CheckResult at_least(std::string name, double value, double limit, std::string detail = {}) {
    return {std::move(name), value >= limit, value, limit, std::move(detail)};
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return out;
}

void lemma1_checks(ValidationReport &report) {
    const auto zs = log_grid(1e-3, 1e2, 50);
    double worst_margin = kInf; // k >= 2, relative to the gamma CDF
    double worst_equality = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double a = lemma1_constant(k);
        for (double z : zs) {
            const double lower = std::pow(-std::expm1(-a * z), k);
            const double cdf = boost::math::gamma_p(static_cast<double>(k), k * z);
            if (k == 1)
                worst_equality = std::max(worst_equality, std::abs(cdf - lower));
            else if (cdf < 1.0) // at z = 1e2 both sides round to 1 for large k
                worst_margin = std::min(worst_margin, (cdf - lower) / cdf);
        }
    }
    report.checks.push_back(
        {"lemma1/strict_margin", worst_margin > 0.0, worst_margin, 0.0, "min relative margin over k=2..10, 50 z"});
    report.checks.push_back(at_most("lemma1/equality_k1", worst_equality, 1e-12, "max |difference| at k=1"));
}

std::vector<double> bound_thresholds() {
    std::vector<double> t(15);
    for (int i = 0; i < 15; ++i)
        t[i] = -20.0 + 60.0 * i / 14.0;
    return t;
}

void bound_direction_checks(ValidationReport &report, const ValidationOptions &opt, int threads) {
    const auto thresholds = bound_thresholds();
    for (const char *name : {"table1_sparse", "table1_dense"}) {
        const auto &preset = find_preset(name);
        for (double r : {25.0, 50.0, 75.0}) {
            TrialConfig cfg;
            cfg.params = SystemParams(preset.params).with_link_distance(r);
            cfg.buildings = preset.buildings;
            cfg.trials = opt.trials;
            cfg.root_seed = derive_seed(opt.seed, static_cast<std::uint64_t>(r) + (std::string_view(name) == "table1_dense" ? 1000 : 0));
            const auto outcomes = simulate(cfg, threads);
            const auto emp = empirical_curve(outcomes, thresholds, Statistic::sinr_ccdf, "mc", "overall");
            double worst_z = kInf, gap = 0.0;
            for (std::size_t i = 0; i < thresholds.size(); ++i) {
                const CoverageBound bound(cfg.params, thresholds[i], Conditioning::overall, opt.fault);
                const double a = bound.evaluate(cfg.params.effective_density());
                const double se = std::max(emp.std_errors[i], 1e-12);
                worst_z = std::min(worst_z, (a - emp.values[i]) / se);
                gap += std::abs(a - emp.values[i]);
            }
            gap /= static_cast<double>(thresholds.size());
            const std::string tag = std::string(name) + "/r" + fmt(r);
            report.checks.push_back(at_least("bound_direction/" + tag, worst_z, -3.0,
                                             "min (analytic - empirical)/SE over 15 thresholds, " +
                                                 std::to_string(opt.trials) + " trials"));
            report.checks.push_back(at_most("bound_gap/" + tag, gap, 0.04, "mean |analytic - empirical|"));
        }
    }
}

void monotonicity_checks(ValidationReport &report) {
    const auto sparse = SystemParams(find_preset("table1_sparse").params);
    const auto ts = linear_grid(-20.0, 40.0, 2.5);

    double worst = 0.0; // largest increase where a decrease is required
    for (auto c : {Conditioning::overall, Conditioning::los_only, Conditioning::nlos_only}) {
        double prev = kInf;
        for (double t : ts) {
            const double v = sinr_ccdf(t, sparse, c);
            worst = std::max(worst, v - prev);
            prev = v;
        }
    }
    report.checks.push_back(at_most("monotone/sinr_ccdf_threshold", worst, 1e-12, "max increase along T"));

    worst = 0.0;
    for (double t : {-10.0, 0.0, 10.0, 20.0}) {
        double prev = kInf;
        for (double lambda : log_grid(1e-6, 1e-2, 25)) {
            const double v = sinr_ccdf(t, sparse.with_effective_density(lambda));
            worst = std::max(worst, v - prev);
            prev = v;
        }
    }
    report.checks.push_back(at_most("monotone/sinr_ccdf_density", worst, 1e-12, "max increase along lambda"));

    worst = 0.0;
    for (double t : {-10.0, 0.0, 10.0, 20.0}) {
        double prev = kInf;
        for (double r : linear_grid(5.0, 200.0, 5.0)) {
            const double v = sinr_ccdf(t, sparse.with_link_distance(r));
            worst = std::max(worst, v - prev);
            prev = v;
        }
    }
    report.checks.push_back(at_most("monotone/sinr_ccdf_distance", worst, 1e-12, "max increase along r"));

    worst = 0.0;
    for (const char *name : {"table1_sparse", "table1_dense"}) {
        const auto p = SystemParams(find_preset(name).params);
        double prev = -kInf;
        for (double t : linear_grid(-20.0, 40.0, 2.5)) {
            const double v = inr_cdf(t, p);
            worst = std::max(worst, prev - v);
            prev = v;
        }
    }
    report.checks.push_back(at_most("monotone/inr_cdf_threshold", worst, 1e-12, "max decrease along T"));

    worst = 0.0;
    for (double t : {-10.0, 0.0, 10.0}) {
        double prev = -kInf;
        for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5}) {
            const double v = transmission_capacity(t, eps, sparse).best();
            worst = std::max(worst, (prev - v) / std::max(prev, 1e-300));
            prev = v;
        }
    }
    report.checks.push_back(at_most("monotone/capacity_epsilon", worst, 1e-9, "max relative decrease along eps"));
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void oracle_checks(ValidationReport &report) {
    double worst = 0.0, worst_valid = 0.0;
    int compared = 0, flagged = 0;
    for (const char *name : {"table1_sparse", "table1_dense"})
        for (double r : {25.0, 50.0, 75.0})
            for (auto c : {Conditioning::overall, Conditioning::los_only}) {
                const auto p = SystemParams(find_preset(name).params).with_link_distance(r);
                for (double t : {-10.0, 0.0, 10.0, 20.0})
                    for (double eps : {0.05, 0.1, 0.2}) {
                        const auto cap = transmission_capacity(t, eps, p, c);
                        if (!cap.valid)
                            ++flagged;
                        if (cap.oracle_density <= 0.0)
                            continue;
                        const double dev = relative(cap.density, cap.oracle_density);
                        if (cap.valid)
                            worst_valid = std::max(worst_valid, dev);
                        if (cap.taylor_argument <= 0.3) {
                            worst = std::max(worst, dev);
                            ++compared;
                        }
                    }
            }
    report.checks.push_back(at_most("oracle/quadratic_taylor_regime", worst, 0.05,
                                    std::to_string(compared) + " cases with Taylor argument <= 0.3"));
    report.checks.push_back(at_most("oracle/quadratic_valid_flag", worst_valid, 0.05,
                                    "max deviation among results flagged valid; " + std::to_string(flagged) +
                                        " flagged invalid"));

    worst = 0.0;
    worst_valid = 0.0;
    compared = 0;
    double order_violation = 0.0;
    const auto sparse = SystemParams(find_preset("table1_sparse").params);
    for (double eps : {0.05, 0.1, 0.2})
        for (double f : {0.3, 0.5, 0.7, 0.9}) {
            TwoWayConfig cfg;
            cfg.forward_fraction = f;
            const auto th = twoway_thresholds(cfg);
            const auto cap = twoway_transmission_capacity(th.forward_db(), th.reverse_db(), eps, sparse);
            const double one_f = capacity_oracle(th.forward_db(), eps, sparse, Conditioning::los_only);
            const double one_r = capacity_oracle(th.reverse_db(), eps, sparse, Conditioning::los_only);
            order_violation =
                std::max(order_violation, relative(std::max(cap.oracle_density, std::min(one_f, one_r)),
                                                   std::min(one_f, one_r)));
            if (cap.oracle_density <= 0.0)
                continue;
            const double dev = relative(cap.density, cap.oracle_density);
            if (cap.valid)
                worst_valid = std::max(worst_valid, dev);
            if (cap.taylor_argument <= 0.3) {
                worst = std::max(worst, dev);
                ++compared;
            }
        }
    report.checks.push_back(at_most("oracle/quartic_taylor_regime", worst, 0.05,
                                    std::to_string(compared) + " cases with Taylor argument <= 0.3"));
    report.checks.push_back(at_most("oracle/quartic_valid_flag", worst_valid, 0.05));
    report.checks.push_back(
        at_most("oracle/twoway_below_oneway", order_violation, 1e-9, "two-way capacity <= min(forward, reverse)"));
}

// Delta-approximation order: |F(2k) - F(k)| must shrink as k doubles.
void inr_convergence_check(ValidationReport &report) {
    const auto base = SystemParams(find_preset("table1_sparse").params);
    const auto ts = linear_grid(-10.0, 30.0, 5.0);
    std::vector<double> deltas;
    std::vector<double> prev;
    for (int k : {5, 10, 20, kMaxShape}) {
        std::vector<double> cur;
        for (double t : ts)
            cur.push_back(inr_cdf(t, base.with_inr_shape(k)));
        if (!prev.empty()) {
            double d = 0.0;
            for (std::size_t i = 0; i < cur.size(); ++i)
                d = std::max(d, std::abs(cur[i] - prev[i]));
            deltas.push_back(d);
        }
        prev = std::move(cur);
    }
    double growth = -kInf;
    std::string detail = "max delta per doubling from N_C=5:";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        detail += " " + fmt(deltas[i]);
        if (i > 0)
            growth = std::max(growth, deltas[i] - deltas[i - 1]);
    }
    report.checks.push_back({"convergence/inr_shape", growth < 0.0, growth, 0.0, detail});
}

void los_law_check(ValidationReport &report, const ValidationOptions &opt) {
    const auto &law = find_preset("table1_sparse").buildings;
    const std::vector<double> distances{10.0, 25.0, 50.0, 100.0, 200.0};
    const auto rep = empirical_los_validation(law, distances, opt.los_segments, opt.seed);
    report.checks.push_back(at_most("geometry/los_law", rep.max_deviation, 0.02,
                                    "max |empirical - exp(-beta d)|, " + std::to_string(opt.los_segments) +
                                        " segments per distance"));
}

void determinism_check(ValidationReport &report, const ValidationOptions &opt) {
    TrialConfig cfg;
    const auto &preset = find_preset("table1_dense");
    cfg.params = SystemParams(preset.params);
    cfg.buildings = preset.buildings;
    cfg.trials = 300;
    cfg.root_seed = opt.seed;
    const auto a = simulate(cfg, 1);
    const auto b = simulate(cfg, 3);
    std::int64_t mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].sinr != b[i].sinr || a[i].inr != b[i].inr || a[i].interferer_count != b[i].interferer_count)
            ++mismatches;
    report.checks.push_back(at_most("determinism/thread_count", static_cast<double>(mismatches), 0.0,
                                    "outcomes differing between 1 and 3 workers"));
}

} // namespace

bool ValidationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

ValidationReport validate_suite(const ValidationOptions &options, int threads) {
    if (options.trials < 100)
        throw ValidationError("trials", "need at least 100 trials");
    if (options.los_segments < 100)
        throw ValidationError("los_segments", "need at least 100 segments");
    ValidationReport report;
    lemma1_checks(report);
    bound_direction_checks(report, options, threads);
    monotonicity_checks(report);
    oracle_checks(report);
    inr_convergence_check(report);
    los_law_check(report, options);
    determinism_check(report, options);
    return report;
}

void write_validation_csv(std::ostream &out, const ValidationReport &report) {
    out << "check,passed,value,limit,detail\n" << std::setprecision(10);
    for (const auto &c : report.checks)
        out << c.name << ',' << (c.passed ? "true" : "false") << ',' << c.value << ',' << c.limit << ",\"" << c.detail
            << "\"\n";
}

void print_validation_report(std::ostream &out, const ValidationReport &report) {
    for (const auto &c : report.checks)
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ' ' << fmt(c.value) << " (limit " << fmt(c.limit) << ")"
            << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
}

} // namespace mmwave
