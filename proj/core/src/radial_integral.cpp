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

#include "radial_integral.hpp"

#include "mmwave/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace mmwave::detail {

namespace {

constexpr double kRelTol = 1e-11;
constexpr double kAcceptTol = 1e-8;
constexpr double kAbsTol = 1e-12; // m^2; negligible in 2 pi lambda theta for any admissible density
constexpr double kSegmentAbsTol = 1e-15;
constexpr double kDecay = 60.0;     // beta x beyond which e^{-beta x} is dropped
constexpr double kKneeFactor = 64.0; // tail expansion starts this far past the knee
constexpr unsigned kMaxDepth = 20;

} // namespace

double radial_integral(std::span<const GainTerm> terms, double alpha, int shape, double beta, LosWeight weight) {
    double knee_lo = std::numeric_limits<double>::infinity();
    double knee_hi = 0.0;
    for (const auto &t : terms) {
        if (t.probability > 0.0 && t.scale > 0.0) {
            const double k = std::pow(t.scale, 1.0 / alpha);
            knee_lo = std::min(knee_lo, k);
            knee_hi = std::max(knee_hi, k);
        }
    }
    if (knee_hi == 0.0)
        return 0.0;
    if (weight == LosWeight::nlos && beta == 0.0)
        return 0.0;

    const bool attenuated_tail = weight == LosWeight::los && beta > 0.0;
    if (!attenuated_tail && alpha <= 2.0)
        return std::numeric_limits<double>::infinity();

    double x_stop = 0.0;
    if (attenuated_tail) {
        x_stop = kDecay / beta;
    } else {
        x_stop = kKneeFactor * knee_hi;
        if (beta > 0.0)
            x_stop = std::max(x_stop, kDecay / beta);
    }
    double x0 = knee_lo;
    if (beta > 0.0)
        x0 = std::min(x0, 1.0 / beta);
    x0 = std::min(x0, x_stop) / 16.0;

    const double n = static_cast<double>(shape);
    auto integrand = [&](double x) {
        if (x <= 0.0)
            return 0.0;
        const double xa = std::pow(x, -alpha);
        double sum = 0.0;
        for (const auto &t : terms)
            sum += t.probability * -std::expm1(-n * std::log1p(t.scale * xa / n));
        const double w = weight == LosWeight::los ? std::exp(-beta * x) : -std::expm1(-beta * x);
        return sum * w * x;
    };

    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    double error = 0.0;
    double a = 0.0;
    double b = x0;
    while (true) {
        // Tiny segments near the origin would otherwise be refined to full
        // depth chasing a relative tolerance on a negligible value.
        double err = 0.0;
        double l1 = 0.0;
        double value = gauss_kronrod<double, 31>::integrate(integrand, a, b, 0, 0.0, &err, &l1);
        const double tol = l1 > 0.0 ? std::max(kRelTol, kSegmentAbsTol / l1) : kRelTol;
        if (err > tol * l1)
            value = gauss_kronrod<double, 31>::integrate(integrand, a, b, kMaxDepth, tol, &err);
        total += value;
        error += err;
        if (b >= x_stop)
            break;
        a = b;
        b = std::min(2.0 * b, x_stop);
    }

    if (!attenuated_tail) {
        // 1 - (1+u/N)^-N = s x^-a - (N+1)/(2N) s^2 x^-2a + O(u^3), u = s x^-a
        const double x = x_stop;
        for (const auto &t : terms) {
            const double s = t.scale;
            total += t.probability * (s * std::pow(x, 2.0 - alpha) / (alpha - 2.0) -
                                      (n + 1.0) / (2.0 * n) * s * s * std::pow(x, 2.0 - 2.0 * alpha) /
                                          (2.0 * alpha - 2.0));
        }
    }

    if (!std::isfinite(total) || error > kAcceptTol * std::abs(total) + kAbsTol) {
        std::ostringstream msg;
        msg << "radial integral did not converge (value " << total << ", error estimate " << error << ")";
        throw QuadratureError(msg.str());
    }
    return total;
}

} // namespace mmwave::detail
