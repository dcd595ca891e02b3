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

#include "mmwave/rng.hpp"

#include <random>

namespace mmwave {

std::uint64_t sample_poisson(double mean, Rng &rng) {
    if (!(mean > 0.0))
        return 0;
    if (mean < 30.0) {
        const double limit = std::exp(-mean);
        double prod = rng.uniform();
        std::uint64_t k = 0;
        while (prod > limit) {
            prod *= rng.uniform();
            ++k;
        }
        return k;
    }
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

double sample_normalized_gamma(int shape, Rng &rng) {
    // -log of a product of uniforms is a sum of exponentials; renormalize the
    // product every few factors so it cannot underflow.
    double sum = 0.0;
    double prod = 1.0;
    for (int i = 0; i < shape; ++i) {
        prod *= 1.0 - rng.uniform();
        if ((i & 7) == 7) {
            sum -= std::log(prod);
            prod = 1.0;
        }
    }
    sum -= std::log(prod);
    return sum / shape;
}

} // namespace mmwave
