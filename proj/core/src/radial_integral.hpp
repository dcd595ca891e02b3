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

// Radial Laplace-exponent integrals shared by the SINR and INR bounds.

#include <span>
#include <stdexcept>
#include <string>

namespace mmwave::detail {

// One antenna-gain class: probability and the scale s in
// 1 - (1 + s x^-alpha / N)^-N.
struct GainTerm {
    double probability = 0.0;
    double scale = 0.0;
};

enum class LosWeight {
    los,  // e^{-beta x}
    nlos, // 1 - e^{-beta x}
};

// sum_i p_i * int_0^inf [1 - (1 + s_i x^-alpha / N)^-N] w(x) x dx.
//
// Integrated on geometric segments with adaptive Gauss-Kronrod; the
// polynomial tail beyond the last segment is added in closed form. Returns
// +inf when the integral diverges (alpha <= 2 with an unattenuated tail).
double radial_integral(std::span<const GainTerm> terms, double alpha, int shape, double beta, LosWeight weight);

} // namespace mmwave::detail
