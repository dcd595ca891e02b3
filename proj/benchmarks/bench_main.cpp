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
#include "mmwave/capacity.hpp"
#include "mmwave/geometry.hpp"
#include "mmwave/montecarlo.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace mmwave;

const SystemParams &sparse() {
    static const SystemParams p(find_preset("table1_sparse").params);
    return p;
}

// Quadratures dominate: one bound = 2 branches x N_h terms x 2 integrals.
void BM_CoverageBoundBuild(benchmark::State &state) {
    double t = -20.0;
    for (auto _ : state) {
        CoverageBound bound(sparse(), t, Conditioning::overall);
        benchmark::DoNotOptimize(bound.evaluate(sparse().effective_density()));
        t = t >= 40.0 ? -20.0 : t + 2.5;
    }
}
BENCHMARK(BM_CoverageBoundBuild)->Unit(benchmark::kMicrosecond);

void BM_InrCdf(benchmark::State &state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(inr_cdf(0.0, sparse()));
}
BENCHMARK(BM_InrCdf)->Unit(benchmark::kMicrosecond);

void BM_TransmissionCapacity(benchmark::State &state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(transmission_capacity(10.0, 0.1, sparse(), Conditioning::los_only));
}
BENCHMARK(BM_TransmissionCapacity)->Unit(benchmark::kMillisecond);

void BM_SegmentIntersects(benchmark::State &state) {
    const auto b = make_building({10.0, 3.0}, 15.0, 15.0, 0.4);
    Rng rng(7);
    std::vector<Point2D> ends(1024);
    for (auto &p : ends)
        p = {rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0)};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(segment_intersects(b, ends[i & 1023], ends[(i + 1) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_SegmentIntersects);

// One LOS query from the origin through the lazily generated field.
void BM_RadialFieldLos(benchmark::State &state) {
    const auto &law = find_preset("table1_dense").buildings;
    RadialBuildingField field(law, 1000.0, 3);
    Rng rng(11);
    const double d = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const double phi = rng.uniform(0.0, 6.283185307179586);
        benchmark::DoNotOptimize(field.is_outdoor_los({d * std::cos(phi), d * std::sin(phi)}));
    }
}
BENCHMARK(BM_RadialFieldLos)->Arg(25)->Arg(100)->Arg(400);

void BM_Trial(benchmark::State &state) {
    const auto &preset = find_preset(state.range(0) == 0 ? "table1_sparse" : "table1_dense");
    TrialConfig cfg;
    cfg.params = SystemParams(preset.params);
    cfg.buildings = preset.buildings;
    cfg.trials = 1 << 30;
    TrialRunner runner(cfg);
    std::int64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(runner.run(i++));
    state.SetLabel(preset.name);
}
BENCHMARK(BM_Trial)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
