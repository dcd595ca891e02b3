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

#include "mmwave/analytic.hpp"
#include "mmwave/capacity.hpp"
#include "mmwave/montecarlo.hpp"
#include "mmwave/params.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mmwave {

// Config problem with its location, e.g. "fig4a.yaml:12: grid.threshold_db: empty grid".
class ConfigError : public ValidationError {
public:
    ConfigError(std::string source, int line, std::string field, const std::string &message);

    int line() const noexcept { return line_; }
    const char *what() const noexcept override { return message_.c_str(); }

private:
    int line_;
    std::string message_;
};

enum class StudyKind { sinr_curves, inr_curves, txcap_sweep, ase_sweep, rate_coverage, twoway_allocation, mc_validation };

std::string_view to_string(StudyKind kind);
StudyKind parse_study_kind(std::string_view text);

struct MonteCarloSpec {
    bool enabled = false;
    std::int64_t trials = 20000;
    std::uint64_t seed = 1;
    std::vector<LosMode> los_modes{LosMode::geometric};
    double window_radius = SimWindow{}.radius;
    bool write_outcomes = false;
};

// Everything a study needs, fully resolved: a manifest written after a run
// loads back into an identical Study.
struct Study {
    std::string name;
    StudyKind kind = StudyKind::sinr_curves;
    std::string preset;
    ParamSpec params;
    BuildingLaw buildings;
    double bandwidth_hz = 0.0;

    // Grid. Which fields are required depends on the kind.
    std::vector<double> link_distances;
    std::vector<double> thresholds_db;
    std::vector<Conditioning> conditionings{Conditioning::overall};
    std::vector<double> beamwidths_deg;
    std::vector<double> epsilons;
    std::vector<double> rates_bps;
    std::string sweep_var; // txcap_sweep / ase_sweep
    std::vector<double> sweep_values;
    double threshold_db = 0.0; // fixed SINR threshold when sweeping something else
    TwoWayConfig twoway;
    bool include_los_only = false; // inr_curves: add the LOS-interference-only bound
    std::vector<double> los_distances; // mc_validation: LOS-law check distances
    std::int64_t segments = 100000;     // mc_validation: LOS segments per distance

    MonteCarloSpec montecarlo;
    std::filesystem::path output_dir;
};

// Parses YAML text; `source` names the document in error messages.
Study parse_study(std::string_view yaml, const std::string &source = "<study>");
Study load_study(const std::filesystem::path &path);

// Checks the grid against the kind. Throws ConfigError.
void validate(const Study &study);

// Full parameter and grid snapshot, loadable by parse_study.
void write_study_yaml(std::ostream &out, const Study &study);

struct RunSummary {
    std::vector<std::filesystem::path> artifacts; // CSVs followed by the manifest
    double wall_seconds = 0.0;
};

// Runs one study and writes its CSVs plus `<name>.manifest.yaml` into the
// output directory. Files appear only on success (written to temporaries
// and renamed); a failed run leaves nothing behind.
RunSummary run_study(const Study &study, int threads = 0);

// ---- validation battery -----------------------------------------------

struct ValidationOptions {
    std::uint64_t seed = 20160601;
    std::int64_t trials = 10000; // per bound-direction configuration
    std::int64_t los_segments = 20000;
    BoundFault fault;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0; // the statistic compared against `limit`
    double limit = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool passed() const noexcept;
};

ValidationReport validate_suite(const ValidationOptions &options = {}, int threads = 0);

// check,passed,value,limit,detail
void write_validation_csv(std::ostream &out, const ValidationReport &report);

// One line per check: "PASS name value (limit) detail".
void print_validation_report(std::ostream &out, const ValidationReport &report);

std::string_view library_version() noexcept;

} // namespace mmwave
