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

// mmwave: scenario runner for the analytic bounds and the simulator.
//
//   mmwave run <study.yaml> [--los-mode M] [--trials N] [--seed S] [--output DIR]
//   mmwave preset list
//   mmwave validate [--trials N] [--seed S] [--inject-fault F] [--report FILE]
//   mmwave dump-realization --output FILE [--preset P] [--link-distance R] [--seed S] [--radius M]
//
// Worker threads come from MMWAVE_THREADS (default: hardware concurrency).
// Exit status: 0 success, 1 validation failure, 2 bad input, 3 runtime error.

#include "mmwave/montecarlo.hpp"
#include "mmwave/study.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>

namespace {

std::ofstream open_output(const std::string &path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    return out;
}

enum Exit { kOk = 0, kValidationFailed = 1, kBadInput = 2, kRuntime = 3 };

struct RunArgs {
    std::string study;
    std::string los_mode;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    std::string output;
};

int cmd_run(const RunArgs &args) {
    auto study = mmwave::load_study(args.study);
    if (!args.los_mode.empty()) {
        study.montecarlo.los_modes = {mmwave::parse_los_mode(args.los_mode)};
        study.montecarlo.enabled = true;
    }
    if (args.trials) {
        study.montecarlo.trials = *args.trials;
        study.montecarlo.enabled = true;
    }
    if (args.seed)
        study.montecarlo.seed = *args.seed;
    if (!args.output.empty())
        study.output_dir = args.output;
    const auto summary = mmwave::run_study(study, mmwave::worker_threads());
    for (const auto &path : summary.artifacts)
        std::cout << path.string() << '\n';
    std::cerr << study.name << ": " << summary.artifacts.size() << " files in " << std::fixed << std::setprecision(1)
              << summary.wall_seconds << " s\n";
    return kOk;
}

int cmd_preset_list() {
    std::cout << std::left << std::setw(20) << "name" << std::setw(14) << "density/m2" << std::setw(8) << "N_h"
              << std::setw(12) << "beta/m" << std::setw(14) << "bandwidth" << "description\n";
    for (const auto &p : mmwave::presets()) {
        std::cout << std::left << std::setw(20) << p.name << std::setw(14) << p.params.raw_density << std::setw(8)
                  << p.params.fading_shape << std::setw(12) << p.params.blockage_rate << std::setw(14)
                  << (std::to_string(static_cast<long>(p.bandwidth_hz / 1e6)) + " MHz") << p.description << '\n';
    }
    return kOk;
}

struct ValidateArgs {
    mmwave::ValidationOptions options;
    std::string fault = "none";
    std::string report;
};

int cmd_validate(ValidateArgs args) {
    if (args.fault == "kappa_n")
        args.options.fault.negate_nlos_interference = true;
    else if (args.fault == "alternating_sign")
        args.options.fault.flip_alternating_sign = true;
    const auto report = mmwave::validate_suite(args.options, mmwave::worker_threads());
    mmwave::print_validation_report(std::cout, report);
    if (!args.report.empty()) {
        auto out = open_output(args.report);
        mmwave::write_validation_csv(out, report);
    }
    const bool ok = report.passed();
    std::cout << (ok ? "all checks passed" : "validation FAILED") << '\n';
    return ok ? kOk : kValidationFailed;
}

struct DumpArgs {
    std::string preset = "table1_sparse";
    double link_distance = 25.0;
    std::uint64_t seed = 1;
    double radius = 200.0;
    std::string los_mode = "geometric";
    std::string output;
};

int cmd_dump(const DumpArgs &args) {
    const auto &preset = mmwave::find_preset(args.preset);
    mmwave::TrialConfig cfg;
    cfg.params = mmwave::SystemParams(preset.params).with_link_distance(args.link_distance);
    cfg.buildings = preset.buildings;
    cfg.los_mode = mmwave::parse_los_mode(args.los_mode);
    cfg.trials = 1;
    cfg.root_seed = args.seed;
    mmwave::validate(cfg);
    mmwave::TrialRunner runner(cfg);
    const auto net = runner.sample(mmwave::derive_seed(args.seed, 0));
    std::vector<mmwave::Point2D> users{net.receiver, net.transmitter};
    std::vector<mmwave::Point2D> interferers;
    for (const auto &i : net.interferers)
        if (mmwave::distance(i.position, net.receiver) <= args.radius)
            interferers.push_back(i.position);
    const auto buildings =
        cfg.los_mode == mmwave::LosMode::geometric ? runner.buildings_within(args.radius) : std::vector<mmwave::Building>{};
    auto out = open_output(args.output);
    out << std::setprecision(10);
    mmwave::write_realization_csv(out, users, interferers, buildings);
    std::cerr << "wrote " << interferers.size() << " interferers and " << buildings.size() << " buildings to "
              << args.output << '\n';
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"mmWave ad hoc network bounds and Monte Carlo validation"};
    app.set_version_flag("--version", std::string(mmwave::library_version()));
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Run a study and write its CSVs and manifest");
    run->add_option("study", run_args.study, "Study YAML or a manifest of an earlier run")->required()->check(
        CLI::ExistingFile);
    run->add_option("--los-mode", run_args.los_mode, "Interferer LOS model for the simulator")
        ->check(CLI::IsMember({"geometric", "abstract"}));
    run->add_option("--trials", run_args.trials, "Override Monte Carlo trials (enables the simulator)");
    run->add_option("--seed", run_args.seed, "Override the root seed");
    run->add_option("--output", run_args.output, "Override the output directory");

    auto *preset = app.add_subcommand("preset", "Inspect parameter presets");
    preset->require_subcommand(1);
    auto *preset_list = preset->add_subcommand("list", "List the built-in presets");

    ValidateArgs val_args;
    auto *val = app.add_subcommand("validate", "Run the invariant battery; nonzero exit on any failure");
    val->add_option("--trials", val_args.options.trials, "Trials per bound-direction configuration")
        ->capture_default_str();
    val->add_option("--seed", val_args.options.seed, "Root seed")->capture_default_str();
    val->add_option("--los-segments", val_args.options.los_segments, "Segments per distance for the LOS law check")
        ->capture_default_str();
    val->add_option("--inject-fault", val_args.fault, "Mutation fixture for testing the battery itself")
        ->check(CLI::IsMember({"none", "kappa_n", "alternating_sign"}))
        ->capture_default_str();
    val->add_option("--report", val_args.report, "Write the check table as CSV");

    DumpArgs dump_args;
    auto *dump = app.add_subcommand("dump-realization", "Write one sampled network as CSV");
    dump->add_option("--preset", dump_args.preset, "Preset name")->capture_default_str();
    dump->add_option("--link-distance", dump_args.link_distance, "Link distance in m")->capture_default_str();
    dump->add_option("--seed", dump_args.seed, "Seed")->capture_default_str();
    dump->add_option("--radius", dump_args.radius, "Only dump objects within this radius, in m")
        ->capture_default_str();
    dump->add_option("--los-mode", dump_args.los_mode, "geometric or abstract")
        ->check(CLI::IsMember({"geometric", "abstract"}))
        ->capture_default_str();
    dump->add_option("--output,-o", dump_args.output, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*run)
            return cmd_run(run_args);
        if (*preset_list)
            return cmd_preset_list();
        if (*val)
            return cmd_validate(val_args);
        if (*dump)
            return cmd_dump(dump_args);
    } catch (const mmwave::ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kBadInput;
}
