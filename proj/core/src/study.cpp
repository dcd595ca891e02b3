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

#include "mmwave/study.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#ifndef MMWAVE_VERSION
#define MMWAVE_VERSION "0.0.0"
#endif

namespace mmwave {

namespace {

std::string located(const std::string &source, int line, const std::string &field, const std::string &message) {
    std::ostringstream os;
    os << source;
    if (line > 0)
        os << ':' << line;
    os << ": " << field << ": " << message;
    return os.str();
}

// ValidationError::what() is "field: message"; keep the message part.
std::string bare(const ValidationError &e) {
    const std::string what = e.what();
    const std::string prefix = e.field() + ": ";
    return what.starts_with(prefix) ? what.substr(prefix.size()) : what;
}

} // namespace

ConfigError::ConfigError(std::string source, int line, std::string field, const std::string &message)
    : ValidationError(field, message), line_(line), message_(located(source, line, field, message)) {}

std::string_view library_version() noexcept { return MMWAVE_VERSION; }

namespace {

constexpr std::array<std::pair<StudyKind, std::string_view>, 7> kKindNames{{
    {StudyKind::sinr_curves, "sinr_curves"},
    {StudyKind::inr_curves, "inr_curves"},
    {StudyKind::txcap_sweep, "txcap_sweep"},
    {StudyKind::ase_sweep, "ase_sweep"},
    {StudyKind::rate_coverage, "rate_coverage"},
    {StudyKind::twoway_allocation, "twoway_allocation"},
    {StudyKind::mc_validation, "mc_validation"},
}};

const std::set<std::string, std::less<>> kSweepVars{"threshold_db", "link_distance_m", "beamwidth_deg",
                                                    "blockage_rate_per_m"};

} // namespace

std::string_view to_string(StudyKind kind) {
    for (const auto &[k, name] : kKindNames)
        if (k == kind)
            return name;
    return "unknown";
}

StudyKind parse_study_kind(std::string_view text) {
    for (const auto &[k, name] : kKindNames)
        if (name == text)
            return k;
    throw ValidationError("kind", "unknown study kind '" + std::string(text) + "'");
}

// ---- parsing ---------------------------------------------------------------

namespace {

// Field name -> 1-based line, for errors raised after parsing.
using LineMap = std::map<std::string, int, std::less<>>;

class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node &node, const std::string &field, const std::string &message) const {
        throw ConfigError(source_, line_of(node), field, message);
    }

    static int line_of(const YAML::Node &node) {
        const auto mark = node.Mark();
        return mark.is_null() ? 0 : mark.line + 1;
    }

    void remember(const std::string &field, const YAML::Node &node) { lines[field] = line_of(node); }

    void require_map(const YAML::Node &node, const std::string &field) const {
        if (!node.IsMap())
            fail(node, field, "expected a mapping");
    }

    // Rejects keys outside `allowed`; typos must not pass silently.
    void check_keys(const YAML::Node &node, const std::string &prefix, std::initializer_list<std::string_view> allowed) const {
        for (auto it = node.begin(); it != node.end(); ++it) {
            const auto key = it->first.as<std::string>();
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                fail(it->first, prefix + key, "unknown key");
        }
    }

    double number(const YAML::Node &node, const std::string &field) {
        remember(field, node);
        if (!node.IsScalar())
            fail(node, field, "expected a number");
        const auto text = node.Scalar();
        double value = 0.0;
        const auto *end = text.data() + text.size();
        const auto res = std::from_chars(text.data(), end, value);
        if (res.ec != std::errc{} || res.ptr != end) {
            // from_chars rejects a leading '+' and YAML infinities.
            try {
                value = node.as<double>();
            } catch (const YAML::Exception &) {
                fail(node, field, "expected a number, got '" + text + "'");
            }
        }
        return value;
    }

    std::int64_t integer(const YAML::Node &node, const std::string &field) {
        const double v = number(node, field);
        if (!(std::abs(v) < 9.0e15) || v != std::floor(v))
            fail(node, field, "expected an integer");
        return static_cast<std::int64_t>(v);
    }

    std::string text(const YAML::Node &node, const std::string &field) {
        remember(field, node);
        if (!node.IsScalar())
            fail(node, field, "expected a string");
        return node.Scalar();
    }

    bool boolean(const YAML::Node &node, const std::string &field) {
        remember(field, node);
        try {
            return node.as<bool>();
        } catch (const YAML::Exception &) {
            fail(node, field, "expected true or false");
        }
    }

    // A scalar, a list, or {start, stop, step}.
    std::vector<double> grid(const YAML::Node &node, const std::string &field) {
        remember(field, node);
        std::vector<double> out;
        if (node.IsScalar()) {
            out.push_back(number(node, field));
        } else if (node.IsSequence()) {
            for (std::size_t i = 0; i < node.size(); ++i)
                out.push_back(number(node[i], field + "[" + std::to_string(i) + "]"));
        } else if (node.IsMap()) {
            check_keys(node, field + ".", {"start", "stop", "step"});
            for (const char *k : {"start", "stop", "step"})
                if (!node[k])
                    fail(node, field, std::string("range needs '") + k + "'");
            const double start = number(node["start"], field + ".start");
            const double stop = number(node["stop"], field + ".stop");
            const double step = number(node["step"], field + ".step");
            try {
                out = linear_grid(start, stop, step);
            } catch (const ValidationError &e) {
                fail(node, field, bare(e));
            }
        } else {
            fail(node, field, "expected a number, a list or a range");
        }
        remember(field, node);
        return out;
    }

    template <class T, class F>
    std::vector<T> list_of(const YAML::Node &node, const std::string &field, F parse_one) {
        remember(field, node);
        std::vector<T> out;
        auto one = [&](const YAML::Node &n) {
            try {
                out.push_back(parse_one(text(n, field)));
            } catch (const ConfigError &) {
                throw;
            } catch (const ValidationError &e) {
                fail(n, field, bare(e));
            }
        };
        if (node.IsSequence()) {
            for (const auto &n : node)
                one(n);
        } else {
            one(node);
        }
        remember(field, node);
        return out;
    }

    const std::string &source() const noexcept { return source_; }

    LineMap lines;

private:
    std::string source_;
};

MarkLaw parse_mark(Parser &p, const YAML::Node &node, const std::string &field) {
    const auto values = p.grid(node, field);
    if (node.IsSequence() && values.size() == 2)
        return MarkLaw::uniform_between(values[0], values[1]);
    if (values.size() != 1 || node.IsMap())
        p.fail(node, field, "expected a length or [low, high]");
    return MarkLaw::fixed_at(values[0]);
}

void parse_params(Parser &p, const YAML::Node &node, Study &s) {
    p.require_map(node, "params");
    p.check_keys(node, "params.",
                 {"raw_density_per_m2", "aloha_prob", "outdoor_prob", "link_distance_m", "tx_power_dbw", "tx_power_w",
                  "intercept_db", "noise_dbw", "los_exponent", "nlos_exponent", "fading_shape", "blockage_rate_per_m",
                  "beamwidth_deg", "beamwidth_rad", "mainlobe_gain_db", "mainlobe_gain", "sidelobe_gain_db",
                  "sidelobe_gain", "inr_shape", "bandwidth_hz", "buildings"});
    auto &ps = s.params;
    auto num = [&](const char *key, double &dst) {
        if (node[key])
            dst = p.number(node[key], std::string("params.") + key);
    };
    num("raw_density_per_m2", ps.raw_density);
    num("aloha_prob", ps.aloha_prob);
    num("outdoor_prob", ps.outdoor_prob);
    num("link_distance_m", ps.link_distance);
    num("tx_power_w", ps.tx_power);
    if (node["tx_power_dbw"])
        ps.tx_power = db_to_linear(p.number(node["tx_power_dbw"], "params.tx_power_dbw"));
    num("intercept_db", ps.intercept_db);
    num("noise_dbw", ps.noise_db);
    num("los_exponent", ps.los_exponent);
    num("nlos_exponent", ps.nlos_exponent);
    if (node["fading_shape"])
        ps.fading_shape = static_cast<int>(p.integer(node["fading_shape"], "params.fading_shape"));
    if (node["inr_shape"])
        ps.inr_shape = static_cast<int>(p.integer(node["inr_shape"], "params.inr_shape"));
    num("beamwidth_rad", ps.antenna.beamwidth);
    if (node["beamwidth_deg"])
        ps.antenna.beamwidth = p.number(node["beamwidth_deg"], "params.beamwidth_deg") * std::numbers::pi / 180.0;
    num("mainlobe_gain", ps.antenna.mainlobe_gain);
    if (node["mainlobe_gain_db"])
        ps.antenna.mainlobe_gain = db_to_linear(p.number(node["mainlobe_gain_db"], "params.mainlobe_gain_db"));
    num("sidelobe_gain", ps.antenna.sidelobe_gain);
    if (node["sidelobe_gain_db"])
        ps.antenna.sidelobe_gain = db_to_linear(p.number(node["sidelobe_gain_db"], "params.sidelobe_gain_db"));
    num("bandwidth_hz", s.bandwidth_hz);

    bool beta_given = static_cast<bool>(node["blockage_rate_per_m"]);
    num("blockage_rate_per_m", ps.blockage_rate);
    if (const auto b = node["buildings"]) {
        p.require_map(b, "params.buildings");
        p.check_keys(b, "params.buildings.", {"density_per_m2", "width_m", "length_m"});
        if (b["density_per_m2"])
            s.buildings.density = p.number(b["density_per_m2"], "params.buildings.density_per_m2");
        if (b["width_m"])
            s.buildings.width = parse_mark(p, b["width_m"], "params.buildings.width_m");
        if (b["length_m"])
            s.buildings.length = parse_mark(p, b["length_m"], "params.buildings.length_m");
        // The analytic LOS law follows the field unless pinned explicitly.
        if (!beta_given) {
            try {
                validate(s.buildings.width, "params.buildings.width_m");
                validate(s.buildings.length, "params.buildings.length_m");
                ps.blockage_rate = s.buildings.blockage_rate();
            } catch (const ValidationError &e) {
                p.fail(b, e.field(), bare(e));
            }
        }
    }
}

void parse_grid(Parser &p, const YAML::Node &node, Study &s) {
    p.require_map(node, "grid");
    p.check_keys(node, "grid.",
                 {"link_distance_m", "threshold_db", "conditioning", "beamwidth_deg", "epsilon", "rate_bps", "sweep_var",
                  "sweep_values", "sinr_threshold_db", "include_los_only", "los_distance_m", "segments"});
    if (node["link_distance_m"])
        s.link_distances = p.grid(node["link_distance_m"], "grid.link_distance_m");
    if (node["threshold_db"])
        s.thresholds_db = p.grid(node["threshold_db"], "grid.threshold_db");
    if (node["conditioning"])
        s.conditionings = p.list_of<Conditioning>(node["conditioning"], "grid.conditioning",
                                                  [](const std::string &t) { return parse_conditioning(t); });
    if (node["beamwidth_deg"])
        s.beamwidths_deg = p.grid(node["beamwidth_deg"], "grid.beamwidth_deg");
    if (node["epsilon"])
        s.epsilons = p.grid(node["epsilon"], "grid.epsilon");
    if (node["rate_bps"])
        s.rates_bps = p.grid(node["rate_bps"], "grid.rate_bps");
    if (node["sweep_var"])
        s.sweep_var = p.text(node["sweep_var"], "grid.sweep_var");
    if (node["sweep_values"])
        s.sweep_values = p.grid(node["sweep_values"], "grid.sweep_values");
    if (node["sinr_threshold_db"])
        s.threshold_db = p.number(node["sinr_threshold_db"], "grid.sinr_threshold_db");
    if (node["include_los_only"])
        s.include_los_only = p.boolean(node["include_los_only"], "grid.include_los_only");
    if (node["los_distance_m"])
        s.los_distances = p.grid(node["los_distance_m"], "grid.los_distance_m");
    if (node["segments"])
        s.segments = p.integer(node["segments"], "grid.segments");
}

void parse_twoway(Parser &p, const YAML::Node &node, Study &s) {
    p.require_map(node, "twoway");
    p.check_keys(node, "twoway.", {"total_bandwidth_hz", "forward_rate_bps", "reverse_rate_bps"});
    if (node["total_bandwidth_hz"])
        s.twoway.total_bandwidth = p.number(node["total_bandwidth_hz"], "twoway.total_bandwidth_hz");
    if (node["forward_rate_bps"])
        s.twoway.forward_rate = p.number(node["forward_rate_bps"], "twoway.forward_rate_bps");
    if (node["reverse_rate_bps"])
        s.twoway.reverse_rate = p.number(node["reverse_rate_bps"], "twoway.reverse_rate_bps");
}

void parse_montecarlo(Parser &p, const YAML::Node &node, Study &s) {
    p.require_map(node, "montecarlo");
    p.check_keys(node, "montecarlo.", {"enabled", "trials", "seed", "los_mode", "window_radius_m", "write_outcomes"});
    auto &mc = s.montecarlo;
    mc.enabled = true;
    if (node["enabled"])
        mc.enabled = p.boolean(node["enabled"], "montecarlo.enabled");
    if (node["trials"])
        mc.trials = p.integer(node["trials"], "montecarlo.trials");
    if (node["seed"]) {
        const auto seed = p.integer(node["seed"], "montecarlo.seed");
        if (seed < 0)
            p.fail(node["seed"], "montecarlo.seed", "must be >= 0");
        mc.seed = static_cast<std::uint64_t>(seed);
    }
    if (node["los_mode"])
        mc.los_modes = p.list_of<LosMode>(node["los_mode"], "montecarlo.los_mode",
                                          [](const std::string &t) { return parse_los_mode(t); });
    if (node["window_radius_m"])
        mc.window_radius = p.number(node["window_radius_m"], "montecarlo.window_radius_m");
    if (node["write_outcomes"])
        mc.write_outcomes = p.boolean(node["write_outcomes"], "montecarlo.write_outcomes");
}

// Core field names -> config keys.
std::string config_field(const std::string &core) {
    static const std::map<std::string, std::string, std::less<>> names{
        {"raw_density", "params.raw_density_per_m2"},
        {"aloha_prob", "params.aloha_prob"},
        {"outdoor_prob", "params.outdoor_prob"},
        {"link_distance", "params.link_distance_m"},
        {"tx_power", "params.tx_power_dbw"},
        {"intercept_db", "params.intercept_db"},
        {"noise_db", "params.noise_dbw"},
        {"los_exponent", "params.los_exponent"},
        {"nlos_exponent", "params.nlos_exponent"},
        {"fading_shape", "params.fading_shape"},
        {"blockage_rate", "params.blockage_rate_per_m"},
        {"inr_shape", "params.inr_shape"},
        {"antenna.beamwidth", "params.beamwidth_deg"},
        {"antenna.mainlobe_gain", "params.mainlobe_gain_db"},
        {"antenna.sidelobe_gain", "params.sidelobe_gain_db"},
        {"buildings.density", "params.buildings.density_per_m2"},
        {"buildings.width", "params.buildings.width_m"},
        {"buildings.length", "params.buildings.length_m"},
        {"window.radius", "montecarlo.window_radius_m"},
        {"trials", "montecarlo.trials"},
        {"total_bandwidth", "twoway.total_bandwidth_hz"},
        {"forward_rate", "twoway.forward_rate_bps"},
        {"reverse_rate", "twoway.reverse_rate_bps"},
    };
    const auto it = names.find(core);
    return it == names.end() ? core : it->second;
}

int line(const LineMap &lines, std::string_view field) {
    // Errors on "grid.x[3]" point at the line of "grid.x[3]" or of "grid.x".
    for (std::string key(field); !key.empty();) {
        if (const auto it = lines.find(key); it != lines.end())
            return it->second;
        const auto cut = key.find_last_of(".[");
        if (cut == std::string::npos)
            break;
        key.resize(cut);
    }
    return 0;
}

void check_study(const Study &s, const std::string &source, const LineMap &lines) {
    auto fail = [&](const std::string &field, const std::string &message) {
        throw ConfigError(source, line(lines, field), field, message);
    };
    auto nonempty = [&](const std::vector<double> &v, const std::string &field) {
        if (v.empty())
            fail(field, "empty grid");
        for (double x : v)
            if (!std::isfinite(x))
                fail(field, "grid values must be finite");
    };
    auto positive = [&](const std::vector<double> &v, const std::string &field) {
        nonempty(v, field);
        for (double x : v)
            if (!(x > 0.0))
                fail(field, "grid values must be > 0");
    };
    auto epsilons = [&] {
        nonempty(s.epsilons, "grid.epsilon");
        for (double e : s.epsilons)
            if (!(e > 0.0 && e < 1.0))
                fail("grid.epsilon", "outage must lie in (0, 1)");
    };

    if (s.name.empty())
        fail("name", "must not be empty");
    for (char c : s.name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            fail("name", "use letters, digits, '_', '-' or '.' only");
    if (s.output_dir.empty())
        fail("output", "must not be empty");

    try {
        SystemParams{s.params};
    } catch (const ValidationError &e) {
        fail(config_field(e.field()), bare(e));
    }
    if (s.conditionings.empty())
        fail("grid.conditioning", "empty grid");

    switch (s.kind) {
    case StudyKind::sinr_curves:
        positive(s.link_distances, "grid.link_distance_m");
        nonempty(s.thresholds_db, "grid.threshold_db");
        break;
    case StudyKind::inr_curves:
        positive(s.beamwidths_deg, "grid.beamwidth_deg");
        for (double bw : s.beamwidths_deg)
            if (!(bw < 180.0))
                fail("grid.beamwidth_deg", "beamwidth must lie in (0, 180) degrees");
        nonempty(s.thresholds_db, "grid.threshold_db");
        break;
    case StudyKind::txcap_sweep:
    case StudyKind::ase_sweep:
        if (!kSweepVars.contains(s.sweep_var))
            fail("grid.sweep_var", "expected threshold_db, link_distance_m, beamwidth_deg or blockage_rate_per_m");
        nonempty(s.sweep_values, "grid.sweep_values");
        if (s.sweep_var != "threshold_db")
            positive(s.sweep_values, "grid.sweep_values");
        epsilons();
        break;
    case StudyKind::rate_coverage:
        positive(s.rates_bps, "grid.rate_bps");
        positive(s.link_distances, "grid.link_distance_m");
        if (!(s.bandwidth_hz > 0.0))
            fail("params.bandwidth_hz", "must be > 0");
        break;
    case StudyKind::twoway_allocation:
        epsilons();
        try {
            TwoWayConfig cfg = s.twoway;
            validate(cfg);
        } catch (const ValidationError &e) {
            fail(config_field(e.field()), bare(e));
        }
        break;
    case StudyKind::mc_validation:
        positive(s.link_distances, "grid.link_distance_m");
        nonempty(s.thresholds_db, "grid.threshold_db");
        if (!s.los_distances.empty())
            positive(s.los_distances, "grid.los_distance_m");
        if (s.segments < 100)
            fail("grid.segments", "need at least 100 segments per distance");
        if (!s.montecarlo.enabled)
            fail("montecarlo.enabled", "mc_validation needs the simulator");
        break;
    }

    if (s.montecarlo.enabled) {
        if (s.montecarlo.trials < 100)
            fail("montecarlo.trials", "need at least 100 trials");
        if (s.montecarlo.los_modes.empty())
            fail("montecarlo.los_mode", "empty list");
        TrialConfig probe;
        probe.window.radius = s.montecarlo.window_radius;
        probe.buildings = s.buildings;
        probe.trials = s.montecarlo.trials;
        double r = s.params.link_distance;
        for (double d : s.link_distances)
            r = std::max(r, d);
        try {
            probe.params = SystemParams(s.params).with_link_distance(r);
            validate(probe);
        } catch (const ValidationError &e) {
            fail(config_field(e.field()), bare(e));
        }
    }
}

} // namespace

void validate(const Study &study) { check_study(study, "<study>", {}); }

Study parse_study(std::string_view yaml, const std::string &source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml));
    } catch (const YAML::ParserException &e) {
        throw ConfigError(source, e.mark.is_null() ? 0 : e.mark.line + 1, "yaml", e.msg);
    }
    Parser p(source);
    if (!root.IsMap())
        throw ConfigError(source, 0, "study", "expected a mapping at the top level");
    // A run manifest nests the resolved study under `study`.
    if (root["study"] && root["format"])
        root = root["study"];
    p.require_map(root, "study");
    p.check_keys(root, "", {"name", "kind", "preset", "params", "grid", "twoway", "montecarlo", "output"});

    Study s;
    for (const char *key : {"name", "kind", "output"})
        if (!root[key])
            p.fail(root, key, "required");
    s.name = p.text(root["name"], "name");
    try {
        s.kind = parse_study_kind(p.text(root["kind"], "kind"));
    } catch (const ValidationError &e) {
        p.fail(root["kind"], "kind", bare(e));
    }
    if (s.kind == StudyKind::twoway_allocation)
        s.conditionings = {Conditioning::los_only};

    s.preset = root["preset"] ? p.text(root["preset"], "preset") : "table1_sparse";
    try {
        const auto &preset = find_preset(s.preset);
        s.params = preset.params;
        s.buildings = preset.buildings;
        s.bandwidth_hz = preset.bandwidth_hz;
    } catch (const ValidationError &e) {
        p.fail(root["preset"], "preset", bare(e));
    }

    if (const auto n = root["params"])
        parse_params(p, n, s);
    if (const auto n = root["grid"])
        parse_grid(p, n, s);
    if (const auto n = root["twoway"])
        parse_twoway(p, n, s);
    if (const auto n = root["montecarlo"])
        parse_montecarlo(p, n, s);
    s.output_dir = p.text(root["output"], "output");

    check_study(s, source, p.lines);
    return s;
}

Study load_study(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path.string(), 0, "path", "cannot open study file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_study(text.str(), path.string());
}

// ---- snapshot --------------------------------------------------------------

namespace {

// Shortest text that reads back to the same double.
std::string exact(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void emit_list(YAML::Emitter &e, const std::vector<double> &values) {
    e << YAML::Flow << YAML::BeginSeq;
    for (double v : values)
        e << exact(v);
    e << YAML::EndSeq;
}

void emit_mark(YAML::Emitter &e, const MarkLaw &law) {
    if (law.kind == MarkLaw::Kind::fixed)
        e << exact(law.low);
    else
        emit_list(e, {law.low, law.high});
}

void emit_study(YAML::Emitter &e, const Study &s) {
    const auto &ps = s.params;
    e << YAML::BeginMap;
    e << YAML::Key << "name" << YAML::Value << s.name;
    e << YAML::Key << "kind" << YAML::Value << std::string(to_string(s.kind));
    e << YAML::Key << "preset" << YAML::Value << s.preset;

    e << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "raw_density_per_m2" << YAML::Value << exact(ps.raw_density);
    e << YAML::Key << "aloha_prob" << YAML::Value << exact(ps.aloha_prob);
    e << YAML::Key << "outdoor_prob" << YAML::Value << exact(ps.outdoor_prob);
    e << YAML::Key << "link_distance_m" << YAML::Value << exact(ps.link_distance);
    e << YAML::Key << "tx_power_w" << YAML::Value << exact(ps.tx_power);
    e << YAML::Key << "intercept_db" << YAML::Value << exact(ps.intercept_db);
    e << YAML::Key << "noise_dbw" << YAML::Value << exact(ps.noise_db);
    e << YAML::Key << "los_exponent" << YAML::Value << exact(ps.los_exponent);
    e << YAML::Key << "nlos_exponent" << YAML::Value << exact(ps.nlos_exponent);
    e << YAML::Key << "fading_shape" << YAML::Value << ps.fading_shape;
    e << YAML::Key << "inr_shape" << YAML::Value << ps.inr_shape;
    e << YAML::Key << "blockage_rate_per_m" << YAML::Value << exact(ps.blockage_rate);
    e << YAML::Key << "beamwidth_rad" << YAML::Value << exact(ps.antenna.beamwidth);
    e << YAML::Key << "mainlobe_gain" << YAML::Value << exact(ps.antenna.mainlobe_gain);
    e << YAML::Key << "sidelobe_gain" << YAML::Value << exact(ps.antenna.sidelobe_gain);
    e << YAML::Key << "bandwidth_hz" << YAML::Value << exact(s.bandwidth_hz);
    e << YAML::Key << "buildings" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "density_per_m2" << YAML::Value << exact(s.buildings.density);
    e << YAML::Key << "width_m" << YAML::Value;
    emit_mark(e, s.buildings.width);
    e << YAML::Key << "length_m" << YAML::Value;
    emit_mark(e, s.buildings.length);
    e << YAML::EndMap;
    e << YAML::EndMap;

    e << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    auto list = [&](const char *key, const std::vector<double> &v) {
        if (!v.empty()) {
            e << YAML::Key << key << YAML::Value;
            emit_list(e, v);
        }
    };
    list("link_distance_m", s.link_distances);
    list("threshold_db", s.thresholds_db);
    e << YAML::Key << "conditioning" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto c : s.conditionings)
        e << std::string(to_string(c));
    e << YAML::EndSeq;
    list("beamwidth_deg", s.beamwidths_deg);
    list("epsilon", s.epsilons);
    list("rate_bps", s.rates_bps);
    if (!s.sweep_var.empty())
        e << YAML::Key << "sweep_var" << YAML::Value << s.sweep_var;
    list("sweep_values", s.sweep_values);
    e << YAML::Key << "sinr_threshold_db" << YAML::Value << exact(s.threshold_db);
    e << YAML::Key << "include_los_only" << YAML::Value << s.include_los_only;
    list("los_distance_m", s.los_distances);
    e << YAML::Key << "segments" << YAML::Value << s.segments;
    e << YAML::EndMap;

    e << YAML::Key << "twoway" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "total_bandwidth_hz" << YAML::Value << exact(s.twoway.total_bandwidth);
    e << YAML::Key << "forward_rate_bps" << YAML::Value << exact(s.twoway.forward_rate);
    e << YAML::Key << "reverse_rate_bps" << YAML::Value << exact(s.twoway.reverse_rate);
    e << YAML::EndMap;

    const auto &mc = s.montecarlo;
    e << YAML::Key << "montecarlo" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "enabled" << YAML::Value << mc.enabled;
    e << YAML::Key << "trials" << YAML::Value << mc.trials;
    e << YAML::Key << "seed" << YAML::Value << mc.seed;
    e << YAML::Key << "los_mode" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto m : mc.los_modes)
        e << std::string(to_string(m));
    e << YAML::EndSeq;
    e << YAML::Key << "window_radius_m" << YAML::Value << exact(mc.window_radius);
    e << YAML::Key << "write_outcomes" << YAML::Value << mc.write_outcomes;
    e << YAML::EndMap;

    e << YAML::Key << "output" << YAML::Value << s.output_dir.generic_string();
    e << YAML::EndMap;
}

} // namespace

void write_study_yaml(std::ostream &out, const Study &study) {
    YAML::Emitter e;
    emit_study(e, study);
    out << e.c_str() << '\n';
}

// ---- running ---------------------------------------------------------------

namespace {

// Collects artifacts as temporaries; commit() renames them into place.
// Anything not committed is removed.
class ArtifactSet {
public:
    explicit ArtifactSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
    ArtifactSet(const ArtifactSet &) = delete;
    ArtifactSet &operator=(const ArtifactSet &) = delete;

    ~ArtifactSet() {
        std::error_code ec;
        for (const auto &[tmp, final_path] : files_)
            std::filesystem::remove(tmp, ec);
    }

    // Writes one file through `fill`. Single writer: called from the
    // driving thread only.
    template <class F>
    void write(const std::string &filename, F &&fill) {
        const auto final_path = dir_ / filename;
        auto tmp = final_path;
        tmp += ".partial";
        files_.emplace_back(tmp, final_path);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        fill(out);
        out.flush();
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }

    std::vector<std::filesystem::path> commit() {
        std::vector<std::filesystem::path> done;
        for (const auto &[tmp, final_path] : files_) {
            std::filesystem::rename(tmp, final_path);
            done.push_back(final_path);
        }
        files_.clear();
        return done;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto &f : files_)
            out.push_back(f.second.filename().string());
        return out;
    }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> files_;
};

std::string tag(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

std::string distance_series(double r) { return "r" + tag(r); }

SystemParams base_params(const Study &s) { return SystemParams(s.params); }

TrialConfig trial_config(const Study &s, const SystemParams &params, Conditioning conditioning, LosMode mode) {
    TrialConfig cfg;
    cfg.params = params;
    cfg.window.radius = s.montecarlo.window_radius;
    cfg.trials = s.montecarlo.trials;
    cfg.root_seed = s.montecarlo.seed;
    cfg.buildings = s.buildings;
    cfg.conditioning = conditioning;
    cfg.los_mode = mode;
    return cfg;
}

struct EmpiricalRun {
    DistributionCurve curve;
    std::vector<TrialOutcome> outcomes;
};

EmpiricalRun empirical(const Study &s, const SystemParams &params, Conditioning conditioning, LosMode mode,
                       Statistic statistic, std::string series, int threads) {
    const auto cfg = trial_config(s, params, conditioning, mode);
    EmpiricalRun run;
    run.outcomes = simulate(cfg, threads);
    if (mode == LosMode::abstract)
        series += "_abstract";
    const std::string label =
        statistic == Statistic::inr_cdf ? std::string("overall") : std::string(to_string(conditioning));
    run.curve = empirical_curve(run.outcomes, s.thresholds_db, statistic, std::move(series), label);
    return run;
}

void keep_outcomes(ArtifactSet &files, const Study &s, const EmpiricalRun &run) {
    if (!s.montecarlo.write_outcomes)
        return;
    files.write(s.name + "_outcomes_" + run.curve.series + "_" + run.curve.conditioning + ".csv",
                [&](std::ostream &out) { write_outcomes_csv(out, run.outcomes); });
}

void run_sinr_curves(const Study &s, ArtifactSet &files, int threads) {
    std::vector<DistributionCurve> curves;
    for (double r : s.link_distances) {
        const auto params = base_params(s).with_link_distance(r);
        for (auto c : s.conditionings)
            curves.push_back(sinr_curve(params, s.thresholds_db, c, distance_series(r)));
        if (!s.montecarlo.enabled)
            continue;
        for (auto mode : s.montecarlo.los_modes)
            for (auto c : s.conditionings) {
                auto run = empirical(s, params, c, mode, Statistic::sinr_ccdf, distance_series(r), threads);
                keep_outcomes(files, s, run);
                curves.push_back(std::move(run.curve));
            }
    }
    files.write(s.name + ".csv", [&](std::ostream &out) { write_curves_csv(out, curves); });
}

void run_inr_curves(const Study &s, ArtifactSet &files, int threads) {
    std::vector<DistributionCurve> curves;
    for (double bw : s.beamwidths_deg) {
        AntennaPattern antenna = s.params.antenna;
        antenna.beamwidth = bw * std::numbers::pi / 180.0;
        const auto params = base_params(s).with_antenna(antenna);
        const std::string series = "bw" + tag(bw);
        curves.push_back(inr_curve(params, s.thresholds_db, false, series));
        if (s.include_los_only)
            curves.push_back(inr_curve(params, s.thresholds_db, true, series));
        if (!s.montecarlo.enabled)
            continue;
        for (auto mode : s.montecarlo.los_modes) {
            auto run = empirical(s, params, Conditioning::overall, mode, Statistic::inr_cdf, series, threads);
            keep_outcomes(files, s, run);
            curves.push_back(std::move(run.curve));
        }
    }
    files.write(s.name + ".csv", [&](std::ostream &out) { write_curves_csv(out, curves); });
}

SystemParams swept(const Study &s, double value) {
    const auto params = base_params(s);
    if (s.sweep_var == "link_distance_m")
        return params.with_link_distance(value);
    if (s.sweep_var == "beamwidth_deg") {
        AntennaPattern antenna = s.params.antenna;
        antenna.beamwidth = value * std::numbers::pi / 180.0;
        return params.with_antenna(antenna);
    }
    if (s.sweep_var == "blockage_rate_per_m")
        return params.with_blockage_rate(value);
    return params;
}

void run_sweep(const Study &s, ArtifactSet &files) {
    std::vector<SweepRow> rows;
    const bool optimize = s.kind == StudyKind::ase_sweep && s.sweep_var != "threshold_db";
    for (auto c : s.conditionings)
        for (double eps : s.epsilons) {
            const std::string series = "eps" + tag(eps) + "_" + std::string(to_string(c));
            for (double v : s.sweep_values) {
                const auto params = swept(s, v);
                double t_db = s.sweep_var == "threshold_db" ? v : s.threshold_db;
                if (optimize)
                    t_db = optimal_density(eps, params, c).threshold_db;
                const auto cap = transmission_capacity(t_db, eps, params, c);
                const auto ase = area_spectral_efficiency(cap.best(), t_db, eps);
                rows.push_back({series, s.sweep_var, v, cap.best(), ase.ase, cap.valid, cap.residual});
            }
        }
    files.write(s.name + ".csv", [&](std::ostream &out) { write_sweep_csv(out, rows); });
}

void run_rate_coverage(const Study &s, ArtifactSet &files) {
    std::ostringstream body;
    body << "series,rate_bps,threshold_db,coverage,conditioning\n" << std::setprecision(10);
    for (double r : s.link_distances) {
        const auto params = base_params(s).with_link_distance(r);
        for (auto c : s.conditionings)
            for (double rate : s.rates_bps)
                body << distance_series(r) << ',' << rate << ',' << rate_threshold_db(rate, s.bandwidth_hz) << ','
                     << rate_coverage(rate, s.bandwidth_hz, params, c) << ',' << to_string(c) << '\n';
    }
    files.write(s.name + ".csv", [&](std::ostream &out) { out << body.str(); });
}

void run_twoway(const Study &s, ArtifactSet &files) {
    std::vector<SweepRow> rows;
    const auto params = base_params(s);
    for (auto c : s.conditionings)
        for (double eps : s.epsilons) {
            const std::string series = "eps" + tag(eps) + "_" + std::string(to_string(c));
            const auto best = optimize_bandwidth_allocation(s.twoway, eps, params, c);
            for (const auto &pt : best.grid) {
                TwoWayConfig cfg = s.twoway;
                cfg.forward_fraction = pt.fraction;
                rows.push_back({series, "forward_fraction", pt.fraction, pt.capacity.best(),
                                twoway_ase(pt.capacity.best(), cfg, eps), pt.capacity.valid, pt.capacity.residual});
            }
            TwoWayConfig cfg = s.twoway;
            cfg.forward_fraction = best.fraction;
            rows.push_back({series + "_optimum", "forward_fraction", best.fraction, best.capacity.best(),
                            twoway_ase(best.capacity.best(), cfg, eps), best.capacity.valid, best.capacity.residual});
            // One-way reference: the forward rate over the whole band.
            const double t_db = rate_threshold_db(s.twoway.forward_rate, s.twoway.total_bandwidth);
            const auto one = transmission_capacity(t_db, eps, params, c);
            rows.push_back({series + "_oneway", "forward_fraction", 1.0, one.best(),
                            area_spectral_efficiency(one.best(), t_db, eps).ase, one.valid, one.residual});
        }
    files.write(s.name + ".csv", [&](std::ostream &out) { write_sweep_csv(out, rows); });
}

void run_mc_validation(const Study &s, ArtifactSet &files, int threads) {
    run_sinr_curves(s, files, threads);
    if (s.los_distances.empty())
        return;
    const auto report = empirical_los_validation(s.buildings, s.los_distances, s.segments, s.montecarlo.seed);
    files.write(s.name + "_los.csv", [&](std::ostream &out) { write_los_validation_csv(out, report); });
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

RunSummary run_study(const Study &study, int threads) {
    validate(study);
    const auto started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();

    std::filesystem::create_directories(study.output_dir);
    ArtifactSet files(study.output_dir);
    switch (study.kind) {
    case StudyKind::sinr_curves:
        run_sinr_curves(study, files, threads);
        break;
    case StudyKind::inr_curves:
        run_inr_curves(study, files, threads);
        break;
    case StudyKind::txcap_sweep:
    case StudyKind::ase_sweep:
        run_sweep(study, files);
        break;
    case StudyKind::rate_coverage:
        run_rate_coverage(study, files);
        break;
    case StudyKind::twoway_allocation:
        run_twoway(study, files);
        break;
    case StudyKind::mc_validation:
        run_mc_validation(study, files, threads);
        break;
    }

    RunSummary summary;
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto csvs = files.names();
    files.write(study.name + ".manifest.yaml", [&](std::ostream &out) {
        YAML::Emitter e;
        e << YAML::BeginMap;
        e << YAML::Key << "format" << YAML::Value << 1;
        e << YAML::Key << "version" << YAML::Value << std::string(library_version());
        e << YAML::Key << "started_utc" << YAML::Value << started;
        e << YAML::Key << "wall_time_s" << YAML::Value << exact(summary.wall_seconds);
        e << YAML::Key << "seed" << YAML::Value << study.montecarlo.seed;
        e << YAML::Key << "artifacts" << YAML::Value << YAML::BeginSeq;
        for (const auto &name : csvs)
            e << name;
        e << YAML::EndSeq;
        e << YAML::Key << "study" << YAML::Value;
        emit_study(e, study);
        e << YAML::EndMap;
        out << "# mmwave run manifest; `mmwave run` accepts this file to reproduce the CSVs\n" << e.c_str() << '\n';
    });
    summary.artifacts = files.commit();
    return summary;
}

} // namespace mmwave
