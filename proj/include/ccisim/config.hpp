// Copyright 2026 The ccisim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ccisim/errors.hpp"
#include "ccisim/experiments.hpp"
#include "ccisim/model.hpp"
#include "ccisim/pulses.hpp"

/**
 * @file config.hpp
 * INI experiment configuration: parsing with field-level validation and a
 * canonical emitter such that parse_config(emit_config(c)) == c.
 *
 * Frequencies are written in MHz (ordinary frequency), times in ns, phases
 * in radians. The schema is documented in README.md.
 */

namespace ccisim {

enum class Experiment { CciDynamics, Spectrum, Chiral, Entangle, Coupling, Fit };
enum class OutputFormat { Csv, Json };

inline constexpr std::array<Experiment, 6> kAllExperiments{
    Experiment::CciDynamics, Experiment::Spectrum, Experiment::Chiral,
    Experiment::Entangle,    Experiment::Coupling, Experiment::Fit};

constexpr std::string_view to_string(Experiment e) {
    switch (e) {
    case Experiment::CciDynamics: return "cci-dynamics";
    case Experiment::Spectrum: return "spectrum";
    case Experiment::Chiral: return "chiral";
    case Experiment::Entangle: return "entangle";
    case Experiment::Coupling: return "coupling";
    case Experiment::Fit: return "fit";
    }
    return "?";
}

inline std::optional<Experiment> experiment_from_string(std::string_view s) {
    for (auto e : kAllExperiments) {
        if (to_string(e) == s) {
            return e;
        }
    }
    return std::nullopt;
}

constexpr std::string_view to_string(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

constexpr std::string_view to_string(EvolutionMode m) {
    return m == EvolutionMode::Direct ? "direct" : "sandwich";
}

/// Inclusive linear grid {start, stop, count}.
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    [[nodiscard]] std::vector<double> values() const {
        return linspace(start, stop, count);
    }
    bool operator==(const Grid &) const = default;
};

struct OutputConfig {
    std::string dir = ".";
    OutputFormat format = OutputFormat::Csv;
    std::string name;  ///< file stem; empty means the experiment name
    bool operator==(const OutputConfig &) const = default;
};

struct DriveConfig {
    double omega_p_mhz = 10.0;
    double omega_q_mhz = 10.0;
    double omega_s_mhz = 10.0;
    double phi_p = 0.0;
    double phi_q = 0.0;
    double phi_s = 0.0;
    EvolutionMode mode = EvolutionMode::Direct;
    std::array<double, 3> delta_mhz{};

    [[nodiscard]] DriveParams params() const {
        return {mhz_to_angular(omega_p_mhz), mhz_to_angular(omega_q_mhz),
                mhz_to_angular(omega_s_mhz), phi_p, phi_q, phi_s};
    }
    [[nodiscard]] std::array<double, 3> detuning() const {
        return {mhz_to_angular(delta_mhz[0]), mhz_to_angular(delta_mhz[1]),
                mhz_to_angular(delta_mhz[2])};
    }
    bool operator==(const DriveConfig &) const = default;
};

/// Enantiomer schedule. Internally tau is the time unit; tau_ns only
/// converts results for presentation.
struct PulseConfig {
    double tau_ns = 100.0;
    double phi = -kPi / 2.0;
    double window_tau = 5.0;
    double dt_over_tau = 1.0 / 2000.0;
    std::size_t samples = 201;

    [[nodiscard]] PulseSchedule schedule() const {
        PulseSchedule s;
        s.tau = 1.0;
        s.phi = phi;
        s.t_start = -window_tau;
        s.t_end = window_tau;
        s.dt = dt_over_tau;
        return s;
    }
    bool operator==(const PulseConfig &) const = default;
};

struct TwoQubitConfig {
    double j_mhz = 6.7;
    double phi = kPi / 2.0;
    std::string initial = "eg";  ///< gg | ge | eg | ee | dark
    bool operator==(const TwoQubitConfig &) const = default;
};

struct CouplingConfig {
    double g_a_mhz = 25.0;
    double g_b_mhz = 25.0;
    double delta_a_mhz = 93.3;
    double delta_b_mhz = 93.3;
    double omega_ge_a_mhz = 5520.0;
    double omega_ge_b_mhz = 5633.0;
    bool operator==(const CouplingConfig &) const = default;
};

/// Either fit a column of an input CSV (with a t_ns column) or a synthetic
/// series amplitude cos(2 pi j_mhz t) + offset + noise on the [time] grid.
struct FitConfig {
    std::string input;
    std::string column = "P";
    double j_mhz = 6.7;
    double amplitude = 0.5;
    double offset = 0.5;
    double noise = 0.0;
    bool operator==(const FitConfig &) const = default;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::CciDynamics;
    std::uint64_t seed = 0;
    OutputConfig output;
    DriveConfig drive;
    Grid time;
    Grid phi;
    PulseConfig pulse;
    Grid area;
    TwoQubitConfig two_qubit;
    CouplingConfig coupling;
    FitConfig fit;

    /// Defaults for experiment `e`.
    static ExperimentConfig defaults(Experiment e) {
        ExperimentConfig c;
        c.experiment = e;
        c.phi = {-kPi, kPi, 51};
        c.area = {0.2, 2.5, 116};
        switch (e) {
        case Experiment::CciDynamics: c.time = {0.0, 300.0, 301}; break;
        case Experiment::Spectrum: c.time = {0.0, 19990.0, 2000}; break;
        case Experiment::Entangle: c.time = {0.0, 100.0, 201}; break;
        case Experiment::Fit: c.time = {0.0, 1000.0, 501}; break;
        default: c.time = {0.0, 0.0, 1}; break;
        }
        return c;
    }

    [[nodiscard]] std::string stem() const {
        return output.name.empty() ? std::string(to_string(experiment))
                                   : output.name;
    }

    bool operator==(const ExperimentConfig &) const = default;
};

namespace detail {

/// Sections and keys accepted for each experiment.
inline std::map<std::string, std::set<std::string>>
allowed_keys(Experiment e) {
    const std::set<std::string> grid_keys{"start", "stop", "count"};
    std::map<std::string, std::set<std::string>> m{
        {"output", {"dir", "format", "name"}}};
    switch (e) {
    case Experiment::CciDynamics:
        m["drive"] = {"omega_mhz", "omega_p_mhz", "omega_q_mhz", "omega_s_mhz",
                      "phi",       "phi_p",       "phi_q",       "phi_s",
                      "mode",      "delta1_mhz",  "delta2_mhz",  "delta3_mhz"};
        m["time"] = {"start_ns", "stop_ns", "count"};
        break;
    case Experiment::Spectrum:
        m["drive"] = {"omega_mhz", "delta1_mhz", "delta2_mhz", "delta3_mhz"};
        m["time"] = {"start_ns", "stop_ns", "count"};
        m["phi"] = grid_keys;
        break;
    case Experiment::Chiral:
        m["pulse"] = {"tau_ns", "phi", "window_tau", "dt_over_tau", "samples"};
        m["area"] = grid_keys;
        break;
    case Experiment::Entangle:
        m["two_qubit"] = {"j_mhz", "phi", "initial"};
        m["time"] = {"start_ns", "stop_ns", "count"};
        break;
    case Experiment::Coupling:
        m["coupling"] = {"g_a_mhz",     "g_b_mhz",        "delta_a_mhz",
                         "delta_b_mhz", "omega_ge_a_mhz", "omega_ge_b_mhz"};
        break;
    case Experiment::Fit:
        m["fit"] = {"input", "column", "j_mhz", "amplitude", "offset", "noise"};
        m["time"] = {"start_ns", "stop_ns", "count"};
        break;
    }
    return m;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

class SectionReader {
public:
    SectionReader(std::string name, const boost::property_tree::ptree *tree,
                  std::vector<std::string> &issues)
        : name_(std::move(name)), tree_(tree), issues_(issues) {}

    [[nodiscard]] bool has(const std::string &key) const {
        return tree_ != nullptr && tree_->get_child_optional(key).has_value();
    }

    void number(const std::string &key, double &out) const {
        if (const auto raw = text(key)) {
            double v = 0.0;
            const auto *first = raw->data();
            const auto *last = first + raw->size();
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || raw->empty()) {
                issue(key, "expected a number, got '" + *raw + "'");
                return;
            }
            out = v;
        }
    }

    void count(const std::string &key, std::size_t &out) const {
        if (const auto raw = text(key)) {
            std::uint64_t v = 0;
            const auto *first = raw->data();
            const auto *last = first + raw->size();
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || raw->empty()) {
                issue(key, "expected a non-negative integer, got '" + *raw + "'");
                return;
            }
            out = static_cast<std::size_t>(v);
        }
    }

    void string(const std::string &key, std::string &out) const {
        if (const auto raw = text(key)) {
            out = *raw;
        }
    }

    void issue(const std::string &key, const std::string &msg) const {
        issues_.push_back(qualified(key) + ": " + msg);
    }

    [[nodiscard]] std::string qualified(const std::string &key) const {
        return name_.empty() ? key : name_ + "." + key;
    }

private:
    [[nodiscard]] std::optional<std::string> text(const std::string &key) const {
        if (!has(key)) {
            return std::nullopt;
        }
        return trim(tree_->get<std::string>(key));
    }

    std::string name_;
    const boost::property_tree::ptree *tree_;
    std::vector<std::string> &issues_;
};

inline void read_grid(const SectionReader &r, const std::string &start_key,
                      const std::string &stop_key, Grid &g) {
    r.number(start_key, g.start);
    r.number(stop_key, g.stop);
    r.count("count", g.count);
}

inline void check_grid(const Grid &g, const std::string &name,
                       std::vector<std::string> &issues) {
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) {
        issues.push_back(name + ": grid bounds must be finite");
    }
    if (g.count < 1) {
        issues.push_back(name + ".count: must be >= 1");
    }
    if (g.stop < g.start) {
        issues.push_back(name + ": stop < start");
    }
}

inline void check_non_negative(double v, const std::string &name,
                               std::vector<std::string> &issues) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        issues.push_back(name + ": must be a finite value >= 0 (negative "
                                "amplitude)");
    }
}

inline void check_finite(double v, const std::string &name,
                         std::vector<std::string> &issues) {
    if (!std::isfinite(v)) {
        issues.push_back(name + ": must be finite");
    }
}

/// Shortest decimal that parses back to the same double.
inline std::string exact_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

} // namespace detail

/**
 * Parse and validate an INI document. Top-level keys: `experiment`, `seed`.
 * `fallback` supplies the experiment when the document has no
 * `experiment` key; a conflicting key is an error. Throws ConfigError
 * listing every problem found.
 */
inline ExperimentConfig
parse_config(const std::string &text,
             std::optional<Experiment> fallback = std::nullopt) {
    namespace pt = boost::property_tree;
    std::vector<std::string> issues;
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError({"malformed document: " + e.message() + " (line " +
                           std::to_string(e.line()) + ")"});
    }

    std::optional<Experiment> exp;
    if (const auto raw = tree.get_optional<std::string>("experiment");
        raw && tree.get_child("experiment").empty()) {
        exp = experiment_from_string(detail::trim(*raw));
        if (!exp) {
            throw ConfigError({"experiment: unknown experiment '" +
                               detail::trim(*raw) + "'"});
        }
        if (fallback && *fallback != *exp) {
            throw ConfigError({"experiment: document says '" +
                               std::string(to_string(*exp)) +
                               "' but the command asks for '" +
                               std::string(to_string(*fallback)) + "'"});
        }
    } else {
        exp = fallback;
    }
    if (!exp) {
        throw ConfigError({"experiment: missing required key"});
    }

    ExperimentConfig c = ExperimentConfig::defaults(*exp);
    const auto allowed = detail::allowed_keys(*exp);

    const pt::ptree *sections_root = &tree;
    detail::SectionReader top("", sections_root, issues);
    for (const auto &[key, child] : tree) {
        if (child.empty()) {
            if (key != "experiment" && key != "seed") {
                issues.push_back(key + ": unknown key");
            }
            continue;
        }
        const auto it = allowed.find(key);
        if (it == allowed.end()) {
            issues.push_back("[" + key + "]: unknown section for experiment " +
                             std::string(to_string(*exp)));
            continue;
        }
        for (const auto &[sub, node] : child) {
            if (!node.empty() || !it->second.contains(sub)) {
                issues.push_back(key + "." + sub + ": unknown key");
            }
        }
    }
    if (top.has("seed")) {
        std::size_t seed = 0;
        top.count("seed", seed);
        c.seed = seed;
    }

    auto section = [&](const std::string &name) {
        const auto child = tree.get_child_optional(name);
        return detail::SectionReader(
            name, child && !child->empty() ? &*child : nullptr, issues);
    };

    {
        const auto r = section("output");
        r.string("dir", c.output.dir);
        r.string("name", c.output.name);
        std::string fmt(to_string(c.output.format));
        r.string("format", fmt);
        if (fmt == "csv") {
            c.output.format = OutputFormat::Csv;
        } else if (fmt == "json") {
            c.output.format = OutputFormat::Json;
        } else {
            r.issue("format", "expected csv or json, got '" + fmt + "'");
        }
        if (c.output.dir.empty()) {
            r.issue("dir", "must not be empty");
        }
        if (c.output.name.find('/') != std::string::npos) {
            r.issue("name", "must be a file stem without '/'");
        }
    }

    switch (*exp) {
    case Experiment::CciDynamics:
    case Experiment::Spectrum: {
        const auto r = section("drive");
        auto &d = c.drive;
        if (r.has("omega_mhz")) {
            for (const char *k : {"omega_p_mhz", "omega_q_mhz", "omega_s_mhz"}) {
                if (r.has(k)) {
                    r.issue(k, "conflicts with drive.omega_mhz");
                }
            }
            double om = d.omega_p_mhz;
            r.number("omega_mhz", om);
            d.omega_p_mhz = d.omega_q_mhz = d.omega_s_mhz = om;
        }
        r.number("omega_p_mhz", d.omega_p_mhz);
        r.number("omega_q_mhz", d.omega_q_mhz);
        r.number("omega_s_mhz", d.omega_s_mhz);
        if (r.has("phi")) {
            if (r.has("phi_p")) {
                r.issue("phi_p", "conflicts with drive.phi");
            }
            r.number("phi", d.phi_p);
        }
        r.number("phi_p", d.phi_p);
        r.number("phi_q", d.phi_q);
        r.number("phi_s", d.phi_s);
        if (r.has("mode")) {
            std::string mode;
            r.string("mode", mode);
            if (mode == "direct") {
                d.mode = EvolutionMode::Direct;
            } else if (mode == "sandwich") {
                d.mode = EvolutionMode::Sandwich;
            } else {
                r.issue("mode", "expected direct or sandwich, got '" + mode + "'");
            }
        }
        r.number("delta1_mhz", d.delta_mhz[0]);
        r.number("delta2_mhz", d.delta_mhz[1]);
        r.number("delta3_mhz", d.delta_mhz[2]);
        detail::check_non_negative(d.omega_p_mhz, "drive.omega_p_mhz", issues);
        detail::check_non_negative(d.omega_q_mhz, "drive.omega_q_mhz", issues);
        detail::check_non_negative(d.omega_s_mhz, "drive.omega_s_mhz", issues);
        for (const auto &[v, n] : {std::pair{d.phi_p, "drive.phi_p"},
                                    {d.phi_q, "drive.phi_q"},
                                    {d.phi_s, "drive.phi_s"},
                                    {d.delta_mhz[0], "drive.delta1_mhz"},
                                    {d.delta_mhz[1], "drive.delta2_mhz"},
                                    {d.delta_mhz[2], "drive.delta3_mhz"}}) {
            detail::check_finite(v, n, issues);
        }
        if (*exp == Experiment::Spectrum && !(d.omega_p_mhz > 0.0)) {
            r.issue("omega_mhz", "must be > 0");
        }

        detail::read_grid(section("time"), "start_ns", "stop_ns", c.time);
        detail::check_grid(c.time, "time", issues);
        if (*exp == Experiment::Spectrum) {
            detail::read_grid(section("phi"), "start", "stop", c.phi);
            detail::check_grid(c.phi, "phi", issues);
            if (c.time.count < 2) {
                issues.push_back("time.count: spectrum needs >= 2 samples");
            }
        }
        break;
    }
    case Experiment::Chiral: {
        const auto r = section("pulse");
        auto &p = c.pulse;
        r.number("tau_ns", p.tau_ns);
        r.number("phi", p.phi);
        r.number("window_tau", p.window_tau);
        r.number("dt_over_tau", p.dt_over_tau);
        r.count("samples", p.samples);
        if (!(p.tau_ns > 0.0) || !std::isfinite(p.tau_ns)) {
            r.issue("tau_ns", "must be > 0");
        }
        detail::check_finite(p.phi, "pulse.phi", issues);
        if (!(p.window_tau >= 4.5) || !std::isfinite(p.window_tau)) {
            r.issue("window_tau", "must be >= 4.5 so the window covers both "
                                  "pulse centers +- 4 tau");
        }
        if (!(p.dt_over_tau > 0.0) || !(p.dt_over_tau <= 0.1)) {
            r.issue("dt_over_tau", "must be in (0, 0.1]");
        }
        if (p.samples < 2) {
            r.issue("samples", "must be >= 2");
        }
        detail::read_grid(section("area"), "start", "stop", c.area);
        detail::check_grid(c.area, "area", issues);
        if (!(c.area.start > 0.0)) {
            issues.push_back("area.start: pulse area must be > 0");
        }
        break;
    }
    case Experiment::Entangle: {
        const auto r = section("two_qubit");
        auto &q = c.two_qubit;
        r.number("j_mhz", q.j_mhz);
        r.number("phi", q.phi);
        r.string("initial", q.initial);
        if (!(q.j_mhz > 0.0) || !std::isfinite(q.j_mhz)) {
            r.issue("j_mhz", "must be > 0");
        }
        detail::check_finite(q.phi, "two_qubit.phi", issues);
        static const std::set<std::string> states{"gg", "ge", "eg", "ee", "dark"};
        if (!states.contains(q.initial)) {
            r.issue("initial", "expected gg, ge, eg, ee or dark, got '" +
                                   q.initial + "'");
        }
        detail::read_grid(section("time"), "start_ns", "stop_ns", c.time);
        detail::check_grid(c.time, "time", issues);
        break;
    }
    case Experiment::Coupling: {
        const auto r = section("coupling");
        auto &k = c.coupling;
        r.number("g_a_mhz", k.g_a_mhz);
        r.number("g_b_mhz", k.g_b_mhz);
        r.number("delta_a_mhz", k.delta_a_mhz);
        r.number("delta_b_mhz", k.delta_b_mhz);
        r.number("omega_ge_a_mhz", k.omega_ge_a_mhz);
        r.number("omega_ge_b_mhz", k.omega_ge_b_mhz);
        detail::check_non_negative(k.g_a_mhz, "coupling.g_a_mhz", issues);
        detail::check_non_negative(k.g_b_mhz, "coupling.g_b_mhz", issues);
        for (const auto &[v, n] : {std::pair{k.delta_a_mhz, "delta_a_mhz"},
                                    {k.delta_b_mhz, "delta_b_mhz"}}) {
            if (v == 0.0 || std::isnan(v)) {
                r.issue(n, "detuning must be nonzero");
            }
        }
        detail::check_finite(k.omega_ge_a_mhz, "coupling.omega_ge_a_mhz", issues);
        detail::check_finite(k.omega_ge_b_mhz, "coupling.omega_ge_b_mhz", issues);
        break;
    }
    case Experiment::Fit: {
        const auto r = section("fit");
        auto &f = c.fit;
        r.string("input", f.input);
        r.string("column", f.column);
        const bool synthetic_keys = r.has("j_mhz") || r.has("amplitude") ||
                                    r.has("offset") || r.has("noise");
        if (!f.input.empty() && synthetic_keys) {
            r.issue("input", "conflicts with synthetic-series keys");
        }
        r.number("j_mhz", f.j_mhz);
        r.number("amplitude", f.amplitude);
        r.number("offset", f.offset);
        r.number("noise", f.noise);
        if (!(f.j_mhz > 0.0) || !std::isfinite(f.j_mhz)) {
            r.issue("j_mhz", "must be > 0");
        }
        detail::check_non_negative(f.amplitude, "fit.amplitude", issues);
        detail::check_finite(f.offset, "fit.offset", issues);
        detail::check_non_negative(f.noise, "fit.noise", issues);
        if (f.column.empty()) {
            r.issue("column", "must not be empty");
        }
        detail::read_grid(section("time"), "start_ns", "stop_ns", c.time);
        detail::check_grid(c.time, "time", issues);
        break;
    }
    }

    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
    return c;
}

/// Canonical INI text for `c`; only the sections its experiment uses.
inline std::string emit_config(const ExperimentConfig &c) {
    using detail::exact_double;
    std::ostringstream o;
    o << "experiment = " << to_string(c.experiment) << "\n";
    o << "seed = " << c.seed << "\n";
    o << "\n[output]\n";
    o << "dir = " << c.output.dir << "\n";
    o << "format = " << to_string(c.output.format) << "\n";
    if (!c.output.name.empty()) {
        o << "name = " << c.output.name << "\n";
    }
    auto time_grid = [&] {
        o << "\n[time]\n";
        o << "start_ns = " << exact_double(c.time.start) << "\n";
        o << "stop_ns = " << exact_double(c.time.stop) << "\n";
        o << "count = " << c.time.count << "\n";
    };
    auto grid = [&](const char *name, const Grid &g) {
        o << "\n[" << name << "]\n";
        o << "start = " << exact_double(g.start) << "\n";
        o << "stop = " << exact_double(g.stop) << "\n";
        o << "count = " << g.count << "\n";
    };
    auto deltas = [&] {
        for (int k = 0; k < 3; ++k) {
            o << "delta" << k + 1 << "_mhz = " << exact_double(c.drive.delta_mhz[k])
              << "\n";
        }
    };
    switch (c.experiment) {
    case Experiment::CciDynamics: {
        const auto &d = c.drive;
        o << "\n[drive]\n";
        o << "omega_p_mhz = " << exact_double(d.omega_p_mhz) << "\n";
        o << "omega_q_mhz = " << exact_double(d.omega_q_mhz) << "\n";
        o << "omega_s_mhz = " << exact_double(d.omega_s_mhz) << "\n";
        o << "phi_p = " << exact_double(d.phi_p) << "\n";
        o << "phi_q = " << exact_double(d.phi_q) << "\n";
        o << "phi_s = " << exact_double(d.phi_s) << "\n";
        o << "mode = " << to_string(d.mode) << "\n";
        deltas();
        time_grid();
        break;
    }
    case Experiment::Spectrum:
        o << "\n[drive]\n";
        o << "omega_mhz = " << exact_double(c.drive.omega_p_mhz) << "\n";
        deltas();
        time_grid();
        grid("phi", c.phi);
        break;
    case Experiment::Chiral: {
        const auto &p = c.pulse;
        o << "\n[pulse]\n";
        o << "tau_ns = " << exact_double(p.tau_ns) << "\n";
        o << "phi = " << exact_double(p.phi) << "\n";
        o << "window_tau = " << exact_double(p.window_tau) << "\n";
        o << "dt_over_tau = " << exact_double(p.dt_over_tau) << "\n";
        o << "samples = " << p.samples << "\n";
        grid("area", c.area);
        break;
    }
    case Experiment::Entangle:
        o << "\n[two_qubit]\n";
        o << "j_mhz = " << exact_double(c.two_qubit.j_mhz) << "\n";
        o << "phi = " << exact_double(c.two_qubit.phi) << "\n";
        o << "initial = " << c.two_qubit.initial << "\n";
        time_grid();
        break;
    case Experiment::Coupling: {
        const auto &k = c.coupling;
        o << "\n[coupling]\n";
        o << "g_a_mhz = " << exact_double(k.g_a_mhz) << "\n";
        o << "g_b_mhz = " << exact_double(k.g_b_mhz) << "\n";
        o << "delta_a_mhz = " << exact_double(k.delta_a_mhz) << "\n";
        o << "delta_b_mhz = " << exact_double(k.delta_b_mhz) << "\n";
        o << "omega_ge_a_mhz = " << exact_double(k.omega_ge_a_mhz) << "\n";
        o << "omega_ge_b_mhz = " << exact_double(k.omega_ge_b_mhz) << "\n";
        break;
    }
    case Experiment::Fit: {
        const auto &f = c.fit;
        o << "\n[fit]\n";
        o << "column = " << f.column << "\n";
        if (!f.input.empty()) {
            o << "input = " << f.input << "\n";
        } else {
            o << "j_mhz = " << exact_double(f.j_mhz) << "\n";
            o << "amplitude = " << exact_double(f.amplitude) << "\n";
            o << "offset = " << exact_double(f.offset) << "\n";
            o << "noise = " << exact_double(f.noise) << "\n";
        }
        time_grid();
        break;
    }
    }
    return o.str();
}

} // namespace ccisim
