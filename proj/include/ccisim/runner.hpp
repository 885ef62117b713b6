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

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccisim/config.hpp"
#include "ccisim/experiments.hpp"
#include "ccisim/io.hpp"
#include "ccisim/version.hpp"

/**
 * @file runner.hpp
 * Executes a validated ExperimentConfig and writes its artifacts:
 * one CSV per table plus a sidecar `<stem>.json` (format = csv), or a
 * single `<stem>.json` holding the tables (format = json).
 */

namespace ccisim {

struct RunReport {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> summary;  ///< human-readable result lines
};

namespace detail {

inline nlohmann::json config_echo(const ExperimentConfig &c) {
    namespace pt = boost::property_tree;
    const std::string ini = emit_config(c);
    pt::ptree tree;
    std::istringstream in(ini);
    pt::ini_parser::read_ini(in, tree);
    nlohmann::json j = nlohmann::json::object();
    for (const auto &[key, child] : tree) {
        if (child.empty()) {
            j[key] = child.data();
            continue;
        }
        nlohmann::json s = nlohmann::json::object();
        for (const auto &[k, v] : child) {
            s[k] = v.data();
        }
        j[key] = std::move(s);
    }
    return {{"ini", ini}, {"values", std::move(j)}};
}

inline double ns_to_us(double ns) { return ns * 1e-3; }

inline std::vector<double> grid_us(const Grid &g) {
    auto v = g.values();
    for (auto &x : v) {
        x = ns_to_us(x);
    }
    return v;
}

inline StateVector<4> initial_two_qubit_state(const TwoQubitConfig &q) {
    if (q.initial == "dark") {
        return dark_state(q.phi);
    }
    return StateVector<4>::basis_state(q.initial, kTwoQubitBasis);
}

inline nlohmann::json nan_to_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

struct Table {
    std::string suffix;  ///< "" for the experiment's single table
    SweepResult result;
    std::vector<ConservationGroup> conservation;
};

struct Outcome {
    std::vector<Table> tables;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<std::string> lines;
};

inline Outcome run_cci(const ExperimentConfig &c) {
    const auto p = c.drive.params();
    auto r = run_cci_dynamics(p, grid_us(c.time), c.drive.mode,
                              c.drive.detuning());
    Outcome o;
    o.summary = {{"gauge_phase", p.gauge_phase()},
                 {"max_population_defect",
                  r.max_population_defect({"P1", "P2", "P3"})}};
    r.rescale_column("t_us", "t_ns", 1e3);
    o.lines.push_back("gauge phase " + format_double(p.gauge_phase()) +
                      " rad, " + std::to_string(r.rows.size()) + " time points");
    o.tables.push_back({"", std::move(r), {{"P1", "P2", "P3"}}});
    return o;
}

inline Outcome run_spec(const ExperimentConfig &c, unsigned threads) {
    const double omega = mhz_to_angular(c.drive.omega_p_mhz);
    auto s = run_spectrum(omega, c.phi.values(), grid_us(c.time),
                          c.drive.detuning(), threads);
    Outcome o;
    o.summary = {{"bin_width_mhz", s.bin_width_mhz},
                 {"max_peak_offset_bins", s.max_offset_bins},
                 {"peak_count", s.peaks.rows.size()}};
    o.lines.push_back("bin width " + format_double(s.bin_width_mhz) +
                      " MHz, worst peak offset " +
                      format_double(s.max_offset_bins) + " bins");
    o.tables.push_back({"magnitude", std::move(s.magnitude), {}});
    o.tables.push_back({"peaks", std::move(s.peaks), {}});
    o.tables.push_back({"gaps", std::move(s.gaps), {}});
    return o;
}

inline Outcome run_chiral(const ExperimentConfig &c, unsigned threads) {
    auto r = run_chiral_separation(c.pulse.schedule(), c.area.values(),
                                   c.pulse.samples, threads);
    // omega0 in units of 1/tau, converted to MHz with tau in us
    const double omega0_per_tau = r.a_star * std::sqrt(kPi);
    const double omega0_mhz =
        angular_to_mhz(omega0_per_tau / ns_to_us(c.pulse.tau_ns));
    Outcome o;
    o.summary = {{"a_star", r.a_star},
                 {"p3_l_at_a_star", r.p3_l_star},
                 {"p3_r_at_a_star", r.p3_r_star},
                 {"omega0_mhz_at_a_star", omega0_mhz},
                 {"tau_ns", c.pulse.tau_ns},
                 {"max_halving_residual", r.max_halving_residual}};
    o.lines.push_back("A* = " + format_double(r.a_star) +
                      " (P3_L = " + format_double(r.p3_l_star) +
                      ", P3_R = " + format_double(r.p3_r_star) + ")");
    o.tables.push_back({"map", std::move(r.map), {}});
    o.tables.push_back({"final", std::move(r.final), {}});
    return o;
}

inline Outcome run_entangle(const ExperimentConfig &c) {
    const TwoQubitParams q{mhz_to_angular(c.two_qubit.j_mhz), c.two_qubit.phi};
    auto r = run_entanglement(q, grid_us(c.time),
                              initial_two_qubit_state(c.two_qubit));
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ii = nlohmann::json::array();
        for (std::size_t j = 0; j < 4; ++j) {
            rr.push_back(r.rho_at_tb(i, j).real());
            ii.push_back(r.rho_at_tb(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    const double w = wrap_phase(q.phi);
    const bool minus = w < 0.0;
    const double f = minus ? r.fidelity_minus : r.fidelity_plus;
    Outcome o;
    o.summary = {{"t_b_ns", r.t_b * 1e3},
                 {"basis", {"gg", "ge", "eg", "ee"}},
                 {"rho_real", std::move(re)},
                 {"rho_imag", std::move(im)},
                 {"target", minus ? "(|gg> - i|ee>)/sqrt2" : "(|gg> + i|ee>)/sqrt2"},
                 {"fidelity", f},
                 {"fidelity_plus", r.fidelity_plus},
                 {"fidelity_minus", r.fidelity_minus},
                 {"gate_distance", nan_to_null(r.gate_distance)}};
    o.lines.push_back("t_b = " + format_double(r.t_b * 1e3) +
                      " ns, fidelity " + format_double(f));
    r.populations.rescale_column("t_us", "t_ns", 1e3);
    o.tables.push_back(
        {"", std::move(r.populations), {{"P_gg", "P_ge", "P_eg", "P_ee"}}});
    return o;
}

inline Outcome run_coupling(const ExperimentConfig &c) {
    const auto &k = c.coupling;
    const auto e = effective_coupling(
        mhz_to_angular(k.g_a_mhz), mhz_to_angular(k.g_b_mhz),
        mhz_to_angular(k.delta_a_mhz), mhz_to_angular(k.delta_b_mhz),
        mhz_to_angular(k.omega_ge_a_mhz), mhz_to_angular(k.omega_ge_b_mhz));
    SweepResult t({}, {"J_mhz", "omega_bar_ge_a_mhz", "omega_bar_ge_b_mhz"});
    t.add_row({angular_to_mhz(e.coupling), angular_to_mhz(e.shifted_a),
               angular_to_mhz(e.shifted_b)});
    Outcome o;
    o.summary = {{"J_mhz", angular_to_mhz(e.coupling)},
                 {"omega_bar_ge_a_mhz", angular_to_mhz(e.shifted_a)},
                 {"omega_bar_ge_b_mhz", angular_to_mhz(e.shifted_b)},
                 {"warnings", e.warnings}};
    o.lines.push_back("J/2pi = " + format_double(angular_to_mhz(e.coupling)) +
                      " MHz");
    for (const auto &w : e.warnings) {
        o.lines.push_back("warning: " + w);
    }
    o.tables.push_back({"", std::move(t), {}});
    return o;
}

inline Outcome run_fit(const ExperimentConfig &c) {
    const auto &f = c.fit;
    std::vector<double> t_us;
    std::vector<double> p;
    if (!f.input.empty()) {
        const auto data = parse_csv(read_text_file(f.input));
        for (double t : data.values("t_ns")) {
            t_us.push_back(ns_to_us(t));
        }
        p = data.values(f.column);
    } else {
        t_us = grid_us(c.time);
        std::mt19937_64 rng(c.seed);
        std::normal_distribution<double> noise(0.0, 1.0);
        const double j = mhz_to_angular(f.j_mhz);
        for (double t : t_us) {
            const double n = f.noise > 0.0 ? f.noise * noise(rng) : 0.0;
            p.push_back(f.amplitude * std::cos(j * t) + f.offset + n);
        }
    }
    const auto fit = fit_exchange(t_us, p);
    SweepResult t({"t_ns"}, {f.column, f.column + "_fit"});
    for (std::size_t i = 0; i < t_us.size(); ++i) {
        t.add_row({t_us[i] * 1e3, p[i],
                   fit.amplitude * std::cos(fit.coupling * t_us[i]) + fit.offset});
    }
    Outcome o;
    o.summary = {{"amplitude", fit.amplitude},
                 {"J_mhz", angular_to_mhz(fit.coupling)},
                 {"offset", fit.offset},
                 {"rms_residual", fit.rms_residual}};
    o.lines.push_back("P = " + format_double(fit.amplitude) + " cos(J t) + " +
                      format_double(fit.offset) + ", J/2pi = " +
                      format_double(angular_to_mhz(fit.coupling)) + " MHz");
    o.tables.push_back({"", std::move(t), {}});
    return o;
}

} // namespace detail

/**
 * Run `c` and write its artifacts under c.output.dir (created if needed).
 * Output bytes depend only on the config and seed, never on `threads`.
 *
 * Throws IoError (unwritable output, unreadable input), NumericalError
 * (convergence or conservation failure) or std::invalid_argument (a
 * precondition of the experiment).
 */
inline RunReport run(const ExperimentConfig &c,
                     unsigned threads = default_thread_count()) {
    namespace fs = std::filesystem;
    detail::Outcome out;
    switch (c.experiment) {
    case Experiment::CciDynamics: out = detail::run_cci(c); break;
    case Experiment::Spectrum: out = detail::run_spec(c, threads); break;
    case Experiment::Chiral: out = detail::run_chiral(c, threads); break;
    case Experiment::Entangle: out = detail::run_entangle(c); break;
    case Experiment::Coupling: out = detail::run_coupling(c); break;
    case Experiment::Fit: out = detail::run_fit(c); break;
    }

    const fs::path dir(c.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    const std::string stem = c.stem();

    nlohmann::json doc = {{"software", "ccisim"},
                          {"version", std::string(kVersion)},
                          {"experiment", std::string(to_string(c.experiment))},
                          {"config", detail::config_echo(c)},
                          {"summary", out.summary}};
    RunReport report;
    report.summary = out.lines;
    nlohmann::json meta = nlohmann::json::object();
    nlohmann::json tables = nlohmann::json::object();
    for (const auto &t : out.tables) {
        const std::string key = t.suffix.empty() ? "table" : t.suffix;
        meta[key] = t.result.metadata;
        if (c.output.format == OutputFormat::Csv) {
            const fs::path path =
                dir / (t.suffix.empty() ? stem + ".csv" : stem + "_" + t.suffix + ".csv");
            write_csv(path, t.result, t.conservation);
            report.files.push_back(path);
        } else {
            check_conservation(t.result, t.conservation);
            tables[key] = to_json_table(t.result);
        }
    }
    doc["metadata"] = std::move(meta);
    if (c.output.format == OutputFormat::Json) {
        doc["tables"] = std::move(tables);
    }
    const fs::path json_path = dir / (stem + ".json");
    write_json(json_path, doc);
    report.files.push_back(json_path);
    return report;
}

} // namespace ccisim
