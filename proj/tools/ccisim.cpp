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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ccisim/ccisim.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2 };

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    unsigned threads = ccisim::default_thread_count();
    std::optional<std::uint64_t> seed;
    bool print_config = false;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--config", o.config_path, "INI configuration file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out_dir, "Output directory (overrides [output] dir)");
    cmd->add_option("--threads", o.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Seed for randomized inputs");
}

int run_experiment(ccisim::Experiment e, const CommonOptions &o) {
    ccisim::ExperimentConfig c = ccisim::ExperimentConfig::defaults(e);
    if (!o.config_path.empty()) {
        c = ccisim::parse_config(ccisim::read_text_file(o.config_path), e);
    }
    if (!o.out_dir.empty()) {
        c.output.dir = o.out_dir;
    }
    if (o.seed) {
        c.seed = *o.seed;
    }
    if (o.print_config) {
        std::cout << ccisim::emit_config(c);
        return kOk;
    }
    const auto report = ccisim::run(c, o.threads);
    for (const auto &line : report.summary) {
        std::cout << ccisim::to_string(e) << ": " << line << "\n";
    }
    for (const auto &f : report.files) {
        std::cout << "wrote " << f.string() << "\n";
    }
    return kOk;
}

int run_selftest(const CommonOptions &o, std::size_t trials) {
    const auto results = ccisim::run_selftest(o.seed.value_or(0), trials);
    bool ok = true;
    double total = 0.0;
    for (const auto &r : results) {
        ok = ok && r.passed;
        total += r.seconds;
        std::printf("[%s] %-12s %-50s worst %.3e  tol %.1e  %.2fs%s%s\n",
                    r.passed ? "PASS" : "FAIL", r.suite.c_str(), r.name.c_str(),
                    r.worst, r.tolerance, r.seconds,
                    r.error.empty() ? "" : "  error: ", r.error.c_str());
    }
    std::printf("selftest: %s (%zu checks, %.2fs)\n", ok ? "all passed" : "FAILED",
                results.size(), total);
    return ok ? kOk : kNumericalError;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"ccisim: closed-contour interaction simulator"};
    app.set_version_flag("--version", std::string(ccisim::kVersion));
    app.require_subcommand(1);

    CommonOptions opts;
    std::optional<ccisim::Experiment> chosen;
    const struct {
        ccisim::Experiment e;
        const char *help;
    } commands[] = {
        {ccisim::Experiment::CciDynamics, "Qutrit populations under the closed loop"},
        {ccisim::Experiment::Spectrum, "FFT spectrum of the populations vs phase"},
        {ccisim::Experiment::Chiral, "Enantiomer separation scan over pulse area"},
        {ccisim::Experiment::Entangle, "Entanglement generation in the qubit pair"},
        {ccisim::Experiment::Coupling, "Dispersive effective exchange coupling"},
        {ccisim::Experiment::Fit, "Fit P = A cos(J t) + B to a series"},
    };
    for (const auto &c : commands) {
        auto *cmd = app.add_subcommand(std::string(ccisim::to_string(c.e)), c.help);
        add_common(cmd, opts);
        cmd->add_flag("--print-config", opts.print_config,
                      "Print the effective configuration and exit");
        cmd->callback([&chosen, e = c.e] { chosen = e; });
    }
    std::size_t trials = 200;
    auto *self = app.add_subcommand("selftest", "Run the invariant suites");
    add_common(self, opts);
    self->add_option("--trials", trials, "Random instances per check")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (self->parsed()) {
            return run_selftest(opts, trials);
        }
        return run_experiment(*chosen, opts);
    } catch (const ccisim::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ccisim::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const ccisim::IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}
