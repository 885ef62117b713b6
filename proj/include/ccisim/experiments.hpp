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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccisim/errors.hpp"
#include "ccisim/gates.hpp"
#include "ccisim/linalg.hpp"
#include "ccisim/model.hpp"
#include "ccisim/parallel.hpp"
#include "ccisim/pulses.hpp"
#include "ccisim/spectral.hpp"
#include "ccisim/sweep_result.hpp"

/**
 * @file experiments.hpp
 * End-to-end runs: closed-loop qutrit dynamics and its spectrum, the
 * enantiomer separation scan, entanglement generation in the driven qubit
 * pair, and the coupler analysis (effective exchange and its cosine fit).
 *
 * Internal units: time in us, angular frequencies in rad/us. Frequencies
 * written to tables are ordinary frequencies in MHz.
 */

namespace ccisim {

inline std::vector<double> linspace(double start, double stop,
                                    std::size_t count) {
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = start;
        return v;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = start + step * static_cast<double>(i);
    }
    v.back() = stop;
    return v;
}

// ---------------------------------------------------------------------------
// Closed-loop qutrit dynamics
// ---------------------------------------------------------------------------

enum class EvolutionMode { Direct, Sandwich };

/**
 * Populations P1..P3 versus time starting from |e>.
 *
 * Direct evolves under build_cci_h(p). Sandwich evolves
 * T e^{-i H0 t} T^dagger |e> with H0 = build_h0(map_drives(p)) and the
 * detuning perturbation, if any, conjugated into the H0 frame.
 */
inline SweepResult run_cci_dynamics(const DriveParams &p,
                                    std::span<const double> t_grid,
                                    EvolutionMode mode,
                                    const std::array<double, 3> &detuning = {}) {
    const auto psi0 = StateVector<3>::basis_state(1, kLevelBasis);
    const Matrix<3> t_gate = make_t(p.phi_q);

    EigenSystem<3> es;
    bool sandwich = mode == EvolutionMode::Sandwich;
    if (sandwich) {
        Matrix<3> h0 = build_h0(map_drives(p));
        h0 += t_gate.adjoint() *
              Matrix<3>::diagonal({detuning[0], detuning[1], detuning[2]}) *
              t_gate;
        es = eig_hermitian(h0);
    } else {
        es = eig_hermitian(build_cci_h(p, detuning));
    }

    SweepResult r({"t_us"}, {"P1", "P2", "P3"});
    r.rows.reserve(t_grid.size());
    const auto start = sandwich ? t_gate.adjoint() * psi0.amplitudes()
                                : psi0.amplitudes();
    for (double t : t_grid) {
        Amplitudes<3> psi = expm_i(es, t) * start;
        if (sandwich) {
            psi = t_gate * psi;
        }
        r.add_row({t, std::norm(psi[0]), std::norm(psi[1]), std::norm(psi[2])});
    }
    r.metadata = {{"experiment", "cci-dynamics"},
                  {"mode", sandwich ? "sandwich" : "direct"},
                  {"omega_p", p.omega_p},
                  {"omega_q", p.omega_q},
                  {"omega_s", p.omega_s},
                  {"phi_p", p.phi_p},
                  {"phi_q", p.phi_q},
                  {"phi_s", p.phi_s},
                  {"gauge_phase", p.gauge_phase()},
                  {"detuning", detuning}};
    return r;
}

/// Pairwise gaps |E_m - E_n| in (12, 13, 23) order.
inline std::array<double, 3> energy_gaps(const std::array<double, 3> &e) {
    return {std::abs(e[0] - e[1]), std::abs(e[0] - e[2]),
            std::abs(e[1] - e[2])};
}

/**
 * Recurrence period of the equal-amplitude loop at phase phi: 2 pi / f0,
 * where f0 is the largest angular frequency of which every nonzero gap is
 * an integer multiple (up to 12). Returns nullopt when the gaps are not
 * commensurate at that order.
 */
inline std::optional<double> commensurate_period(double omega, double phi) {
    const auto gaps = energy_gaps(cci_spectrum(omega, phi));
    const double scale = std::abs(omega);
    double smallest = std::numeric_limits<double>::infinity();
    for (double g : gaps) {
        if (g > 1e-9 * scale) {
            smallest = std::min(smallest, g);
        }
    }
    if (!std::isfinite(smallest)) {
        return std::nullopt;
    }
    for (int n = 1; n <= 12; ++n) {
        const double f0 = smallest / n;
        const bool ok = std::ranges::all_of(gaps, [&](double g) {
            if (g <= 1e-9 * scale) {
                return true;
            }
            const double m = g / f0;
            return std::abs(m - std::round(m)) < 1e-9 * std::max(1.0, m);
        });
        if (ok) {
            return kTwoPi / f0;
        }
    }
    return std::nullopt;
}

/// Period of the strongest spectral component of P1 + P2 + P3 magnitudes;
/// used for the time-reversal test when the gaps are not commensurate.
inline double dominant_period(const SweepResult &r) {
    const auto t = r.values("t_us");
    const double dt = uniform_spacing(t);
    std::vector<double> total;
    for (const char *name : {"P1", "P2", "P3"}) {
        const auto p = r.values(name);
        const auto mag = magnitude_spectrum(detrend_and_window(p), 8 * p.size());
        if (total.empty()) {
            total = mag;
        } else {
            for (std::size_t k = 0; k < mag.size(); ++k) {
                total[k] += mag[k];
            }
        }
    }
    const auto it = std::max_element(total.begin() + 1, total.end());
    const auto k = static_cast<double>(std::distance(total.begin(), it));
    const double n = static_cast<double>(8 * t.size());
    if (k == 0.0 || !(*it > 0.0)) {
        throw std::invalid_argument("dominant_period: flat populations");
    }
    return n * dt / k;
}

/**
 * Time-reversal defect max_t sum_k |P_k(t) - P_k(T0 - t)| over the grid
 * points in [0, T0], with P(T0 - t) linearly interpolated. The grid must
 * cover [0, T0]; a single-point grid gives 0.
 */
inline double trs_metric(const SweepResult &r, double period,
                         const std::vector<std::string> &columns = {"P1", "P2",
                                                                    "P3"}) {
    const auto t = r.values("t_us");
    if (t.size() <= 1) {
        return 0.0;
    }
    const double slack = 1e-9 * std::max(1.0, std::abs(period));
    if (t.front() > slack || t.back() < period - slack) {
        throw std::invalid_argument("trs_metric: grid does not cover [0, T0]");
    }
    if (!std::ranges::is_sorted(t)) {
        throw std::invalid_argument("trs_metric: grid must be increasing");
    }
    std::vector<std::vector<double>> pops;
    for (const auto &c : columns) {
        pops.push_back(r.values(c));
    }
    auto interp = [&](const std::vector<double> &p, double x) {
        const auto it = std::ranges::lower_bound(t, x);
        if (it == t.begin()) {
            return p.front();
        }
        if (it == t.end()) {
            return p.back();
        }
        const auto j = static_cast<std::size_t>(std::distance(t.begin(), it));
        const double w = (x - t[j - 1]) / (t[j] - t[j - 1]);
        return (1.0 - w) * p[j - 1] + w * p[j];
    };
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < -slack || t[i] > period + slack) {
            continue;
        }
        double s = 0.0;
        for (const auto &p : pops) {
            s += std::abs(p[i] - interp(p, period - t[i]));
        }
        worst = std::max(worst, s);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Spectrum from population dynamics
// ---------------------------------------------------------------------------

struct SpectrumRun {
    SweepResult magnitude;  ///< (phi, freq_mhz) -> magnitude
    SweepResult peaks;      ///< (phi) -> freq_mhz, magnitude, offset_bins
    SweepResult gaps;       ///< (phi) -> E1..E3 (rad/us), gaps (MHz)
    double bin_width_mhz = 0.0;
    double max_offset_bins = 0.0;  ///< worst peak distance to an exact gap
};

/**
 * For every phi: evolve |e> under the equal-amplitude loop (plus optional
 * diagonal perturbation), then sum the magnitude spectra of the
 * mean-subtracted, Hann-windowed P1, P2, P3. Peaks are local maxima above
 * 5% of the largest bin; each is compared against the exact gaps
 * |E_m - E_n| / 2 pi.
 *
 * Preconditions (std::invalid_argument otherwise): uniform t grid, sampling
 * rate above 4 x the largest gap frequency, and a duration of at least ten
 * periods of the smallest gap that is not degenerate (gap > 1e-3 omega).
 */
inline SpectrumRun run_spectrum(double omega, std::span<const double> phi_grid,
                                std::span<const double> t_grid,
                                const std::array<double, 3> &detuning = {},
                                unsigned threads = 1) {
    const double dt = uniform_spacing(t_grid);
    const std::size_t n = t_grid.size();
    const double duration = t_grid.back() - t_grid.front();

    auto spectrum_at = [&](double phi) {
        const bool perturbed = std::ranges::any_of(
            detuning, [](double d) { return d != 0.0; });
        if (!perturbed) {
            auto e = cci_spectrum(omega, phi);
            std::ranges::sort(e);
            return e;
        }
        return eig_hermitian(build_cci_h(DriveParams::uniform(omega, phi),
                                         detuning))
            .values;
    };

    double max_gap = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (double phi : phi_grid) {
        for (double g : energy_gaps(spectrum_at(phi))) {
            max_gap = std::max(max_gap, g);
            if (g > 1e-3 * std::abs(omega)) {
                min_gap = std::min(min_gap, g);
            }
        }
    }
    if (1.0 / dt <= 4.0 * max_gap / kTwoPi) {
        throw std::invalid_argument(
            "run_spectrum: sampling rate below 4x the largest gap frequency "
            "(Nyquist)");
    }
    if (std::isfinite(min_gap) && duration < 10.0 * kTwoPi / min_gap) {
        throw std::invalid_argument(
            "run_spectrum: duration shorter than ten periods of the smallest "
            "gap");
    }

    const double df = 1.0 / (static_cast<double>(n) * dt);  // MHz
    struct PerPhi {
        std::vector<double> mag;
        std::array<double, 3> energies;
    };
    const auto results = parallel_map(phi_grid.size(), threads, [&](std::size_t i) {
        const double phi = phi_grid[i];
        const auto dyn = run_cci_dynamics(DriveParams::uniform(omega, phi),
                                          t_grid, EvolutionMode::Direct,
                                          detuning);
        std::vector<double> total(n / 2 + 1, 0.0);
        for (const char *name : {"P1", "P2", "P3"}) {
            const auto mag = magnitude_spectrum(detrend_and_window(dyn.values(name)));
            for (std::size_t k = 0; k < total.size(); ++k) {
                total[k] += mag[k];
            }
        }
        return PerPhi{std::move(total), spectrum_at(phi)};
    });

    SpectrumRun out;
    out.bin_width_mhz = df;
    out.magnitude = SweepResult({"phi", "freq_mhz"}, {"magnitude"});
    out.peaks = SweepResult({"phi"}, {"freq_mhz", "magnitude", "offset_bins"});
    out.gaps = SweepResult({"phi"}, {"E1", "E2", "E3", "gap12_mhz",
                                     "gap13_mhz", "gap23_mhz"});
    for (std::size_t i = 0; i < phi_grid.size(); ++i) {
        const double phi = phi_grid[i];
        const auto &[mag, e] = results[i];
        const auto gaps = energy_gaps(e);
        out.gaps.add_row({phi, e[0], e[1], e[2], gaps[0] / kTwoPi,
                          gaps[1] / kTwoPi, gaps[2] / kTwoPi});
        for (std::size_t k = 0; k < mag.size(); ++k) {
            out.magnitude.add_row({phi, static_cast<double>(k) * df, mag[k]});
        }
        for (std::size_t k : find_peaks(mag)) {
            const double f = static_cast<double>(k) * df;
            double off = std::numeric_limits<double>::infinity();
            for (double g : gaps) {
                off = std::min(off, std::abs(f - g / kTwoPi) / df);
            }
            out.max_offset_bins = std::max(out.max_offset_bins, off);
            out.peaks.add_row({phi, f, mag[k], off});
        }
    }
    const nlohmann::json meta = {{"experiment", "spectrum"},
                                 {"omega", omega},
                                 {"detuning", detuning},
                                 {"dt_us", dt},
                                 {"samples", n},
                                 {"bin_width_mhz", df}};
    out.magnitude.metadata = meta;
    out.peaks.metadata = meta;
    out.gaps.metadata = meta;
    return out;
}

// ---------------------------------------------------------------------------
// Enantiomer separation
// ---------------------------------------------------------------------------

struct ChiralRun {
    SweepResult map;    ///< (t_over_tau, A) -> P3_L, P3_R
    SweepResult final;  ///< (A) -> P3_L, P3_R, contrast
    double a_star = 0.0;
    double p3_l_star = 0.0;
    double p3_r_star = 0.0;
    double max_halving_residual = 0.0;
};

/**
 * For every pulse area A in `a_grid`, propagate |1> through the L and R
 * schedules derived from `base` (its tau, phi, window and dt; omega0 is
 * set from A) and record P3(t). `samples` bounds the number of time
 * points kept per run in the map. A* maximizes P3_L - P3_R at the final
 * time; the first maximum wins on ties.
 */
inline ChiralRun run_chiral_separation(const PulseSchedule &base,
                                       std::span<const double> a_grid,
                                       std::size_t samples = 201,
                                       unsigned threads = 1,
                                       const PropagationOptions &opt_in = {}) {
    if (a_grid.empty()) {
        throw std::invalid_argument("run_chiral_separation: empty A grid");
    }
    const auto steps = static_cast<std::size_t>(
        std::ceil((base.t_end - base.t_start) / base.dt - 1e-9));
    PropagationOptions opt = opt_in;
    opt.record_every =
        std::max<std::size_t>(1, steps / std::max<std::size_t>(1, samples - 1));

    const auto trajectories =
        parallel_map(2 * a_grid.size(), threads, [&](std::size_t job) {
            PulseSchedule s = base;
            s.omega0 = a_grid[job / 2] * std::sqrt(kPi) / base.tau;
            s.handedness = job % 2 == 0 ? Handedness::Left : Handedness::Right;
            return run_pulse_schedule(s, opt);
        });

    ChiralRun out;
    out.map = SweepResult({"t_over_tau", "A"}, {"P3_L", "P3_R"});
    out.final = SweepResult({"A"}, {"P3_L", "P3_R", "contrast"});
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        const auto &left = trajectories[2 * i];
        const auto &right = trajectories[2 * i + 1];
        if (left.times.size() != right.times.size()) {
            throw NumericalError(
                "run_chiral_separation: L/R runs used different step sizes",
                std::abs(left.dt - right.dt));
        }
        for (std::size_t k = 0; k < left.times.size(); ++k) {
            out.map.add_row({left.times[k] / base.tau, a_grid[i],
                             left.states[k].probabilities()[2],
                             right.states[k].probabilities()[2]});
        }
        const double pl = left.states.back().probabilities()[2];
        const double pr = right.states.back().probabilities()[2];
        out.final.add_row({a_grid[i], pl, pr, pl - pr});
        out.max_halving_residual =
            std::max({out.max_halving_residual, left.halving_residual,
                      right.halving_residual});
        if (pl - pr > best) {
            best = pl - pr;
            out.a_star = a_grid[i];
            out.p3_l_star = pl;
            out.p3_r_star = pr;
        }
    }
    const nlohmann::json meta = {{"experiment", "chiral"},
                                 {"tau", base.tau},
                                 {"phi", base.phi},
                                 {"t_start", base.t_start},
                                 {"t_end", base.t_end},
                                 {"dt", base.dt},
                                 {"a_star", out.a_star},
                                 {"p3_l_at_a_star", out.p3_l_star},
                                 {"p3_r_at_a_star", out.p3_r_star}};
    out.map.metadata = meta;
    out.final.metadata = meta;
    return out;
}

// ---------------------------------------------------------------------------
// Entanglement generation in the driven qubit pair
// ---------------------------------------------------------------------------

/// (|gg> + sign i |ee>) / sqrt2
inline StateVector<4> bell_target(double sign) {
    return StateVector<4>({1.0, 0.0, 0.0, sign * kI}, kTwoQubitBasis);
}

/// max |a - c b| over components, minimized over the global phase c.
inline double state_distance_up_to_phase(const StateVector<4> &a,
                                         const StateVector<4> &b) {
    const cplx ov = inner(b.amplitudes(), a.amplitudes());
    const cplx c = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx{1.0};
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        d = std::max(d, std::abs(a[k] - c * b[k]));
    }
    return d;
}

struct EntanglementRun {
    SweepResult populations;  ///< (t_us) -> P_gg, P_ge, P_eg, P_ee, P_gg_plus_ee
    double t_b = 0.0;
    StateVector<4> state_at_tb = StateVector<4>::basis_state(0, kTwoQubitBasis);
    DensityMatrix<4> rho_at_tb = DensityMatrix<4>::maximally_mixed();
    double fidelity_plus = 0.0;   ///< against (|gg> + i|ee>)/sqrt2
    double fidelity_minus = 0.0;  ///< against (|gg> - i|ee>)/sqrt2
    /// Distance to U_L psi0 (phi = +pi/2) or U_R psi0 (phi = -pi/2) up to a
    /// global phase; NaN for other phases.
    double gate_distance = std::numeric_limits<double>::quiet_NaN();
};

inline EntanglementRun run_entanglement(const TwoQubitParams &q,
                                        std::span<const double> t_grid,
                                        const StateVector<4> &psi0) {
    if (!(q.coupling > 0.0)) {
        throw std::invalid_argument("run_entanglement: J must be positive");
    }
    const auto es = eig_hermitian(build_two_qubit_h(q));
    EntanglementRun out;
    out.populations = SweepResult(
        {"t_us"}, {"P_gg", "P_ge", "P_eg", "P_ee", "P_gg_plus_ee"});
    for (double t : t_grid) {
        const auto p = psi0.evolved(expm_i(es, t)).probabilities();
        out.populations.add_row({t, p[0], p[1], p[2], p[3], p[0] + p[3]});
    }
    out.t_b = entangling_time(q.coupling);
    out.state_at_tb = psi0.evolved(expm_i(es, out.t_b));
    out.rho_at_tb = DensityMatrix<4>::pure(out.state_at_tb);
    out.fidelity_plus = fidelity(out.rho_at_tb, bell_target(+1.0));
    out.fidelity_minus = fidelity(out.rho_at_tb, bell_target(-1.0));

    const auto gates = closed_form_ul_ur();
    const double w = wrap_phase(q.phi);
    if (std::abs(w - kPi / 2.0) < 1e-12) {
        out.gate_distance =
            state_distance_up_to_phase(out.state_at_tb, psi0.evolved(gates.u_l));
    } else if (std::abs(w + kPi / 2.0) < 1e-12) {
        out.gate_distance =
            state_distance_up_to_phase(out.state_at_tb, psi0.evolved(gates.u_r));
    }
    out.populations.metadata = {{"experiment", "entangle"},
                                {"J", q.coupling},
                                {"phi", q.phi},
                                {"t_b_us", out.t_b},
                                {"fidelity_plus", out.fidelity_plus},
                                {"fidelity_minus", out.fidelity_minus}};
    return out;
}

// ---------------------------------------------------------------------------
// Coupler analysis
// ---------------------------------------------------------------------------

struct EffectiveCoupling {
    double coupling = 0.0;  ///< J = g_a g_b (1/Delta_a + 1/Delta_b) / 2
    double shifted_a = 0.0;  ///< omega_ge^a + g_a^2 / Delta_a
    double shifted_b = 0.0;
    std::vector<std::string> warnings;
};

/**
 * Dispersive exchange between two qubits mediated by a detuned coupler.
 * Delta_j = omega_ge^j - omega_ge^c; an infinite Delta_j drops that arm.
 * Warns when |g_j / Delta_j| > 0.3.
 */
inline EffectiveCoupling effective_coupling(double g_a, double g_b,
                                            double delta_a, double delta_b,
                                            double omega_ge_a = 0.0,
                                            double omega_ge_b = 0.0) {
    if (delta_a == 0.0 || delta_b == 0.0) {
        throw std::invalid_argument(
            "effective_coupling: zero qubit-coupler detuning");
    }
    EffectiveCoupling c;
    c.coupling = g_a * g_b * (1.0 / delta_a + 1.0 / delta_b) / 2.0;
    c.shifted_a = omega_ge_a + g_a * g_a / delta_a;
    c.shifted_b = omega_ge_b + g_b * g_b / delta_b;
    if (std::abs(g_a / delta_a) > 0.3) {
        c.warnings.push_back("|g_a / Delta_a| > 0.3: outside dispersive regime");
    }
    if (std::abs(g_b / delta_b) > 0.3) {
        c.warnings.push_back("|g_b / Delta_b| > 0.3: outside dispersive regime");
    }
    return c;
}

struct ExchangeFit {
    double amplitude = 0.0;
    double coupling = 0.0;  ///< angular frequency J in rad per time unit
    double offset = 0.0;
    double rms_residual = 0.0;
};

namespace detail {

struct LinearFit {
    double amplitude;
    double offset;
    double sse;
};

/// Least-squares amplitude and offset of a cos(j t) + b at fixed j.
inline LinearFit fit_at_frequency(std::span<const double> t,
                                  std::span<const double> p, double j) {
    double scc = 0.0, sc = 0.0, sp = 0.0, scp = 0.0;
    const auto n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double c = std::cos(j * t[i]);
        scc += c * c;
        sc += c;
        sp += p[i];
        scp += c * p[i];
    }
    const double det = scc * n - sc * sc;
    LinearFit f{0.0, sp / n, 0.0};
    if (std::abs(det) > 1e-12 * n * n) {
        f.amplitude = (scp * n - sc * sp) / det;
        f.offset = (scc * sp - sc * scp) / det;
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = p[i] - f.amplitude * std::cos(j * t[i]) - f.offset;
        f.sse += r * r;
    }
    return f;
}

} // namespace detail

/**
 * Fit P = A cos(J t) + B. J is seeded by the peak of the zero-padded,
 * Hann-windowed spectrum, then refined by golden-section search on the
 * residual with A and B solved linearly at each trial J.
 *
 * Requires a uniform grid spanning at least two oscillation periods;
 * throws std::invalid_argument for a flat series.
 */
inline ExchangeFit fit_exchange(std::span<const double> t,
                                std::span<const double> p) {
    if (t.size() != p.size() || t.size() < 8) {
        throw std::invalid_argument("fit_exchange: need >= 8 matching samples");
    }
    const double dt = uniform_spacing(t);
    const double mean =
        std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
    double var = 0.0;
    for (double v : p) {
        var += (v - mean) * (v - mean);
    }
    if (std::sqrt(var / static_cast<double>(p.size())) < 1e-12) {
        throw std::invalid_argument("fit_exchange: flat series, no dominant peak");
    }

    constexpr std::size_t kPad = 16;
    const std::size_t n = kPad * t.size();
    const auto mag = magnitude_spectrum(detrend_and_window(p), n);
    const auto it = std::max_element(mag.begin() + 1, mag.end());
    const auto k = static_cast<double>(std::distance(mag.begin(), it));
    const double bin = kTwoPi / (static_cast<double>(n) * dt);
    const double seed = k * bin;
    const double duration = t.back() - t.front();
    if (seed * duration < 2.0 * kTwoPi * 0.9) {
        throw std::invalid_argument(
            "fit_exchange: series spans fewer than two oscillation periods");
    }

    // the unpadded bin is kPad padded bins wide
    double lo = std::max(bin, seed - kPad * bin);
    double hi = seed + kPad * bin;
    auto sse = [&](double j) { return detail::fit_at_frequency(t, p, j).sse; };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = sse(x1);
    double f2 = sse(x2);
    while (hi - lo > 1e-13 * hi) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = sse(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = sse(x2);
        }
    }
    const double j = 0.5 * (lo + hi);
    const auto lin = detail::fit_at_frequency(t, p, j);
    return {lin.amplitude, j, lin.offset,
            std::sqrt(lin.sse / static_cast<double>(t.size()))};
}

} // namespace ccisim
