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
#include <concepts>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccisim/errors.hpp"
#include "ccisim/linalg.hpp"
#include "ccisim/model.hpp"

/**
 * @file pulses.hpp
 * Gaussian pump/Stokes envelopes with a counterdiabatic loop-closing pulse,
 * and a time-ordered propagator for time-dependent Hamiltonians.
 *
 * Times here are in units of the pulse width tau unless stated otherwise;
 * amplitudes are in rad per unit time.
 */

namespace ccisim {

/**
 * Pulse sequence for the enantiomer experiment. The Stokes pulse is
 * centered at -tau/2 and the pump at +tau/2 (counterintuitive order); both
 * have peak omega0. The pulse area is defined by
 * integral Omega dt = omega0 tau sqrt(pi) = A pi.
 */
struct PulseSchedule {
    double omega0 = 0.0;
    double tau = 1.0;
    Handedness handedness = Handedness::Left;
    double phi = -kPi / 2.0;
    double t_start = -5.0;
    double t_end = 5.0;
    double dt = 1.0 / 2000.0;

    /// Schedule with the given area A, default window [-5 tau, 5 tau] and
    /// dt = tau / 2000.
    static PulseSchedule with_area(double area, double tau = 1.0,
                                   Handedness h = Handedness::Left,
                                   double phi = -kPi / 2.0) {
        PulseSchedule s;
        s.tau = tau;
        s.omega0 = area * std::sqrt(kPi) / tau;
        s.handedness = h;
        s.phi = phi;
        s.t_start = -5.0 * tau;
        s.t_end = 5.0 * tau;
        s.dt = tau / 2000.0;
        return s;
    }

    [[nodiscard]] double area() const {
        return omega0 * tau / std::sqrt(kPi);
    }

    /// Throws std::invalid_argument unless A > 0, tau > 0, dt > 0 and the
    /// window covers at least [-4 tau, +4 tau] around both pulse centers.
    void validate() const {
        if (!(tau > 0.0) || !(dt > 0.0) || !(omega0 > 0.0)) {
            throw std::invalid_argument(
                "PulseSchedule: tau, dt and area must be positive");
        }
        if (t_start > -4.5 * tau || t_end < 4.5 * tau) {
            throw std::invalid_argument(
                "PulseSchedule: window must cover centers +- 4 tau");
        }
    }
};

struct PumpStokes {
    double pump;
    double stokes;
};

inline PumpStokes gaussian_pair(const PulseSchedule &s, double t) {
    const double up = (t - s.tau / 2.0) / s.tau;
    const double us = (t + s.tau / 2.0) / s.tau;
    return {s.omega0 * std::exp(-up * up), s.omega0 * std::exp(-us * us)};
}

struct MixingAngle {
    double theta;
    double theta_dot;
};

/// tan(theta) = Omega_p / Omega_s = e^{2t/tau}, so theta = atan(e^{2t/tau})
/// and dtheta/dt = sech(2t/tau) / tau.
inline MixingAngle mixing_angle(const PulseSchedule &s, double t) {
    const double x = 2.0 * t / s.tau;
    return {std::atan(std::exp(x)), 1.0 / (s.tau * std::cosh(x))};
}

/// Signed counterdiabatic amplitude: +2 dtheta/dt for L, -2 dtheta/dt for R.
inline double counterdiabatic(const PulseSchedule &s, double t) {
    return handedness_sign(s.handedness) * 2.0 * mixing_angle(s, t).theta_dot;
}

/// Full enantiomer Hamiltonian at time t for the schedule's handedness.
inline Matrix<3> chiral_hamiltonian(const PulseSchedule &s, double t) {
    const auto [pump, stokes] = gaussian_pair(s, t);
    const double q = 2.0 * mixing_angle(s, t).theta_dot;
    return build_chiral_h(pump, stokes, q, s.handedness, s.phi);
}

/// Dark state cos(theta)|1> - sin(theta)|3>.
inline StateVector<3> adiabatic_dark_state(const PulseSchedule &s, double t) {
    const double th = mixing_angle(s, t).theta;
    return StateVector<3>({std::cos(th), 0.0, -std::sin(th)}, kLevelBasis);
}

// ---------------------------------------------------------------------------
// Time-ordered propagation
// ---------------------------------------------------------------------------

template <std::size_t N>
struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector<N>> states;
    double dt = 0.0;             ///< accepted step
    double halving_residual = 0.0;  ///< max |P(dt) - P(dt/2)| at the end time
};

template <typename F, std::size_t N>
concept HamiltonianOfTime = requires(const F &f, double t) {
    { f(t) } -> std::convertible_to<Matrix<N>>;
};

namespace detail {

/// Fixed-step midpoint exponential integrator. Records the state at t0 and
/// after every `stride`-th step (always including the final time).
template <std::size_t N, typename F>
Trajectory<N> propagate_fixed(const F &h_of_t, const StateVector<N> &psi0,
                              double t0, double t1, std::size_t steps,
                              std::size_t stride) {
    const double dt = (t1 - t0) / static_cast<double>(steps);
    Trajectory<N> tr;
    tr.dt = dt;
    tr.times.reserve(steps / stride + 2);
    tr.states.reserve(steps / stride + 2);
    tr.times.push_back(t0);
    tr.states.push_back(psi0);

    Amplitudes<N> psi = psi0.amplitudes();
    for (std::size_t k = 0; k < steps; ++k) {
        const double tm = t0 + (static_cast<double>(k) + 0.5) * dt;
        psi = expm_i(Matrix<N>(h_of_t(tm)), dt) * psi;
        if ((k + 1) % stride == 0 || k + 1 == steps) {
            const double n = norm(psi);
            if (std::abs(n - 1.0) > 1e-9) {
                throw NumericalError("propagate_td: norm drift",
                                     std::abs(n - 1.0));
            }
            tr.times.push_back(t0 + static_cast<double>(k + 1) * dt);
            tr.states.emplace_back(psi, psi0.labels());
        }
    }
    return tr;
}

template <std::size_t N>
double max_population_diff(const StateVector<N> &a, const StateVector<N> &b) {
    const auto pa = a.probabilities();
    const auto pb = b.probabilities();
    double m = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        m = std::max(m, std::abs(pa[k] - pb[k]));
    }
    return m;
}

} // namespace detail

struct PropagationOptions {
    double convergence = 1e-6;  ///< max |P(dt) - P(dt/2)| at the end time
    int max_halvings = 8;
    std::size_t record_every = 1;  ///< steps between recorded states
    bool adaptive = true;
};

/**
 * Evolve psi0 from t0 to t1 under a time-dependent Hamiltonian with the
 * piecewise-constant midpoint rule psi <- exp(-i H(t + dt/2) dt) psi.
 *
 * With `adaptive`, the step is halved until the final populations at dt and
 * dt/2 differ by less than `convergence`; the coarser accepted run is
 * returned. NumericalError carries the last residual if `max_halvings` is
 * exhausted. `record_every` is interpreted at the requested dt and scaled
 * with each halving so the recorded times stay the same.
 */
template <std::size_t N, typename F>
    requires HamiltonianOfTime<F, N>
Trajectory<N> propagate_td(const F &h_of_t, const StateVector<N> &psi0,
                           double t0, double t1, double dt,
                           const PropagationOptions &opt = {}) {
    if (!(dt > 0.0) || !(t1 >= t0)) {
        throw std::invalid_argument("propagate_td: need dt > 0 and t1 >= t0");
    }
    if (t1 == t0) {
        Trajectory<N> tr;
        tr.times = {t0};
        tr.states = {psi0};
        tr.dt = dt;
        return tr;
    }
    std::size_t steps =
        static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
    std::size_t stride = std::max<std::size_t>(1, opt.record_every);
    stride = std::min(stride, steps);

    auto coarse = detail::propagate_fixed(h_of_t, psi0, t0, t1, steps, stride);
    if (!opt.adaptive) {
        return coarse;
    }
    double residual = 0.0;
    for (int h = 0; h <= opt.max_halvings; ++h) {
        auto fine = detail::propagate_fixed(h_of_t, psi0, t0, t1, 2 * steps,
                                            2 * stride);
        residual = detail::max_population_diff(coarse.states.back(),
                                               fine.states.back());
        if (residual < opt.convergence) {
            coarse.halving_residual = residual;
            return coarse;
        }
        coarse = std::move(fine);
        steps *= 2;
        stride *= 2;
    }
    throw NumericalError("propagate_td: step halving did not converge",
                         residual);
}

/// One run of the enantiomer experiment from |1>.
inline Trajectory<3> run_pulse_schedule(const PulseSchedule &s,
                                        const PropagationOptions &opt = {}) {
    s.validate();
    const auto h = [&s](double t) { return chiral_hamiltonian(s, t); };
    return propagate_td<3>(h, StateVector<3>::basis_state(0, kLevelBasis),
                           s.t_start, s.t_end, s.dt, opt);
}

} // namespace ccisim
