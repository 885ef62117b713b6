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

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ccisim/experiments.hpp"
#include "ccisim/gates.hpp"
#include "ccisim/io.hpp"
#include "ccisim/linalg.hpp"
#include "ccisim/model.hpp"
#include "ccisim/pulses.hpp"

/**
 * @file selftest.hpp
 * Invariant suites run by `ccisim selftest`: Hermiticity, unitarity,
 * spectral reconstruction, norm conservation, step-halving convergence and
 * the model identities. Each check reports its worst observed deviation.
 */

namespace ccisim {

struct CheckResult {
    std::string suite;
    std::string name;
    double worst = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    bool passed = false;
    std::string error;  ///< set when the check threw
};

namespace selftest_detail {

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <std::size_t N>
Matrix<N> random_hermitian(Rng &rng, double scale = 1.0) {
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i) {
        m(i, i) = scale * uniform(rng, -1.0, 1.0);
        for (std::size_t j = i + 1; j < N; ++j) {
            const cplx z{scale * uniform(rng, -1.0, 1.0),
                         scale * uniform(rng, -1.0, 1.0)};
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

template <std::size_t N>
StateVector<N> random_state(Rng &rng) {
    Amplitudes<N> a;
    for (auto &z : a) {
        z = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    }
    return StateVector<N>(a, default_basis<N>());
}

inline DriveParams random_drive(Rng &rng) {
    const double scale = mhz_to_angular(20.0);
    return {scale * uniform(rng, 0.0, 1.0), scale * uniform(rng, 0.0, 1.0),
            scale * uniform(rng, 0.0, 1.0), uniform(rng, -kPi, kPi),
            uniform(rng, -kPi, kPi),        uniform(rng, -kPi, kPi)};
}

template <std::size_t N>
double hermitian_defect(const Matrix<N> &m) {
    return max_abs_diff(m, m.adjoint());
}

template <std::size_t N>
double unitary_defect(const Matrix<N> &u) {
    return max_abs_diff(u.adjoint() * u, Matrix<N>::identity());
}

template <std::size_t N>
double eigen_defect(const Matrix<N> &m) {
    const auto es = eig_hermitian(m);
    double d = unitary_defect(es.vectors);
    Matrix<N> lam;
    for (std::size_t k = 0; k < N; ++k) {
        lam(k, k) = es.values[k];
    }
    d = std::max(d, max_abs_diff(es.vectors * lam * es.vectors.adjoint(), m));
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (es.values[k] > es.values[k + 1]) {
            d = std::max(d, es.values[k] - es.values[k + 1]);
        }
    }
    return d;
}

struct Check {
    std::string suite;
    std::string name;
    double tolerance;
    std::function<double(Rng &)> body;
};

inline std::vector<Check> checks(std::size_t trials) {
    std::vector<Check> v;

    v.push_back({"hermiticity", "CCI, bare and chiral builders", tol::kHermitian,
                 [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const auto p = random_drive(rng);
                         const std::array<double, 3> delta{
                             uniform(rng, -1, 1), uniform(rng, -1, 1),
                             uniform(rng, -1, 1)};
                         d = std::max(d, hermitian_defect(build_cci_h(p, delta)));
                         d = std::max(d, hermitian_defect(build_h0(map_drives(p))));
                         d = std::max(d, hermitian_defect(build_chiral_h(
                                             p.omega_p, p.omega_s, p.omega_q,
                                             i % 2 ? Handedness::Left
                                                   : Handedness::Right,
                                             p.phi_p)));
                     }
                     return d;
                 }});
    v.push_back({"hermiticity", "two-qubit builders", tol::kHermitian,
                 [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const TwoQubitParams q{mhz_to_angular(uniform(rng, 0.1, 20)),
                                                uniform(rng, -kPi, kPi)};
                         d = std::max(d, hermitian_defect(build_two_qubit_h(q)));
                         d = std::max(d, hermitian_defect(build_two_qubit_h_prime(q)));
                         d = std::max(d, hermitian_defect(build_subspace_hbar(q)));
                     }
                     return d;
                 }});

    v.push_back({"unitarity", "expm_i on random Hermitian (dims 2-4)", tol::kUnitary,
                 [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const double t = uniform(rng, -10.0, 10.0);
                         d = std::max(d, unitary_defect(expm_i(random_hermitian<2>(rng, 5.0), t)));
                         d = std::max(d, unitary_defect(expm_i(random_hermitian<3>(rng, 5.0), t)));
                         d = std::max(d, unitary_defect(expm_i(random_hermitian<4>(rng, 5.0), t)));
                     }
                     return d;
                 }});
    v.push_back({"unitarity", "gate library", tol::kUnitary, [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const double th = uniform(rng, -kTwoPi, kTwoPi);
                         const double ph = uniform(rng, -kPi, kPi);
                         d = std::max(d, unitary_defect(rotation<3>(kG, kE, th, ph)));
                         d = std::max(d, unitary_defect(rotation<3>(kE, kF, th, ph)));
                         d = std::max(d, unitary_defect(rotation<4>(1, 3, th, ph)));
                         d = std::max(d, unitary_defect(make_t(ph)));
                         d = std::max(d, unitary_defect(make_t_from_gates(ph)));
                         d = std::max(d, unitary_defect(make_t_prime(ph)));
                     }
                     const auto g = closed_form_ul_ur();
                     const auto h = decomposed_ul_ur();
                     for (const auto &m : {g.u_l, g.u_r, h.u_l, h.u_r, make_u1(),
                                           make_u_prime_l(), make_u_prime_r()}) {
                         d = std::max(d, unitary_defect(m));
                     }
                     return d;
                 }});

    v.push_back({"spectral", "eigendecomposition reconstruction", 1e-10,
                 [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         d = std::max(d, eigen_defect(random_hermitian<2>(rng, 3.0)));
                         d = std::max(d, eigen_defect(random_hermitian<3>(rng, 3.0)));
                         d = std::max(d, eigen_defect(random_hermitian<4>(rng, 3.0)));
                     }
                     d = std::max(d, eigen_defect(Matrix<3>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
                     return d;
                 }});
    v.push_back({"spectral", "E_k formula vs eigendecomposition (101 phases)",
                 1e-10, [](Rng &) {
                     double d = 0.0;
                     const double om = mhz_to_angular(10.0);
                     for (double phi : linspace(-kPi, kPi, 101)) {
                         auto e = cci_spectrum(om, phi);
                         std::ranges::sort(e);
                         const auto es =
                             eig_hermitian(build_cci_h(DriveParams::uniform(om, phi)));
                         for (std::size_t k = 0; k < 3; ++k) {
                             d = std::max(d, std::abs(e[k] - es.values[k]));
                         }
                     }
                     return d;
                 }});

    v.push_back({"norm", "state evolution under random unitaries", tol::kNorm,
                 [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const auto psi = random_state<4>(rng);
                         const auto u = expm_i(random_hermitian<4>(rng, 4.0),
                                               uniform(rng, 0.0, 5.0));
                         d = std::max(d, std::abs(psi.evolved(u).norm() - 1.0));
                     }
                     return d;
                 }});
    v.push_back({"norm", "population conservation in experiment tables",
                 kConservationTolerance, [](Rng &rng) {
                     double d = 0.0;
                     const auto t = linspace(0.0, 0.3, 301);
                     for (int i = 0; i < 10; ++i) {
                         const auto p = random_drive(rng);
                         for (auto mode : {EvolutionMode::Direct, EvolutionMode::Sandwich}) {
                             d = std::max(d, run_cci_dynamics(p, t, mode)
                                                 .max_population_defect({"P1", "P2", "P3"}));
                         }
                     }
                     const TwoQubitParams q{mhz_to_angular(6.7), kPi / 2.0};
                     for (const char *s : {"gg", "ge", "eg", "ee"}) {
                         const auto r = run_entanglement(
                             q, linspace(0.0, 0.2, 201),
                             StateVector<4>::basis_state(s, kTwoQubitBasis));
                         d = std::max(d, r.populations.max_population_defect(
                                             {"P_gg", "P_ge", "P_eg", "P_ee"}));
                     }
                     return d;
                 }});
    v.push_back({"norm", "time-dependent trajectories", 1e-9, [](Rng &) {
                     double d = 0.0;
                     for (auto h : {Handedness::Left, Handedness::Right}) {
                         auto s = PulseSchedule::with_area(1.23, 1.0, h);
                         const auto tr = run_pulse_schedule(s);
                         for (const auto &psi : tr.states) {
                             d = std::max(d, std::abs(norm(psi.amplitudes()) - 1.0));
                         }
                     }
                     return d;
                 }});

    v.push_back({"step-halving", "|P(dt) - P(dt/2)| at accepted dt", 1e-6,
                 [](Rng &) {
                     double d = 0.0;
                     for (double a : {0.5, 1.23, 2.5}) {
                         for (auto h : {Handedness::Left, Handedness::Right}) {
                             const auto tr =
                                 run_pulse_schedule(PulseSchedule::with_area(a, 1.0, h));
                             d = std::max(d, tr.halving_residual);
                         }
                     }
                     return d;
                 }});
    v.push_back({"step-halving", "constant H reduces to one exponential", 1e-8,
                 [](Rng &rng) {
                     const auto h = random_hermitian<3>(rng, 2.0);
                     const auto psi0 = random_state<3>(rng);
                     const auto tr = propagate_td<3>([&](double) { return h; },
                                                     psi0, 0.0, 2.0, 0.01);
                     const auto ref = psi0.evolved(expm_i(h, 2.0));
                     double d = 0.0;
                     for (std::size_t k = 0; k < 3; ++k) {
                         d = std::max(d, std::abs(tr.states.back()[k] - ref[k]));
                     }
                     return d;
                 }});

    v.push_back({"identities", "T H0 T^dagger = H (conjugation)", 1e-10,
                 [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const auto p = random_drive(rng);
                         const auto t = make_t(p.phi_q);
                         d = std::max(d, max_abs_diff(t * build_h0(map_drives(p)) * t.adjoint(),
                                                      build_cci_h(p)));
                     }
                     return d;
                 }});
    v.push_back({"identities", "direct vs sandwich evolution", 1e-9, [](Rng &rng) {
                     double d = 0.0;
                     for (int i = 0; i < 20; ++i) {
                         const auto p = random_drive(rng);
                         std::vector<double> t(20);
                         for (auto &x : t) {
                             x = uniform(rng, 0.0, 1.0);
                         }
                         const auto a = run_cci_dynamics(p, t, EvolutionMode::Direct);
                         const auto b = run_cci_dynamics(p, t, EvolutionMode::Sandwich);
                         for (std::size_t r = 0; r < t.size(); ++r) {
                             for (std::size_t c = 1; c < 4; ++c) {
                                 d = std::max(d, std::abs(a.rows[r][c] - b.rows[r][c]));
                             }
                         }
                     }
                     return d;
                 }});
    v.push_back({"identities", "gate decompositions (T, T', U_L, U_R)", 1e-10,
                 [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const double ph = uniform(rng, -kPi, kPi);
                         d = std::max(d, max_abs_diff(make_t_from_gates(ph), make_t(ph)));
                         const TwoQubitParams q{mhz_to_angular(uniform(rng, 1, 10)), ph};
                         const auto tp = make_t_prime(ph);
                         d = std::max(d, max_abs_diff(tp * build_two_qubit_h(q) * tp.adjoint(),
                                                      build_two_qubit_h_prime(q)));
                     }
                     const auto g = closed_form_ul_ur();
                     const auto h = decomposed_ul_ur();
                     d = std::max(d, max_abs_diff(g.u_l, h.u_l));
                     d = std::max(d, max_abs_diff(g.u_r, h.u_r));
                     const double j = mhz_to_angular(6.7);
                     const double tb = entangling_time(j);
                     d = std::max(d, distance_up_to_phase(
                                         expm_i(build_two_qubit_h({j, kPi / 2}), tb), g.u_l));
                     d = std::max(d, distance_up_to_phase(
                                         expm_i(build_two_qubit_h({j, -kPi / 2}), tb), g.u_r));
                     return d;
                 }});
    v.push_back({"identities", "dark-state decoupling", 1e-10, [trials](Rng &rng) {
                     double d = 0.0;
                     for (std::size_t i = 0; i < trials; ++i) {
                         const TwoQubitParams q{mhz_to_angular(uniform(rng, 1, 10)),
                                                uniform(rng, -kPi, kPi)};
                         const auto dark = dark_state(q.phi).amplitudes();
                         const auto hd = build_two_qubit_h(q) * dark;
                         const auto b = barred_basis(q.phi);
                         for (std::size_t k = 0; k < 3; ++k) {
                             d = std::max(d, std::abs(inner(b.column(k), hd)));
                         }
                     }
                     return d;
                 }});
    return v;
}

} // namespace selftest_detail

/**
 * Run every invariant suite with a seeded generator. `trials` sets the
 * number of random instances per randomized check.
 */
inline std::vector<CheckResult> run_selftest(std::uint64_t seed = 0,
                                             std::size_t trials = 200) {
    std::vector<CheckResult> out;
    selftest_detail::Rng rng(seed);
    for (auto &c : selftest_detail::checks(trials)) {
        CheckResult r{c.suite, c.name, 0.0, c.tolerance, 0.0, false, {}};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.worst = c.body(rng);
            r.passed = r.worst < r.tolerance;
        } catch (const std::exception &e) {
            r.error = e.what();
        }
        r.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace ccisim
