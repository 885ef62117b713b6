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
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "ccisim/linalg.hpp"
#include "ccisim/model.hpp"

/**
 * @file gates.hpp
 * Digital modules: subspace rotations, the conjugating unitaries T and T',
 * and the two-qubit gates produced by the driven pair at t_b.
 *
 * Two-qubit gates act on (gg, ge, eg, ee), which is the {0, 1, 2, 3}
 * ordering used in the closed-form gate tables.
 */

namespace ccisim {

/**
 * Rotation in the {m, n} subspace of an N-level system:
 *   [[cos(theta/2), -e^{-i phi} sin(theta/2)],
 *    [e^{i phi} sin(theta/2), cos(theta/2)]]
 * and identity elsewhere.
 */
template <std::size_t N>
Matrix<N> rotation(std::size_t m, std::size_t n, double theta, double phi) {
    if (m == n || m >= N || n >= N) {
        throw std::invalid_argument("rotation: bad subspace indices (" +
                                    std::to_string(m) + ", " +
                                    std::to_string(n) + ") for dim " +
                                    std::to_string(N));
    }
    Matrix<N> r = Matrix<N>::identity();
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    r(m, m) = c;
    r(m, n) = -cis(-phi) * s;
    r(n, m) = cis(phi) * s;
    r(n, n) = c;
    return r;
}

inline constexpr std::size_t kG = 0;
inline constexpr std::size_t kE = 1;
inline constexpr std::size_t kF = 2;

/// T(phi_q): mixes |g> and |f>, leaves |e> alone.
inline Matrix<3> make_t(double phi_q) {
    const double r = 1.0 / std::numbers::sqrt2;
    return Matrix<3>{{r, 0.0, -r * cis(phi_q)},
                     {0.0, 1.0, 0.0},
                     {r * cis(-phi_q), 0.0, r}};
}

/// T(phi_q) as the gate sequence R_ef(pi, 0) R_ge(pi/2, -phi_q) R_ef(pi, pi).
inline Matrix<3> make_t_from_gates(double phi_q) {
    return rotation<3>(kE, kF, kPi, 0.0) *
           rotation<3>(kG, kE, kPi / 2.0, -phi_q) *
           rotation<3>(kE, kF, kPi, kPi);
}

/// T'(phi): sends (|gg> + e^{i phi}|ee>)/sqrt2 to |gg>.
inline Matrix<4> make_t_prime(double phi) {
    const double r = 1.0 / std::numbers::sqrt2;
    return Matrix<4>{{r, 0.0, 0.0, r * cis(-phi)},
                     {0.0, 1.0, 0.0, 0.0},
                     {0.0, 0.0, 1.0, 0.0},
                     {-r * cis(phi), 0.0, 0.0, r}};
}

/// Three-level closed-loop Hamiltonian of the driven pair, embedded in the
/// (gg, ge, eg, ee) space:
/// J (|eg><ge| + |ge><gg| + e^{i phi}|eg><gg| + h.c.).
inline Matrix<4> build_two_qubit_h_prime(const TwoQubitParams &q) {
    constexpr std::size_t gg = 0, ge = 1, eg = 2;
    const double j = q.coupling;
    Matrix<4> h;
    h(eg, ge) = j;
    h(ge, gg) = j;
    h(eg, gg) = j * cis(q.phi);
    return h + h.adjoint();
}

/// Two-qubit gates e^{-i H t_b} at phi = +pi/2 (U_L) and phi = -pi/2 (U_R).
struct ChiralGates {
    Matrix<4> u_l;
    Matrix<4> u_r;
};

inline ChiralGates closed_form_ul_ur() {
    const double r = 1.0 / std::numbers::sqrt2;
    const cplx i = kI;
    ChiralGates g;
    g.u_l = Matrix<4>{{0.5, 0.0, -r, i * 0.5},
                      {-i * r, 0.0, 0.0, -r},
                      {0.0, -i, 0.0, 0.0},
                      {-i * 0.5, 0.0, -i * r, 0.5}};
    g.u_r = Matrix<4>{{0.5, -i * r, 0.0, -i * 0.5},
                      {0.0, 0.0, -i, 0.0},
                      {-r, 0.0, 0.0, -i * r},
                      {i * 0.5, -r, 0.0, 0.5}};
    return g;
}

/// iSWAP-like gate coupling |gg> and |ee>.
inline Matrix<4> make_u1() {
    const double r = 1.0 / std::numbers::sqrt2;
    return Matrix<4>{{r, 0.0, 0.0, kI * r},
                     {0.0, 1.0, 0.0, 0.0},
                     {0.0, 0.0, 1.0, 0.0},
                     {kI * r, 0.0, 0.0, r}};
}

/// Phased 3-cycle 1 -> 2 -> 3 -> 1 on indices {1, 2, 3}; index 0 fixed.
inline Matrix<4> make_u_prime_l() {
    Matrix<4> m;
    m(0, 0) = 1.0;
    m(1, 3) = -1.0;
    m(2, 1) = -kI;
    m(3, 2) = -kI;
    return m;
}

/// Phased 3-cycle 1 -> 3 -> 2 -> 1 on indices {1, 2, 3}; index 0 fixed.
inline Matrix<4> make_u_prime_r() {
    Matrix<4> m;
    m(0, 0) = 1.0;
    m(1, 2) = -kI;
    m(2, 3) = -kI;
    m(3, 1) = -1.0;
    return m;
}

/**
 * U_L and U_R rebuilt from the 3-cycles: U_L = U1^dagger U'_L U1 and
 * U_R = U1 U'_R U1^dagger. This is the ordering that reproduces
 * e^{-i H t_b}; the opposite placement of U1 and U1^dagger does not.
 */
inline ChiralGates decomposed_ul_ur() {
    const Matrix<4> u1 = make_u1();
    return {u1.adjoint() * make_u_prime_l() * u1,
            u1 * make_u_prime_r() * u1.adjoint()};
}

/// Time at which the driven pair realizes U_L / U_R: 2 pi / (3 sqrt3 J).
inline double entangling_time(double coupling) {
    return kTwoPi / (3.0 * std::sqrt(3.0) * coupling);
}

} // namespace ccisim
