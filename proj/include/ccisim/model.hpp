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
#include <cmath>
#include <numbers>
#include <string_view>

#include "ccisim/linalg.hpp"

/**
 * @file model.hpp
 * Hamiltonians of the driven qutrit and of the driven coupled qubit pair.
 *
 * Conventions: hbar = 1, every amplitude, detuning and coupling is an
 * angular frequency in rad/us, and time is in us. Qutrit matrices use the
 * basis (g, e, f) = (1, 2, 3); two-qubit matrices use (gg, ge, eg, ee) with
 * qubit a as the slow index.
 */

namespace ccisim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// MHz (ordinary frequency) to rad/us.
constexpr double mhz_to_angular(double mhz) { return kTwoPi * mhz; }
constexpr double angular_to_mhz(double w) { return w / kTwoPi; }

/// Wrap an angle into (-pi, pi].
inline double wrap_phase(double phi) {
    double r = std::remainder(phi, kTwoPi);  // [-pi, pi]
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

/// Target closed-loop couplings: pump (1-2), loop-closing (1-3) and
/// Stokes (2-3) amplitudes with their phases.
struct DriveParams {
    double omega_p = 0.0;
    double omega_q = 0.0;
    double omega_s = 0.0;
    double phi_p = 0.0;
    double phi_q = 0.0;
    double phi_s = 0.0;

    /// Equal amplitudes with the loop phase carried entirely by phi_p.
    static DriveParams uniform(double omega, double phi) {
        return {omega, omega, omega, phi, 0.0, 0.0};
    }

    /// Loop phase of build_cci_h, arg(H_21 H_32 H_13) = phi_p + phi_s + phi_q,
    /// in (-pi, pi]. Invariant under diagonal phase changes of the basis.
    [[nodiscard]] double gauge_phase() const {
        return wrap_phase(phi_p + phi_s + phi_q);
    }

    friend bool operator==(const DriveParams &, const DriveParams &) = default;
};

/// The two physical ladder drives (g-e and e-f) and their detunings.
struct PhysicalDrives {
    cplx omega_a{};
    cplx omega_b{};
    double delta_a = 0.0;
    double delta_b = 0.0;
};

struct TwoQubitParams {
    double coupling = 0.0;  ///< J, rad/us
    double phi = 0.0;       ///< phi_a - phi_b

    /// Each qubit is driven with amplitude J / sqrt(2).
    [[nodiscard]] double drive_amplitude() const {
        return coupling / std::numbers::sqrt2;
    }
};

enum class Handedness { Left, Right };

constexpr std::string_view to_string(Handedness h) {
    return h == Handedness::Left ? "L" : "R";
}

/// +1 for L, -1 for R.
constexpr double handedness_sign(Handedness h) {
    return h == Handedness::Left ? 1.0 : -1.0;
}

/**
 * Ladder drives that produce the closed-loop Hamiltonian after conjugation
 * by the T module: T * build_h0(map_drives(p)) * T^dagger == build_cci_h(p).
 *
 *   Omega_A = [Omega_p e^{i phi_p} + Omega_s e^{-i(phi_q + phi_s)}] / sqrt2
 *   Omega_B = [-Omega_p e^{-i(phi_q + phi_p)} + Omega_s e^{i phi_s}] / sqrt2
 *   Delta_A = Delta_B = -Omega_q
 */
inline PhysicalDrives map_drives(const DriveParams &p) {
    const double r = 1.0 / std::numbers::sqrt2;
    PhysicalDrives d;
    d.omega_a = r * (p.omega_p * cis(p.phi_p) +
                     p.omega_s * cis(-(p.phi_q + p.phi_s)));
    d.omega_b = r * (-p.omega_p * cis(-(p.phi_q + p.phi_p)) +
                     p.omega_s * cis(p.phi_s));
    d.delta_a = -p.omega_q;
    d.delta_b = -p.omega_q;
    return d;
}

/// Rotating-frame Hamiltonian of the qutrit with two ladder drives.
inline Matrix<3> build_h0(const PhysicalDrives &d) {
    Matrix<3> h{{-d.delta_a, std::conj(d.omega_a), 0.0},
                {d.omega_a, 0.0, std::conj(d.omega_b)},
                {0.0, d.omega_b, d.delta_b}};
    return h * 0.5;
}

/// Closed-loop Hamiltonian, with an optional diagonal perturbation
/// (delta_1, delta_2, delta_3) added on top of the 1/2-prefactored matrix.
inline Matrix<3> build_cci_h(const DriveParams &p,
                             const std::array<double, 3> &detuning = {}) {
    Matrix<3> h{
        {0.0, p.omega_p * cis(-p.phi_p), p.omega_q * cis(p.phi_q)},
        {p.omega_p * cis(p.phi_p), 0.0, p.omega_s * cis(-p.phi_s)},
        {p.omega_q * cis(-p.phi_q), p.omega_s * cis(p.phi_s), 0.0}};
    h *= 0.5;
    for (std::size_t k = 0; k < 3; ++k) {
        h(k, k) += detuning[k];
    }
    return h;
}

/// Eigenenergies E_k = Omega cos(phi/3 - (2 pi / 3)(k + 1)), k = 1, 2, 3,
/// for equal loop amplitudes. Returned in k order, not sorted.
inline std::array<double, 3> cci_spectrum(double omega, double phi) {
    constexpr double phi0 = kTwoPi / 3.0;
    std::array<double, 3> e{};
    for (int k = 1; k <= 3; ++k) {
        e[k - 1] = omega * std::cos(phi / 3.0 - phi0 * (k + 1));
    }
    return e;
}

/// Driven coupled-qubit Hamiltonian:
/// J (cos phi X_a + sin phi Y_a + X_b) / sqrt2 + J (X_a X_b + Y_a Y_b) / 2.
inline Matrix<4> build_two_qubit_h(const TwoQubitParams &q) {
    const double j = q.coupling;
    using namespace pauli;
    const Matrix<4> drive =
        tensor(std::cos(q.phi) * x() + std::sin(q.phi) * y(), identity()) +
        tensor(identity(), x());
    const Matrix<4> exchange = tensor(x(), x()) + tensor(y(), y());
    return drive * (j / std::numbers::sqrt2) + exchange * (j / 2.0);
}

/// Closed-loop Hamiltonian of the invariant triplet:
/// J (|1><2| + |2><3| + e^{i phi} |1><3| + h.c.).
inline Matrix<3> build_subspace_hbar(const TwoQubitParams &q) {
    const double j = q.coupling;
    const cplx e = cis(q.phi);
    return Matrix<3>{{0.0, j, j * e}, {j, 0.0, j}, {j * std::conj(e), j, 0.0}};
}

/**
 * Columns: |eg>, |ge>, (|gg> + e^{i phi}|ee>)/sqrt2, and the dark state
 * (|gg> - e^{i phi}|ee>)/sqrt2, in the (gg, ge, eg, ee) basis.
 */
inline Matrix<4> barred_basis(double phi) {
    const double r = 1.0 / std::numbers::sqrt2;
    const cplx e = cis(phi);
    return Matrix<4>{{0.0, 0.0, r, r},
                     {0.0, 1.0, 0.0, 0.0},
                     {1.0, 0.0, 0.0, 0.0},
                     {0.0, 0.0, r * e, -r * e}};
}

inline StateVector<4> dark_state(double phi) {
    return StateVector<4>(barred_basis(phi).column(3), kTwoQubitBasis);
}

/**
 * Enantiomer Hamiltonian
 *   (1/2) (Omega_p |2><1| + Omega_s |3><2| +- Omega_q e^{i phi} |3><1| + h.c.)
 * with + for L and - for R. The 1/2 prefactor makes Omega_q = 2 dtheta/dt
 * the exact counterdiabatic term.
 */
inline Matrix<3> build_chiral_h(double omega_p, double omega_s, double omega_q,
                                Handedness h, double phi) {
    const cplx q = handedness_sign(h) * omega_q * cis(phi);
    Matrix<3> m{{0.0, omega_p, std::conj(q)},
                {omega_p, 0.0, omega_s},
                {q, omega_s, 0.0}};
    return m * 0.5;
}

} // namespace ccisim
