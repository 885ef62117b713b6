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

#include <gtest/gtest.h>

#include "ccisim/experiments.hpp"
#include "ccisim/pulses.hpp"
#include "oracles.hpp"

using namespace ccisim;

namespace {

oracle::Mat to_oracle(const Matrix<3> &m) {
    oracle::Mat o(3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            o(i, j) = m(i, j);
        }
    }
    return o;
}

/// |<chi_0(t)|psi>|^2 with chi_0 = cos th |1> - sin th |3>.
double dark_overlap(const PulseSchedule &s, double t, const StateVector<3> &psi) {
    return psi.overlap(adiabatic_dark_state(s, t));
}

} // namespace

TEST(Schedule, AreaRoundTrip) {
    const auto s = PulseSchedule::with_area(1.23, 2.0);
    EXPECT_NEAR(s.area(), 1.23, 1e-14);
    EXPECT_NEAR(s.omega0, 1.23 * std::sqrt(kPi) / 2.0, 1e-14);
    EXPECT_DOUBLE_EQ(s.t_start, -10.0);
    EXPECT_DOUBLE_EQ(s.dt, 2.0 / 2000.0);
}

TEST(Schedule, Validation) {
    auto s = PulseSchedule::with_area(1.0);
    EXPECT_NO_THROW(s.validate());
    s.t_end = 3.0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = PulseSchedule::with_area(0.0);
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Gaussians, Values) {
    const auto s = PulseSchedule::with_area(1.0);
    const auto mid = gaussian_pair(s, 0.0);
    EXPECT_NEAR(mid.pump, s.omega0 * std::exp(-0.25), 1e-15);
    EXPECT_NEAR(mid.stokes, s.omega0 * std::exp(-0.25), 1e-15);
    EXPECT_NEAR(gaussian_pair(s, 0.5).pump, s.omega0, 1e-15);
    EXPECT_NEAR(gaussian_pair(s, -0.5).stokes, s.omega0, 1e-15);
}

TEST(Gaussians, IntegratedAreaBySimpson) {
    const auto s = PulseSchedule::with_area(1.4, 1.5);
    const double ip = oracle::simpson([&](double t) { return gaussian_pair(s, t).pump; },
                                      s.t_start, s.t_end, 4000);
    const double is = oracle::simpson([&](double t) { return gaussian_pair(s, t).stokes; },
                                      s.t_start, s.t_end, 4000);
    const double expect = s.omega0 * s.tau * std::sqrt(kPi);
    EXPECT_NEAR(ip / expect, 1.0, 1e-4);
    EXPECT_NEAR(is / expect, 1.0, 1e-4);
    EXPECT_NEAR(ip / kPi, 1.4, 1e-3);
}

TEST(MixingAngle, ClosedFormValues) {
    const auto s = PulseSchedule::with_area(1.0, 2.0);
    const auto m0 = mixing_angle(s, 0.0);
    EXPECT_NEAR(m0.theta, kPi / 4.0, 1e-15);
    EXPECT_NEAR(m0.theta_dot, 1.0 / s.tau, 1e-15);
    EXPECT_NEAR(mixing_angle(s, -50.0).theta, 0.0, 1e-12);
    EXPECT_NEAR(mixing_angle(s, 50.0).theta, kPi / 2.0, 1e-12);
}

TEST(MixingAngle, TangentIsPumpOverStokes) {
    const auto s = PulseSchedule::with_area(1.0);
    for (double t : linspace(-3.0, 3.0, 25)) {
        const auto g = gaussian_pair(s, t);
        EXPECT_NEAR(std::tan(mixing_angle(s, t).theta), g.pump / g.stokes,
                    1e-10 * (1.0 + g.pump / g.stokes));
    }
}

TEST(MixingAngle, DerivativeMatchesFiniteDifference) {
    const auto s = PulseSchedule::with_area(1.0);
    for (double t : linspace(s.t_start, s.t_end, 101)) {
        const double fd =
            oracle::derivative([&](double x) { return mixing_angle(s, x).theta; }, t, 1e-4);
        EXPECT_NEAR(mixing_angle(s, t).theta_dot, fd, 1e-6);
    }
}

TEST(Counterdiabatic, SignAndDecay) {
    auto s = PulseSchedule::with_area(1.0, 1.0, Handedness::Left);
    EXPECT_NEAR(counterdiabatic(s, 0.0), 2.0, 1e-15);
    EXPECT_LT(std::abs(counterdiabatic(s, 4.0)), 1e-3 * 2.0);
    EXPECT_LT(std::abs(counterdiabatic(s, -4.0)), 1e-3 * 2.0);
    s.handedness = Handedness::Right;
    EXPECT_NEAR(counterdiabatic(s, 0.0), -2.0, 1e-15);
}

TEST(Propagate, ConstantHamiltonianMatchesExponential) {
    const Matrix<3> h{{0.3, {0.1, 0.4}, 0.0}, {{0.1, -0.4}, -0.2, 0.5}, {0.0, 0.5, 0.1}};
    const auto psi0 = StateVector<3>::basis_state(0, kLevelBasis);
    const auto tr = propagate_td<3>([&](double) { return h; }, psi0, 0.0, 3.0, 0.01);
    const auto ref = psi0.evolved(expm_i(h, 3.0));
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_LT(std::abs(tr.states.back()[k] - ref[k]), 1e-8);
    }
    EXPECT_DOUBLE_EQ(tr.times.back(), 3.0);
}

TEST(Propagate, AgreesWithRk4OnChiralSchedule) {
    for (auto hand : {Handedness::Left, Handedness::Right}) {
        const auto s = PulseSchedule::with_area(1.23, 1.0, hand);
        const auto tr = run_pulse_schedule(s);
        const auto ref = oracle::rk4(
            [&](double t) { return to_oracle(chiral_hamiltonian(s, t)); },
            {1.0, 0.0, 0.0}, s.t_start, s.t_end, 20000);
        const auto p = tr.states.back().probabilities();
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_NEAR(p[k], std::norm(ref[k]), 1e-6);
        }
    }
}

TEST(Propagate, RecordsStride) {
    const Matrix<2> h = pauli::x();
    PropagationOptions opt;
    opt.record_every = 10;
    opt.adaptive = false;
    const auto tr = propagate_td<2>([&](double) { return h; },
                                    StateVector<2>::basis_state(0), 0.0, 1.0, 0.01, opt);
    EXPECT_EQ(tr.times.size(), 11u);
    EXPECT_NEAR(tr.times[5], 0.5, 1e-12);
}

TEST(Propagate, ReportsNonConvergence) {
    // highly oscillatory drive at a huge step cannot converge in one halving
    const auto h = [](double t) {
        return Matrix<2>(pauli::x() * (50.0 * std::cos(200.0 * t)));
    };
    PropagationOptions opt;
    opt.max_halvings = 1;
    try {
        (void)propagate_td<2>(h, StateVector<2>::basis_state(0), 0.0, 1.0, 0.1, opt);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError &e) {
        EXPECT_GT(e.residual(), 1e-6);
    }
}

TEST(Propagate, RejectsBadArguments) {
    const auto h = [](double) { return Matrix<2>(pauli::z()); };
    EXPECT_THROW((void)propagate_td<2>(h, StateVector<2>::basis_state(0), 0.0, 1.0, 0.0),
                 std::invalid_argument);
    EXPECT_THROW((void)propagate_td<2>(h, StateVector<2>::basis_state(0), 1.0, 0.0, 0.1),
                 std::invalid_argument);
}

TEST(Chiral, LeftHandedPerfectTransferAcrossAreas) {
    for (double a : linspace(0.5, 2.5, 9)) {
        const auto tr = run_pulse_schedule(PulseSchedule::with_area(a, 1.0, Handedness::Left));
        EXPECT_GE(tr.states.back().probabilities()[2], 0.999) << "A = " << a;
    }
}

TEST(Chiral, RightHandedSuppressedAtOptimalArea) {
    const auto tr = run_pulse_schedule(PulseSchedule::with_area(1.23, 1.0, Handedness::Right));
    EXPECT_LE(tr.states.back().probabilities()[2], 0.01);
}

TEST(Chiral, LeftTrajectoryPinnedToDarkState) {
    const auto s = PulseSchedule::with_area(1.23, 1.0, Handedness::Left);
    const auto tr = run_pulse_schedule(s);
    double worst = 1.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        worst = std::min(worst, dark_overlap(s, tr.times[k], tr.states[k]));
    }
    EXPECT_GE(worst, 0.999);
}

TEST(Chiral, NormAndStepHalvingInvariants) {
    for (auto hand : {Handedness::Left, Handedness::Right}) {
        const auto tr = run_pulse_schedule(PulseSchedule::with_area(1.23, 1.0, hand));
        EXPECT_LT(tr.halving_residual, 1e-6);
        for (const auto &psi : tr.states) {
            EXPECT_NEAR(psi.norm(), 1.0, 1e-9);
        }
    }
}

TEST(Chiral, ContrastDependsOnLoopPhase) {
    auto contrast = [](double phi) {
        const double l = run_pulse_schedule(PulseSchedule::with_area(1.23, 1.0, Handedness::Left, phi))
                             .states.back()
                             .probabilities()[2];
        const double r = run_pulse_schedule(PulseSchedule::with_area(1.23, 1.0, Handedness::Right, phi))
                             .states.back()
                             .probabilities()[2];
        return l - r;
    };
    const double c_half = contrast(-kPi / 2.0);
    const double c_zero = contrast(0.0);
    RecordProperty("contrast_minus_half_pi", std::to_string(c_half));
    RecordProperty("contrast_zero", std::to_string(c_zero));
    EXPECT_GT(std::abs(c_half - c_zero), 0.1);
}
