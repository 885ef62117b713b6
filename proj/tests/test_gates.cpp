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

#include <random>

#include "ccisim/experiments.hpp"
#include "ccisim/gates.hpp"
#include "oracles.hpp"

using namespace ccisim;

namespace {

double unitary_defect(const Matrix<4> &u) {
    return max_abs_diff(u.adjoint() * u, Matrix<4>::identity());
}

oracle::Mat to_oracle(const Matrix<4> &m) {
    oracle::Mat o(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            o(i, j) = m(i, j);
        }
    }
    return o;
}

} // namespace

TEST(Rotation, ZeroAngleIsIdentity) {
    EXPECT_EQ(rotation<3>(kG, kE, 0.0, 1.2), Matrix<3>::identity());
}

TEST(Rotation, InverseAndUnitarity) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-kTwoPi, kTwoPi);
    for (int trial = 0; trial < 100; ++trial) {
        const double th = u(rng);
        const double ph = u(rng);
        const auto r = rotation<3>(kE, kF, th, ph);
        EXPECT_LT(max_abs_diff(r * rotation<3>(kE, kF, -th, ph), Matrix<3>::identity()),
                  1e-12);
        EXPECT_LT(max_abs_diff(r.adjoint() * r, Matrix<3>::identity()), 1e-12);
    }
}

TEST(Rotation, ActsOnlyInsideSubspace) {
    const auto r = rotation<3>(kG, kE, 1.0, 0.3);
    EXPECT_EQ(r(2, 2), cplx(1.0));
    EXPECT_EQ(r(0, 2), cplx(0.0));
    EXPECT_EQ(r(2, 1), cplx(0.0));
    EXPECT_NEAR(r(0, 0).real(), std::cos(0.5), 1e-15);
}

TEST(Rotation, BadIndices) {
    EXPECT_THROW(rotation<3>(1, 1, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(rotation<3>(0, 3, 0.1, 0.0), std::invalid_argument);
}

TEST(TGate, UnitaryAndRealAtZero) {
    const auto t = make_t(0.0);
    EXPECT_LT(max_abs_diff(t * t.adjoint(), Matrix<3>::identity()), 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    const Matrix<3> expect{{r, 0.0, -r}, {0.0, 1.0, 0.0}, {r, 0.0, r}};
    EXPECT_LT(max_abs_diff(t, expect), 1e-15);
}

TEST(TGate, ThreeGateDecomposition) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int trial = 0; trial < 100; ++trial) {
        const double phq = u(rng);
        const auto built = rotation<3>(kE, kF, kPi, 0.0) *
                           rotation<3>(kG, kE, kPi / 2.0, -phq) *
                           rotation<3>(kE, kF, kPi, kPi);
        EXPECT_LT(max_abs_diff(built, make_t(phq)), 1e-12);
        EXPECT_LT(max_abs_diff(make_t_from_gates(phq), make_t(phq)), 1e-12);
    }
}

TEST(TPrime, UnitaryAndMapsBellToGround) {
    for (double phi : linspace(-kPi, kPi, 17)) {
        const auto tp = make_t_prime(phi);
        EXPECT_LT(unitary_defect(tp), 1e-14);
        const StateVector<4> bell({1.0, 0.0, 0.0, cis(phi)}, kTwoQubitBasis);
        const auto out = bell.evolved(tp);
        EXPECT_NEAR(std::abs(out[0]), 1.0, 1e-14);
    }
}

TEST(TPrime, ConjugationGivesPrimedHamiltonian) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int trial = 0; trial < 50; ++trial) {
        const TwoQubitParams q{mhz_to_angular(3.0 + trial * 0.1), u(rng)};
        const auto tp = make_t_prime(q.phi);
        EXPECT_LT(max_abs_diff(tp * build_two_qubit_h(q) * tp.adjoint(),
                               build_two_qubit_h_prime(q)),
                  1e-10);
    }
}

TEST(ChiralGates, ClosedFormsUnitary) {
    const auto g = closed_form_ul_ur();
    EXPECT_LT(unitary_defect(g.u_l), 1e-12);
    EXPECT_LT(unitary_defect(g.u_r), 1e-12);
}

TEST(ChiralGates, MatchTimeEvolutionAtTb) {
    for (double jm : {1.0, 6.7, 12.5}) {
        const double j = mhz_to_angular(jm);
        const double tb = entangling_time(j);
        const auto g = closed_form_ul_ur();
        EXPECT_LT(distance_up_to_phase(expm_i(build_two_qubit_h({j, kPi / 2.0}), tb), g.u_l),
                  1e-8);
        EXPECT_LT(distance_up_to_phase(expm_i(build_two_qubit_h({j, -kPi / 2.0}), tb), g.u_r),
                  1e-8);
    }
}

TEST(ChiralGates, MatchTaylorSeriesEvolution) {
    const double j = mhz_to_angular(6.7);
    const double tb = entangling_time(j);
    const auto ref = oracle::expm_i(to_oracle(build_two_qubit_h({j, kPi / 2.0})), tb);
    const auto ul = closed_form_ul_ur().u_l;
    // remove global phase using the trace overlap
    cplx ov = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            ov += std::conj(ul(k, i)) * ref(k, i);
        }
    }
    const cplx c = ov / std::abs(ov);
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            d = std::max(d, std::abs(ref(i, k) - c * ul(i, k)));
        }
    }
    EXPECT_LT(d, 1e-9);
}

TEST(ChiralGates, DecompositionThroughU1) {
    const auto g = closed_form_ul_ur();
    const auto u1 = make_u1();
    EXPECT_LT(max_abs_diff(u1.adjoint() * make_u_prime_l() * u1, g.u_l), 1e-12);
    EXPECT_LT(max_abs_diff(u1 * make_u_prime_r() * u1.adjoint(), g.u_r), 1e-12);
    const auto d = decomposed_ul_ur();
    EXPECT_LT(max_abs_diff(d.u_l, g.u_l), 1e-12);
    EXPECT_LT(max_abs_diff(d.u_r, g.u_r), 1e-12);
}

TEST(ChiralGates, OppositeU1PlacementDoesNotReproduce) {
    // documents the ordering: U1 U'_L U1^dagger is a different gate
    const auto g = closed_form_ul_ur();
    const auto u1 = make_u1();
    EXPECT_GT(distance_up_to_phase(u1 * make_u_prime_l() * u1.adjoint(), g.u_l), 0.1);
    EXPECT_GT(distance_up_to_phase(u1.adjoint() * make_u_prime_r() * u1, g.u_r), 0.1);
}

TEST(ChiralGates, UlMapsEgToBellPlus) {
    const auto out = StateVector<4>::basis_state("eg", kTwoQubitBasis)
                         .evolved(closed_form_ul_ur().u_l);
    const StateVector<4> target({1.0, 0.0, 0.0, kI}, kTwoQubitBasis);
    EXPECT_NEAR(out.overlap(target), 1.0, 1e-14);
}

TEST(ChiralGates, UrMapsGeToBellMinus) {
    const auto out = StateVector<4>::basis_state("ge", kTwoQubitBasis)
                         .evolved(closed_form_ul_ur().u_r);
    const StateVector<4> target({1.0, 0.0, 0.0, -kI}, kTwoQubitBasis);
    EXPECT_NEAR(out.overlap(target), 1.0, 1e-14);
}

TEST(ChiralGates, PrimedGatesArePhasedThreeCycles) {
    const auto l = make_u_prime_l();
    const auto r = make_u_prime_r();
    for (const auto *m : {&l, &r}) {
        EXPECT_EQ((*m)(0, 0), cplx(1.0));
        for (std::size_t j = 1; j < 4; ++j) {
            int nonzero = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                const double a = std::abs((*m)(i, j));
                EXPECT_TRUE(a == 0.0 || a == 1.0);
                nonzero += a == 1.0;
                if (a == 1.0) {
                    EXPECT_NE(i, j);
                    EXPECT_NE(i, 0u);
                }
            }
            EXPECT_EQ(nonzero, 1);
        }
    }
    // L: 1 -> 2 -> 3 -> 1, R: 1 -> 3 -> 2 -> 1 (column j sends |j> to row i)
    EXPECT_NE(std::abs(l(2, 1)), 0.0);
    EXPECT_NE(std::abs(l(3, 2)), 0.0);
    EXPECT_NE(std::abs(l(1, 3)), 0.0);
    EXPECT_NE(std::abs(r(3, 1)), 0.0);
    EXPECT_NE(std::abs(r(1, 2)), 0.0);
    EXPECT_NE(std::abs(r(2, 3)), 0.0);
}

TEST(ChiralGates, CubeOfThreeCycleIsDiagonal) {
    for (const auto &m : {make_u_prime_l(), make_u_prime_r()}) {
        const auto c = m * m * m;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (i == j) {
                    EXPECT_NEAR(std::abs(c(i, i)), 1.0, 1e-15);
                } else {
                    EXPECT_EQ(c(i, j), cplx(0.0));
                }
            }
        }
    }
}

TEST(ChiralGates, AllGatesUnitary) {
    for (const auto &m : {make_u1(), make_u_prime_l(), make_u_prime_r(),
                          decomposed_ul_ur().u_l, decomposed_ul_ur().u_r}) {
        EXPECT_LT(unitary_defect(m), 1e-10);
    }
}

TEST(EntanglingTime, Formula) {
    EXPECT_DOUBLE_EQ(entangling_time(1.0), 2.0 * kPi / (3.0 * std::sqrt(3.0)));
    // J/2pi = 6.7 MHz -> t_b = 28.72 ns
    EXPECT_NEAR(entangling_time(mhz_to_angular(6.7)) * 1e3, 28.7239, 1e-3);
}
