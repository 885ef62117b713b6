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

#include "ccisim/linalg.hpp"
#include "ccisim/model.hpp"
#include "oracles.hpp"

using namespace ccisim;

namespace {

template <std::size_t N>
Matrix<N> random_hermitian(std::mt19937_64 &rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i) {
        m(i, i) = u(rng);
        for (std::size_t j = i + 1; j < N; ++j) {
            m(i, j) = {u(rng), u(rng)};
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

template <std::size_t N>
oracle::Mat to_oracle(const Matrix<N> &m) {
    oracle::Mat o(N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            o(i, j) = m(i, j);
        }
    }
    return o;
}

template <std::size_t N>
double diff(const Matrix<N> &a, const oracle::Mat &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
        }
    }
    return d;
}

} // namespace

TEST(Eig, PauliX) {
    const auto es = eig_hermitian(pauli::x());
    EXPECT_NEAR(es.values[0], -1.0, 1e-14);
    EXPECT_NEAR(es.values[1], 1.0, 1e-14);
}

TEST(Eig, TriangleAdjacency) {
    const Matrix<3> m{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    const auto es = eig_hermitian(m);
    EXPECT_NEAR(es.values[0], -1.0, 1e-12);
    EXPECT_NEAR(es.values[1], -1.0, 1e-12);
    EXPECT_NEAR(es.values[2], 2.0, 1e-12);
    // degenerate pair: only orthonormality is required
    EXPECT_LT(max_abs_diff(es.vectors.adjoint() * es.vectors, Matrix<3>::identity()),
              1e-10);
}

TEST(Eig, EigenpairsAndOrthonormalityOnRandomHermitian) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_hermitian<4>(rng, 3.0);
        const auto es = eig_hermitian(m);
        for (std::size_t k = 0; k < 4; ++k) {
            const auto v = es.vectors.column(k);
            const auto mv = m * v;
            for (std::size_t i = 0; i < 4; ++i) {
                EXPECT_LT(std::abs(mv[i] - es.values[k] * v[i]), 1e-10);
            }
        }
        EXPECT_LT(max_abs_diff(es.vectors.adjoint() * es.vectors, Matrix<4>::identity()),
                  1e-10);
        EXPECT_TRUE(std::ranges::is_sorted(es.values));
    }
}

TEST(Eig, MatchesCharacteristicPolynomialRoots) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_hermitian<3>(rng, 5.0);
        const auto ref = oracle::eig3(to_oracle(m));
        const auto es = eig_hermitian(m);
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_NEAR(es.values[k], ref[k], 1e-9);
        }
    }
}

TEST(Eig, SpectralReconstruction) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = random_hermitian<3>(rng, 2.0);
        const auto es = eig_hermitian(m);
        Matrix<3> lam;
        for (std::size_t k = 0; k < 3; ++k) {
            lam(k, k) = es.values[k];
        }
        EXPECT_LT(max_abs_diff(es.vectors * lam * es.vectors.adjoint(), m), 1e-10);
    }
}

TEST(Eig, RejectsNonHermitian) {
    const Matrix<2> m{{0.0, 1.0}, {0.0, 0.0}};
    EXPECT_THROW(eig_hermitian(m), std::invalid_argument);
}

TEST(Eig, ZeroAndDiagonalMatrices) {
    const auto z = eig_hermitian(Matrix<3>{});
    for (double v : z.values) {
        EXPECT_EQ(v, 0.0);
    }
    const auto d = eig_hermitian(Matrix<3>::diagonal({3.0, -1.0, 2.0}));
    EXPECT_DOUBLE_EQ(d.values[0], -1.0);
    EXPECT_DOUBLE_EQ(d.values[1], 2.0);
    EXPECT_DOUBLE_EQ(d.values[2], 3.0);
}

TEST(Expm, IdentityAtZeroTime) {
    std::mt19937_64 rng(5);
    const auto u = expm_i(random_hermitian<4>(rng, 10.0), 0.0);
    EXPECT_LT(max_abs_diff(u, Matrix<4>::identity()), 1e-14);
}

TEST(Expm, RabiHalfPeriod) {
    const double om = 2.0;
    const auto u = expm_i(pauli::x() * (om / 2.0), kPi / om);
    EXPECT_LT(max_abs_diff(u, pauli::x() * (-kI)), 1e-14);
}

TEST(Expm, GroupProperty) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_hermitian<3>(rng, 4.0);
        const double t1 = 0.3 * trial;
        const double t2 = 1.7 - 0.1 * trial;
        EXPECT_LT(max_abs_diff(expm_i(m, t1) * expm_i(m, t2), expm_i(m, t1 + t2)),
                  1e-10);
    }
}

TEST(Expm, MatchesTaylorSeries) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_hermitian<4>(rng, 3.0);
        const double t = 0.2 * trial - 5.0;
        EXPECT_LT(diff(expm_i(m, t), oracle::expm_i(to_oracle(m), t)), 1e-10);
    }
}

TEST(Expm, Unitary) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto u = expm_i(random_hermitian<3>(rng, 50.0), 0.37 * trial);
        EXPECT_LT(max_abs_diff(u.adjoint() * u, Matrix<3>::identity()), 1e-10);
    }
}

TEST(Tensor, IdentityAndExchange) {
    EXPECT_EQ(tensor(pauli::identity(), pauli::identity()), Matrix<4>::identity());
    const auto xy = tensor(pauli::x(), pauli::x()) + tensor(pauli::y(), pauli::y());
    Matrix<4> expect;
    expect(1, 2) = 2.0;  // |ge><eg|
    expect(2, 1) = 2.0;
    EXPECT_LT(max_abs_diff(xy, expect), 1e-15);
}

TEST(Tensor, MixedProduct) {
    const auto lhs = tensor(pauli::x(), pauli::identity()) *
                     tensor(pauli::identity(), pauli::x());
    EXPECT_LT(max_abs_diff(lhs, tensor(pauli::x(), pauli::x())), 1e-15);
}

TEST(Tensor, FirstFactorIsSlowIndex) {
    // sigma_x on qubit a flips gg <-> eg
    const auto xa = tensor(pauli::x(), pauli::identity());
    EXPECT_EQ(xa(2, 0), cplx(1.0));
    EXPECT_EQ(xa(1, 0), cplx(0.0));
}

TEST(State, NormalizesAndRejectsZero) {
    const StateVector<3> s({1.0, 1.0, 0.0}, kQutritBasis);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
    EXPECT_THROW(StateVector<3>({0.0, 0.0, 0.0}, kQutritBasis), std::invalid_argument);
}

TEST(State, BasisByLabel) {
    const auto s = StateVector<4>::basis_state("eg", kTwoQubitBasis);
    EXPECT_EQ(s[2], cplx(1.0));
    EXPECT_THROW(StateVector<4>::basis_state("xx", kTwoQubitBasis), std::invalid_argument);
}

TEST(State, NormConservedUnderUnitaries) {
    std::mt19937_64 rng(19);
    StateVector<4> psi({0.3, {0.1, 0.2}, -0.5, {0.0, 0.7}}, kTwoQubitBasis);
    for (int k = 0; k < 500; ++k) {
        psi = psi.evolved(expm_i(random_hermitian<4>(rng, 2.0), 0.9));
        EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
    }
}

TEST(State, EvolvedRejectsNonUnitary) {
    const auto psi = StateVector<2>::basis_state(0, default_basis<2>());
    EXPECT_THROW((void)psi.evolved(Matrix<2>::identity() * 2.0), NumericalError);
}

TEST(Density, PureAndMixedFidelity) {
    const StateVector<4> psi({1.0, 0.0, 0.0, kI}, kTwoQubitBasis);
    EXPECT_NEAR(fidelity(DensityMatrix<4>::pure(psi), psi), 1.0, 1e-14);
    EXPECT_NEAR(fidelity(DensityMatrix<4>::maximally_mixed(), psi), 0.25, 1e-14);
    EXPECT_NEAR(fidelity(DensityMatrix<3>::maximally_mixed(),
                         StateVector<3>::basis_state(1, kQutritBasis)),
                1.0 / 3.0, 1e-14);
}

TEST(Density, ValidatesInvariants) {
    EXPECT_THROW(DensityMatrix<2>(Matrix<2>::identity()), std::invalid_argument);  // trace 2
    EXPECT_THROW(DensityMatrix<2>(Matrix<2>{{1.5, 0.0}, {0.0, -0.5}}),
                 std::invalid_argument);  // negative eigenvalue
    EXPECT_THROW(DensityMatrix<2>(Matrix<2>{{0.5, 0.1}, {0.2, 0.5}}),
                 std::invalid_argument);  // not Hermitian
    EXPECT_NO_THROW(DensityMatrix<2>(Matrix<2>{{0.5, 0.5}, {0.5, 0.5}}));
}

TEST(Distance, GlobalPhaseInsensitive) {
    std::mt19937_64 rng(23);
    const auto u = expm_i(random_hermitian<4>(rng), 1.0);
    EXPECT_LT(distance_up_to_phase(u * cis(0.83), u), 1e-14);
    EXPECT_GT(distance_up_to_phase(u, Matrix<4>::identity()), 1e-3);
}
