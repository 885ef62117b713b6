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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "ccisim/errors.hpp"

/**
 * @file linalg.hpp
 * Dense complex linear algebra for the 2-, 3- and 4-dimensional Hilbert
 * spaces used throughout the simulator. Everything is fixed-size and stack
 * allocated; a propagation step never touches the heap.
 */

namespace ccisim {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// e^{i theta}
inline cplx cis(double theta) { return {std::cos(theta), std::sin(theta)}; }

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kNorm = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kJacobi = 1e-13;
} // namespace tol

template <std::size_t N>
concept SupportedDim = (N >= 2 && N <= 4);

template <std::size_t N>
    requires SupportedDim<N>
using Amplitudes = std::array<cplx, N>;

/**
 * Row-major N x N complex matrix. Value type; all operations return new
 * matrices.
 */
template <std::size_t N>
    requires SupportedDim<N>
class Matrix {
  public:
    static constexpr std::size_t dim = N;

    constexpr Matrix() = default;

    /// Construct from nested row lists: `Matrix<2>{{0, 1}, {1, 0}}`.
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        if (rows.size() != N) {
            throw std::invalid_argument("Matrix: expected " +
                                        std::to_string(N) + " rows");
        }
        std::size_t i = 0;
        for (const auto &row : rows) {
            if (row.size() != N) {
                throw std::invalid_argument("Matrix: row " +
                                            std::to_string(i) +
                                            " has wrong length");
            }
            std::size_t j = 0;
            for (const auto &v : row) {
                (*this)(i, j++) = v;
            }
            ++i;
        }
    }

    static constexpr Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static constexpr Matrix diagonal(const std::array<cplx, N> &d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    /// |col><row| with unit weight.
    static constexpr Matrix unit(std::size_t row, std::size_t col) {
        Matrix m;
        m(row, col) = 1.0;
        return m;
    }

    constexpr cplx &operator()(std::size_t i, std::size_t j) {
        return a_[i * N + j];
    }
    constexpr const cplx &operator()(std::size_t i, std::size_t j) const {
        return a_[i * N + j];
    }

    [[nodiscard]] std::span<const cplx, N * N> data() const { return a_; }

    [[nodiscard]] Matrix adjoint() const {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                r(i, j) = std::conj((*this)(j, i));
            }
        }
        return r;
    }

    [[nodiscard]] Matrix conjugate() const {
        Matrix r;
        std::ranges::transform(a_, r.a_.begin(),
                               [](cplx v) { return std::conj(v); });
        return r;
    }

    [[nodiscard]] cplx trace() const {
        cplx s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            s += (*this)(i, i);
        }
        return s;
    }

    [[nodiscard]] double max_abs() const {
        double m = 0.0;
        for (const auto &v : a_) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }

    [[nodiscard]] Amplitudes<N> column(std::size_t j) const {
        Amplitudes<N> c{};
        for (std::size_t i = 0; i < N; ++i) {
            c[i] = (*this)(i, j);
        }
        return c;
    }

    Matrix &operator+=(const Matrix &o) {
        for (std::size_t k = 0; k < N * N; ++k) {
            a_[k] += o.a_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        for (std::size_t k = 0; k < N * N; ++k) {
            a_[k] -= o.a_[k];
        }
        return *this;
    }
    Matrix &operator*=(cplx s) {
        for (auto &v : a_) {
            v *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= -1.0; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, double s) { return a *= cplx{s}; }
    friend Matrix operator*(double s, Matrix a) { return a *= cplx{s}; }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t k = 0; k < N; ++k) {
                const cplx aik = a(i, k);
                for (std::size_t j = 0; j < N; ++j) {
                    r(i, j) += aik * b(k, j);
                }
            }
        }
        return r;
    }

    friend Amplitudes<N> operator*(const Matrix &a, const Amplitudes<N> &v) {
        Amplitudes<N> r{};
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                r[i] += a(i, j) * v[j];
            }
        }
        return r;
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::array<cplx, N * N> a_{};
};

/// Elementwise max |a - b|.
template <std::size_t N>
double max_abs_diff(const Matrix<N> &a, const Matrix<N> &b) {
    return (a - b).max_abs();
}

/**
 * Distance between two matrices modulo a global phase:
 * min over |c| = 1 of max|A - cB|, with c taken from Tr(B^dagger A).
 */
template <std::size_t N>
double distance_up_to_phase(const Matrix<N> &a, const Matrix<N> &b) {
    const cplx overlap = (b.adjoint() * a).trace();
    const cplx c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap)
                                           : cplx{1.0};
    return max_abs_diff(a, c * b);
}

template <std::size_t N>
bool is_hermitian(const Matrix<N> &m, double tolerance = tol::kHermitian) {
    return max_abs_diff(m, m.adjoint()) <=
           tolerance * std::max(1.0, m.max_abs());
}

template <std::size_t N>
bool is_unitary(const Matrix<N> &m, double tolerance = tol::kUnitary) {
    return max_abs_diff(m.adjoint() * m, Matrix<N>::identity()) <= tolerance;
}

/// Kronecker product; the first factor is the slow index (qubit a).
inline Matrix<4> tensor(const Matrix<2> &a, const Matrix<2> &b) {
    Matrix<4> r;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return r;
}

namespace pauli {
inline Matrix<2> identity() { return Matrix<2>::identity(); }
inline Matrix<2> x() { return Matrix<2>{{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix<2> y() { return Matrix<2>{{0.0, -kI}, {kI, 0.0}}; }
inline Matrix<2> z() { return Matrix<2>{{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

template <std::size_t N>
double norm(const Amplitudes<N> &v) {
    double s = 0.0;
    for (const auto &c : v) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

/// <a|b>
template <std::size_t N>
cplx inner(const Amplitudes<N> &a, const Amplitudes<N> &b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

template <std::size_t N>
Matrix<N> outer(const Amplitudes<N> &a, const Amplitudes<N> &b) {
    Matrix<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            r(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return r;
}

template <std::size_t N>
using BasisLabels = std::array<std::string_view, N>;

inline constexpr BasisLabels<3> kQutritBasis{"g", "e", "f"};
inline constexpr BasisLabels<3> kLevelBasis{"1", "2", "3"};
inline constexpr BasisLabels<4> kTwoQubitBasis{"gg", "ge", "eg", "ee"};

template <std::size_t N>
constexpr BasisLabels<N> default_basis() {
    if constexpr (N == 2) {
        return {"g", "e"};
    } else if constexpr (N == 3) {
        return kQutritBasis;
    } else {
        return kTwoQubitBasis;
    }
}

/**
 * Normalized state over a labeled basis. Construction normalizes the
 * amplitudes; a zero vector is rejected.
 */
template <std::size_t N>
    requires SupportedDim<N>
class StateVector {
  public:
    explicit StateVector(const Amplitudes<N> &amps,
                         BasisLabels<N> labels = default_basis<N>())
        : amps_(amps), labels_(labels) {
        const double n = ccisim::norm(amps_);
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw std::invalid_argument("StateVector: zero or non-finite norm");
        }
        for (auto &a : amps_) {
            a /= n;
        }
    }

    static StateVector basis_state(std::size_t k,
                                   BasisLabels<N> labels = default_basis<N>()) {
        if (k >= N) {
            throw std::out_of_range("StateVector: basis index out of range");
        }
        Amplitudes<N> a{};
        a[k] = 1.0;
        return StateVector(a, labels);
    }

    /// Basis state by label, e.g. `basis_state("eg", kTwoQubitBasis)`.
    static StateVector basis_state(std::string_view label,
                                   BasisLabels<N> labels = default_basis<N>()) {
        const auto it = std::ranges::find(labels, label);
        if (it == labels.end()) {
            throw std::invalid_argument("StateVector: unknown basis label '" +
                                        std::string(label) + "'");
        }
        return basis_state(
            static_cast<std::size_t>(std::distance(labels.begin(), it)),
            labels);
    }

    [[nodiscard]] const Amplitudes<N> &amplitudes() const { return amps_; }
    [[nodiscard]] const BasisLabels<N> &labels() const { return labels_; }
    [[nodiscard]] cplx operator[](std::size_t k) const { return amps_[k]; }
    [[nodiscard]] double norm() const { return ccisim::norm(amps_); }

    [[nodiscard]] std::array<double, N> probabilities() const {
        std::array<double, N> p{};
        for (std::size_t k = 0; k < N; ++k) {
            p[k] = std::norm(amps_[k]);
        }
        return p;
    }

    /// U|psi>, with a norm check (U is expected to be unitary).
    [[nodiscard]] StateVector evolved(const Matrix<N> &u) const {
        StateVector r = *this;
        r.amps_ = u * amps_;
        const double n = ccisim::norm(r.amps_);
        if (std::abs(n - 1.0) > tol::kNorm) {
            throw NumericalError("StateVector: norm drifted to " +
                                     std::to_string(n),
                                 std::abs(n - 1.0));
        }
        return r;
    }

    /// |<other|this>|^2
    [[nodiscard]] double overlap(const StateVector &other) const {
        return std::norm(inner(other.amps_, amps_));
    }

  private:
    Amplitudes<N> amps_;
    BasisLabels<N> labels_;
};

/**
 * Trace-one positive semidefinite Hermitian matrix. Arbitrary matrices
 * are validated on construction.
 */
template <std::size_t N>
    requires SupportedDim<N>
class DensityMatrix {
  public:
    explicit DensityMatrix(const Matrix<N> &m);

    static DensityMatrix pure(const StateVector<N> &psi) {
        return DensityMatrix(outer(psi.amplitudes(), psi.amplitudes()),
                             Trusted{});
    }

    static DensityMatrix maximally_mixed() {
        return DensityMatrix(Matrix<N>::identity() * (1.0 / double(N)),
                             Trusted{});
    }

    [[nodiscard]] const Matrix<N> &matrix() const { return m_; }
    [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const {
        return m_(i, j);
    }
    [[nodiscard]] double purity() const { return (m_ * m_).trace().real(); }

  private:
    struct Trusted {};
    DensityMatrix(const Matrix<N> &m, Trusted) : m_(m) {}
    Matrix<N> m_;
};

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition
// ---------------------------------------------------------------------------

template <std::size_t N>
struct EigenSystem {
    std::array<double, N> values;  ///< ascending
    Matrix<N> vectors;             ///< column k pairs with values[k]
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N> &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

} // namespace detail

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations.
 *
 * Each rotation first removes the phase of a(p,q) with a diagonal unitary,
 * then applies the real symmetric Jacobi rotation to the resulting real
 * 2x2 block. Sweeps stop once the off-diagonal Frobenius norm drops below
 * 1e-13 relative to max(1, |M|). Throws std::invalid_argument for
 * non-Hermitian input and NumericalError if 64 sweeps do not converge.
 */
template <std::size_t N>
EigenSystem<N> eig_hermitian(const Matrix<N> &m) {
    if (!is_hermitian(m)) {
        throw std::invalid_argument(
            "eig_hermitian: matrix is not Hermitian (max |M - M^dagger| = " +
            std::to_string(max_abs_diff(m, m.adjoint())) + ")");
    }
    Matrix<N> a = (m + m.adjoint()) * 0.5;
    Matrix<N> v = Matrix<N>::identity();
    const double threshold = tol::kJacobi * std::max(1.0, m.max_abs());

    constexpr int kMaxSweeps = 64;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) < threshold) {
            break;
        }
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) {
                    continue;
                }
                const cplx phase = apq / r;  // e^{i alpha}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);

                // W acts on columns p, q: W = D R, D = diag(1, e^{-i alpha}),
                // R = [[c, -s], [s, c]].
                const cplx w_pp = c;
                const cplx w_pq = -s;
                const cplx w_qp = s * std::conj(phase);
                const cplx w_qq = c * std::conj(phase);

                // A <- A W
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * w_pp + akq * w_qp;
                    a(k, q) = akp * w_pq + akq * w_qq;
                }
                // A <- W^dagger A
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(w_pp) * apk + std::conj(w_qp) * aqk;
                    a(q, k) = std::conj(w_pq) * apk + std::conj(w_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                // V <- V W
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * w_pp + vkq * w_qp;
                    v(k, q) = vkp * w_pq + vkq * w_qq;
                }
            }
        }
    }
    const double residual = detail::off_diagonal_norm(a);
    if (residual >= threshold) {
        throw NumericalError("eig_hermitian: Jacobi sweeps did not converge",
                             residual);
    }

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::sort(order, [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    EigenSystem<N> out{};
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < N; ++i) {
            out.vectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

/// exp(-i M t) for Hermitian M, via V diag(e^{-i lambda t}) V^dagger.
template <std::size_t N>
Matrix<N> expm_i(const EigenSystem<N> &es, double t) {
    if (t == 0.0) {
        return Matrix<N>::identity();
    }
    Matrix<N> r;
    for (std::size_t k = 0; k < N; ++k) {
        const cplx ph = cis(-es.values[k] * t);
        for (std::size_t i = 0; i < N; ++i) {
            const cplx vik = es.vectors(i, k) * ph;
            for (std::size_t j = 0; j < N; ++j) {
                r(i, j) += vik * std::conj(es.vectors(j, k));
            }
        }
    }
    return r;
}

template <std::size_t N>
Matrix<N> expm_i(const Matrix<N> &m, double t) {
    if (t == 0.0) {
        return Matrix<N>::identity();
    }
    return expm_i(eig_hermitian(m), t);
}

template <std::size_t N>
    requires SupportedDim<N>
DensityMatrix<N>::DensityMatrix(const Matrix<N> &m) : m_(m) {
    if (!is_hermitian(m)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(m.trace() - 1.0) > tol::kTrace) {
        throw std::invalid_argument("DensityMatrix: trace != 1");
    }
    const auto es = eig_hermitian(m);
    if (es.values.front() < -tol::kPositivity) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(es.values.front()));
    }
}

/**
 * <target| rho |target>. Throws NumericalError if the imaginary residue
 * exceeds 1e-12; the result is clamped to [0, 1].
 */
template <std::size_t N>
double fidelity(const DensityMatrix<N> &rho, const StateVector<N> &target) {
    const auto &t = target.amplitudes();
    const cplx f = inner(t, rho.matrix() * t);
    if (std::abs(f.imag()) > 1e-12) {
        throw NumericalError("fidelity: imaginary residue", std::abs(f.imag()));
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

} // namespace ccisim
