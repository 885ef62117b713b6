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
#include <cstddef>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "ccisim/model.hpp"

/**
 * @file spectral.hpp
 * Magnitude spectra of real sampled series (FFTW r2c) and peak picking.
 */

namespace ccisim {

namespace detail {
inline std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace detail

/// |X_k| for k = 0 .. n/2 of the real input, zero padded to `n` samples
/// (n = 0 means no padding).
inline std::vector<double> magnitude_spectrum(std::span<const double> x,
                                              std::size_t n = 0) {
    if (n == 0) {
        n = x.size();
    }
    if (n < x.size() || n < 2) {
        throw std::invalid_argument("magnitude_spectrum: bad length");
    }
    const std::size_t bins = n / 2 + 1;
    double *in = fftw_alloc_real(n);
    fftw_complex *out = fftw_alloc_complex(bins);
    fftw_plan plan;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out,
                                    FFTW_ESTIMATE);
    }
    std::fill(in, in + n, 0.0);
    std::copy(x.begin(), x.end(), in);
    fftw_execute(plan);
    std::vector<double> mag(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        mag[k] = std::hypot(out[k][0], out[k][1]);
    }
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return mag;
}

/// Symmetric Hann window of length n.
inline std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) {
        return w;
    }
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) /
                                     static_cast<double>(n - 1)));
    }
    return w;
}

/// Mean-subtracted, Hann-windowed copy of x.
inline std::vector<double> detrend_and_window(std::span<const double> x) {
    const double mean =
        std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const auto w = hann_window(x.size());
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = (x[i] - mean) * w[i];
    }
    return y;
}

/// Indices of interior local maxima (DC excluded) above `rel` * max.
inline std::vector<std::size_t> find_peaks(std::span<const double> mag,
                                           double rel = 0.05) {
    std::vector<std::size_t> peaks;
    if (mag.size() < 3) {
        return peaks;
    }
    double mx = 0.0;
    for (std::size_t k = 1; k < mag.size(); ++k) {
        mx = std::max(mx, mag[k]);
    }
    if (!(mx > 0.0)) {
        return peaks;
    }
    for (std::size_t k = 1; k + 1 < mag.size(); ++k) {
        if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] && mag[k] > rel * mx) {
            peaks.push_back(k);
        }
    }
    // a maximum sitting on the Nyquist bin
    const std::size_t last = mag.size() - 1;
    if (mag[last] > mag[last - 1] && mag[last] > rel * mx) {
        peaks.push_back(last);
    }
    return peaks;
}

/// Uniform spacing of a grid, or throws if it is not uniform to 1e-9 relative.
inline double uniform_spacing(std::span<const double> t) {
    if (t.size() < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::abs(dt) + 1e-15) {
            throw std::invalid_argument("grid is not uniform");
        }
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("grid must be increasing");
    }
    return dt;
}

} // namespace ccisim
