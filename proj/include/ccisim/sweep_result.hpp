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
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ccisim {

/**
 * Long-format result table. The leading `axes` columns hold swept
 * parameters, the trailing `series` columns hold computed values; every
 * row has axes.size() + series.size() entries.
 */
struct SweepResult {
    std::vector<std::string> axes;
    std::vector<std::string> series;
    std::vector<std::vector<double>> rows;
    nlohmann::json metadata = nlohmann::json::object();

    SweepResult() = default;
    SweepResult(std::vector<std::string> axis_names,
                std::vector<std::string> series_names)
        : axes(std::move(axis_names)), series(std::move(series_names)) {}

    [[nodiscard]] std::size_t width() const {
        return axes.size() + series.size();
    }

    [[nodiscard]] std::vector<std::string> column_names() const {
        std::vector<std::string> names = axes;
        names.insert(names.end(), series.begin(), series.end());
        return names;
    }

    [[nodiscard]] std::size_t column(std::string_view name) const {
        const auto names = column_names();
        const auto it = std::ranges::find(names, name);
        if (it == names.end()) {
            throw std::out_of_range("SweepResult: no column '" +
                                    std::string(name) + "'");
        }
        return static_cast<std::size_t>(std::distance(names.begin(), it));
    }

    [[nodiscard]] std::vector<double> values(std::string_view name) const {
        const std::size_t c = column(name);
        std::vector<double> v;
        v.reserve(rows.size());
        for (const auto &r : rows) {
            v.push_back(r[c]);
        }
        return v;
    }

    void add_row(std::vector<double> row) {
        if (row.size() != width()) {
            throw std::invalid_argument("SweepResult: row width mismatch");
        }
        rows.push_back(std::move(row));
    }

    /// Multiply column `name` by `factor` and rename it.
    void rescale_column(std::string_view name, std::string new_name,
                        double factor) {
        const std::size_t c = column(name);
        for (auto &r : rows) {
            r[c] *= factor;
        }
        if (c < axes.size()) {
            axes[c] = std::move(new_name);
        } else {
            series[c - axes.size()] = std::move(new_name);
        }
    }

    /// Largest |sum of `columns` - 1| over all rows.
    [[nodiscard]] double
    max_population_defect(const std::vector<std::string> &columns) const {
        std::vector<std::size_t> idx;
        for (const auto &n : columns) {
            idx.push_back(column(n));
        }
        double worst = 0.0;
        for (const auto &r : rows) {
            double s = 0.0;
            for (auto c : idx) {
                s += r[c];
            }
            worst = std::max(worst, std::abs(s - 1.0));
        }
        return worst;
    }
};

} // namespace ccisim
