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
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccisim/errors.hpp"
#include "ccisim/sweep_result.hpp"

namespace ccisim {

/// Locale-independent %.12g; negative zero prints as 0.
inline std::string format_double(double v) {
    if (v == 0.0) {
        return "0";
    }
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                         std::chars_format::general, 12);
    return std::string(buf.data(), ptr);
}

/// The double a reader of format_double(v) would recover.
inline double rounded_for_output(double v) {
    const std::string s = format_double(v);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

/// Population columns that must sum to one in every row.
using ConservationGroup = std::vector<std::string>;

inline constexpr double kConservationTolerance = 1e-8;

/// Throws NumericalError if any group's row sum deviates from 1.
inline void check_conservation(const SweepResult &r,
                               const std::vector<ConservationGroup> &groups) {
    for (const auto &g : groups) {
        const double d = r.max_population_defect(g);
        if (!(d < kConservationTolerance)) {
            throw NumericalError("population conservation violated at write time",
                                 d);
        }
    }
}

inline std::string to_csv(const SweepResult &r) {
    std::ostringstream o;
    const auto names = r.column_names();
    for (std::size_t c = 0; c < names.size(); ++c) {
        o << (c ? "," : "") << names[c];
    }
    o << "\n";
    for (const auto &row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            o << (c ? "," : "") << format_double(row[c]);
        }
        o << "\n";
    }
    return o.str();
}

/// {"columns": [...], "rows": [[...], ...]} with values rounded as in CSV.
inline nlohmann::json to_json_table(const SweepResult &r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : r.rows) {
        nlohmann::json j = nlohmann::json::array();
        for (double v : row) {
            j.push_back(rounded_for_output(v));
        }
        rows.push_back(std::move(j));
    }
    return {{"columns", r.column_names()}, {"rows", std::move(rows)}};
}

inline void write_text_file(const std::filesystem::path &path,
                            const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

inline void write_csv(const std::filesystem::path &path, const SweepResult &r,
                      const std::vector<ConservationGroup> &groups = {}) {
    check_conservation(r, groups);
    write_text_file(path, to_csv(r));
}

inline void write_json(const std::filesystem::path &path,
                       const nlohmann::json &j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Parse a header + numeric rows CSV (as written by to_csv).
inline SweepResult parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string &l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
                cell.pop_back();
            }
            const auto b = cell.find_first_not_of(' ');
            cells.push_back(b == std::string::npos ? "" : cell.substr(b));
        }
        return cells;
    };
    if (!std::getline(in, line)) {
        throw IoError("CSV input is empty");
    }
    SweepResult r({}, split(line));
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != r.width()) {
            throw IoError("CSV line " + std::to_string(lineno) +
                          ": wrong number of fields");
        }
        std::vector<double> row;
        for (const auto &c : cells) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc{} || ptr != c.data() + c.size() || c.empty()) {
                throw IoError("CSV line " + std::to_string(lineno) +
                              ": not a number '" + c + "'");
            }
            row.push_back(v);
        }
        r.add_row(std::move(row));
    }
    return r;
}

} // namespace ccisim
