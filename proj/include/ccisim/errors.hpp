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

#include <stdexcept>
#include <string>
#include <vector>

namespace ccisim {

/// A numerical procedure failed to meet its tolerance.
class NumericalError : public std::runtime_error {
  public:
    NumericalError(const std::string &what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) +
                             ")"),
          residual_(residual) {}

    [[nodiscard]] double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

/// Invalid experiment configuration; carries one message per bad field.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    [[nodiscard]] const std::vector<std::string> &issues() const noexcept {
        return issues_;
    }

  private:
    static std::string join(const std::vector<std::string> &issues) {
        std::string s = "invalid configuration:";
        for (const auto &i : issues) {
            s += "\n  " + i;
        }
        return s;
    }

    std::vector<std::string> issues_;
};

/// An output artifact could not be written or an input file read.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace ccisim
