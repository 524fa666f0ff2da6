/*
 * Copyright 2026 The deconv authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DECONV_CONFIG_HPP
#define DECONV_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deconv/charfn.hpp"
#include "deconv/distributions.hpp"
#include "deconv/quadrature.hpp"
#include "deconv/types.hpp"

namespace deconv {

struct GridConfig {
    double min = -3.0;
    double max = 3.0;
    int count = 25;

    std::vector<double> points() const;
    void validate() const;  // count >= 2, min < max
};

struct InvertConfig {
    std::string formula = "gilpelaez";  // gilpelaez | bilateral | density
    std::vector<double> xi;
    double a = 0.0;
    double b = 0.0;
};

/// One run of the command-line front end, parsed from a JSON config file.
struct RunConfig {
    std::optional<DistributionSpec> target;
    std::optional<DistributionSpec> error;
    SymmetrizationRequest symmetrization;
    std::vector<int> m_values{0};
    GridConfig grid;
    QuadSpec quad;
    std::string kernel = "gaussian";
    std::optional<std::string> sample_path;
    std::optional<std::vector<double>> sample_inline;
    std::string output_path = "out.csv";
    bool bias = false;
    bool with_se = false;
    std::uint64_t seed = 0;
    std::optional<InvertConfig> invert;
};

/// Parses the JSON config file; throws std::invalid_argument with a message
/// naming the offending field.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

DistributionSpec parse_distribution_json(const std::string& json_text);

/// One observation per line; '#' starts a comment; blank lines are skipped.
/// Throws std::invalid_argument naming the first bad line.
Sample load_sample_file(const std::string& path);

/// The numeric defaults table printed by --show-defaults (JSON text).
std::string defaults_table();

/// Locale-independent shortest-round-trip formatting for CSV cells.
std::string format_double(double v);

}  // namespace deconv

#endif  // DECONV_CONFIG_HPP
