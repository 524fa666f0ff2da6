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

#include "deconv/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace deconv {

using nlohmann::json;

namespace {

DistributionSpec parse_distribution(const json& j)
{
    if (!j.is_object() || !j.contains("family"))
        throw std::invalid_argument("distribution: expected {family, params}");
    const std::string family = j.at("family").get<std::string>();
    const json params = j.value("params", json::object());
    auto p = [&](const char* name) -> double {
        if (!params.contains(name))
            throw std::invalid_argument("distribution " + family + ": missing param '" +
                                        name + "'");
        return params.at(name).get<double>();
    };
    if (family == "dirac") return DistributionSpec::dirac(p("a"));
    if (family == "gaussian") return DistributionSpec::gaussian(p("mu"), p("sigma"));
    if (family == "laplace") return DistributionSpec::laplace(p("mu"), p("b"));
    if (family == "uniform") return DistributionSpec::uniform(p("a"), p("b"));
    if (family == "triangular_diff") return DistributionSpec::triangular_diff(p("a"));
    if (family == "polya_triangle") return DistributionSpec::polya_triangle(p("T"));
    if (family == "mixture") {
        if (!j.contains("weights") || !j.contains("components"))
            throw std::invalid_argument("mixture: needs weights and components");
        std::vector<double> w = j.at("weights").get<std::vector<double>>();
        std::vector<DistributionSpec> comps;
        for (const auto& c : j.at("components")) comps.push_back(parse_distribution(c));
        return DistributionSpec::mixture(std::move(w), std::move(comps));
    }
    throw std::invalid_argument("distribution: unknown family '" + family + "'");
}

SymmetrizationRequest parse_symmetrization(const json& j)
{
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "conjugate") return SymmetrizationRequest::conjugate();
        throw std::invalid_argument("symmetrization: unknown mode '" + s + "'");
    }
    if (j.is_object()) {
        if (j.contains("shift")) return SymmetrizationRequest::shift(j.at("shift").get<double>());
        if (j.contains("custom_eta"))
            return SymmetrizationRequest::custom(cf(parse_distribution(j.at("custom_eta"))));
    }
    throw std::invalid_argument(
        "symmetrization: expected \"conjugate\", {\"shift\": tau} or {\"custom_eta\": dist}");
}

QuadSpec parse_quad(const json& j)
{
    QuadSpec q;
    q.t_max = j.value("t_max", q.t_max);
    q.abs_tol = j.value("abs_tol", q.abs_tol);
    q.rel_tol = j.value("rel_tol", q.rel_tol);
    q.zero_threshold = j.value("zero_threshold", q.zero_threshold);
    q.max_panels = j.value("max_panels", q.max_panels);
    const std::string rule = j.value("panel_rule", std::string("oscillation_aligned"));
    if (rule == "oscillation_aligned")
        q.panel_rule = PanelRule::oscillation_aligned;
    else if (rule == "adaptive_bisection")
        q.panel_rule = PanelRule::adaptive_bisection;
    else
        throw std::invalid_argument("quad.panel_rule: unknown rule '" + rule + "'");
    q.validate();
    return q;
}

}  // namespace

std::vector<double> GridConfig::points() const
{
    validate();
    std::vector<double> pts(count);
    for (int i = 0; i < count; ++i)
        pts[i] = min + (max - min) * static_cast<double>(i) / (count - 1);
    return pts;
}

void GridConfig::validate() const
{
    if (count < 2) throw std::invalid_argument("grid.count must be >= 2");
    if (!(min < max)) throw std::invalid_argument("grid.min must be < grid.max");
}

RunConfig parse_config(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    RunConfig cfg;
    if (j.contains("target")) cfg.target = parse_distribution(j.at("target"));
    if (j.contains("error")) cfg.error = parse_distribution(j.at("error"));
    if (j.contains("symmetrization"))
        cfg.symmetrization = parse_symmetrization(j.at("symmetrization"));
    if (j.contains("m")) {
        cfg.m_values.clear();
        if (j.at("m").is_array())
            cfg.m_values = j.at("m").get<std::vector<int>>();
        else
            cfg.m_values.push_back(j.at("m").get<int>());
    }
    for (int m : cfg.m_values)
        if (m < 0) throw std::invalid_argument("config: m must be >= 0");
    if (j.contains("grid")) {
        cfg.grid.min = j.at("grid").value("min", cfg.grid.min);
        cfg.grid.max = j.at("grid").value("max", cfg.grid.max);
        cfg.grid.count = j.at("grid").value("count", cfg.grid.count);
        cfg.grid.validate();
    }
    if (j.contains("quad")) cfg.quad = parse_quad(j.at("quad"));
    cfg.kernel = j.value("kernel", cfg.kernel);
    if (cfg.kernel != "gaussian")
        throw std::invalid_argument("config: unknown kernel '" + cfg.kernel + "'");
    if (j.contains("sample_path")) cfg.sample_path = j.at("sample_path").get<std::string>();
    if (j.contains("sample_inline"))
        cfg.sample_inline = j.at("sample_inline").get<std::vector<double>>();
    cfg.output_path = j.value("output_path", cfg.output_path);
    cfg.bias = j.value("bias", cfg.bias);
    cfg.with_se = j.value("se", cfg.with_se);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("invert")) {
        InvertConfig inv;
        const json& ji = j.at("invert");
        inv.formula = ji.value("formula", inv.formula);
        if (inv.formula != "gilpelaez" && inv.formula != "bilateral" &&
            inv.formula != "density")
            throw std::invalid_argument("invert.formula must be gilpelaez, bilateral or density");
        if (ji.contains("xi")) inv.xi = ji.at("xi").get<std::vector<double>>();
        inv.a = ji.value("a", 0.0);
        inv.b = ji.value("b", 0.0);
        cfg.invert = inv;
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

DistributionSpec parse_distribution_json(const std::string& json_text)
{
    return parse_distribution(json::parse(json_text));
}

Sample load_sample_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("sample: cannot open '" + path + "'");
    Sample out;
    out.seed_info = "file:" + path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);  // UTF-8 BOM
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        const std::string token = line.substr(first, last - first + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v))
            throw std::invalid_argument("sample: non-numeric line " + std::to_string(lineno) +
                                        " in '" + path + "'");
        out.values.push_back(v);
    }
    if (out.values.empty())
        throw std::invalid_argument("sample: no observations in '" + path + "'");
    return out;
}

std::string defaults_table()
{
    json j;
    j["quad"] = {{"t_max", "auto: smallest t with |phi| < abs_tol/10, capped at 1e5"},
                 {"abs_tol", 1e-9},
                 {"rel_tol", 1e-7},
                 {"zero_threshold", 1e-9},
                 {"max_panels", 20000},
                 {"panel_rule", "oscillation_aligned"}};
    j["symmetrization"] = "conjugate";
    j["kernel"] = "gaussian";
    j["delta_schedule"] = {{"delta0", 0.5}, {"factor", 0.5}, {"max_halvings", 20}};
    j["atom_exclusion_distance"] = 1e-6;
    j["oracle"] = {{"max_m", 24}, {"binomial_to_neumann_switch", 12}};
    j["grid"] = {{"min", -3.0}, {"max", 3.0}, {"count", 25}};
    return j.dump(2);
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

}  // namespace deconv
