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

#include "deconv/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "deconv/decon.hpp"
#include "deconv/special.hpp"
#include "deconv/transforms.hpp"

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

// Truncation for the estimator integrals: all decay comes from phi_eta.
double empirical_cutoff(const EmpiricalDecon& ed, double ab_width)
{
    if (ed.quad.t_max > 0) return ed.quad.t_max;
    const double level = ed.quad.abs_tol / 10.0 / ((ed.m + 1) * std::max(ab_width, 1.0));
    return tail_cutoff(ed.sym.phi_eta, std::max(level, 1e-14), 1e5);
}

}  // namespace

void EmpiricalDecon::validate() const
{
    if (sample.values.empty()) throw std::invalid_argument("EmpiricalDecon: empty sample");
    for (double v : sample.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("EmpiricalDecon: sample contains non-finite values");
    if (m < 0) throw std::invalid_argument("EmpiricalDecon: m must be nonnegative");
    quad.validate();
}

std::complex<double> kernel_k(const Symmetrization& sym, double t, int m,
                              double zero_threshold)
{
    return std::conj(sym.phi_eta.eval(t)) * geometric_sum(sym, t, m, zero_threshold);
}

std::complex<double> phi_decon_empirical(const EmpiricalDecon& ed, double t)
{
    ed.validate();
    return ecf(ed.sample, t) * kernel_k(ed.sym, t, ed.m, ed.quad.zero_threshold);
}

IncrementResult empirical_increment(const EmpiricalDecon& ed, double a, double b,
                                    bool with_jackknife)
{
    ed.validate();
    if (!(a < b)) throw std::invalid_argument("empirical_increment: need a < b");

    const double hi = empirical_cutoff(ed, b - a);
    const std::span<const double> ys(ed.sample.values);

    const auto weight = [&](double t) {
        // phi_ab(a,b,-t) K(-t, m) / pi; the increment integrand is
        // Re(weight(t) * ecf(t)) after folding to t >= 0
        if (t < 1e-300) return std::complex<double>((b - a) / kPi, 0.0);
        return phi_ab(a, b, -t) * kernel_k(ed.sym, t, ed.m, ed.quad.zero_threshold) / kPi;
    };

    IncrementResult out;
    if (!with_jackknife) {
        const auto f = [&](double t) { return (weight(t) * ecf(ys, t)).real(); };
        std::vector<double> seeds;
        if (ed.quad.panel_rule == PanelRule::oscillation_aligned) {
            const double freq = std::max({std::abs(a), std::abs(b), 1.0});
            seeds = lobe_seeds(0.0, hi, freq);
        }
        for (double p : ed.sym.phi_eps_bar.zero_set.points_in(0.0, hi, 512))
            seeds.push_back(p);
        const QuadResult r = integrate_blocks_to(f, 0.0, std::min(hi, 32.0), hi,
                                                 ed.quad.abs_tol, ed.quad.rel_tol,
                                                 ed.quad.max_panels, seeds);
        const double target = std::max(ed.quad.abs_tol, ed.quad.rel_tol * std::abs(r.value));
        if (!r.converged && r.abs_err > 50 * target)
            throw QuadratureError("empirical_increment: quadrature did not converge",
                                  r.abs_err, target);
        out.value = r.value;
        return out;
    }

    // Jackknife route: the increment is the mean over observations of
    // w_k = int Re(weight(t) e^{i t y_k}) dt, so one fixed-rule node set
    // serves the estimate and its per-observation decomposition alike.
    const double freq = std::max({std::abs(a), std::abs(b), 1.0});
    const int panels = std::clamp(static_cast<int>(std::ceil(hi * freq / kPi)) * 2, 32, 4096);
    const auto nodes = gk15_nodes(0.0, hi, panels);

    const std::size_t n = ys.size();
    std::vector<double> w(n, 0.0);
    for (const auto& [t, wt] : nodes) {
        const std::complex<double> c = weight(t) * wt;
        for (std::size_t k = 0; k < n; ++k) {
            w[k] += c.real() * std::cos(t * ys[k]) - c.imag() * std::sin(t * ys[k]);
        }
    }
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : w) ss += (v - mean) * (v - mean);
    out.value = mean;
    if (n > 1) out.std_error = std::sqrt(ss / (static_cast<double>(n) * (n - 1.0)));
    return out;
}

}  // namespace deconv
