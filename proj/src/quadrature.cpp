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

#include "deconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace deconv {

void QuadSpec::validate() const
{
    if (!(abs_tol > 0) || !(rel_tol > 0))
        throw std::invalid_argument("QuadSpec: tolerances must be positive");
    if (!(zero_threshold > 0) || !(zero_threshold < 0.5))
        throw std::invalid_argument("QuadSpec: zero_threshold must lie in (0, 0.5)");
    if (max_panels < 1)
        throw std::invalid_argument("QuadSpec: max_panels must be positive");
    if (t_max < 0)
        throw std::invalid_argument("QuadSpec: t_max must be nonnegative");
}

namespace {

// 15-point Kronrod nodes/weights on [-1,1] and the embedded 7-point Gauss
// weights (QUADPACK qk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

// One GK15 pass over [a, b] with the QUADPACK error heuristic.
PanelEstimate gk15(const Integrand& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    double resk = 0.0, resg = 0.0;
    const double fc = f(c);
    fv[14] = fc;
    resk = kWgk[7] * fc;
    resg = kWg[3] * fc;
    for (std::size_t j = 0; j < 7; ++j) {
        const double lo = f(c - h * kXgk[j]);
        const double hi = f(c + h * kXgk[j]);
        fv[2 * j] = lo;
        fv[2 * j + 1] = hi;
        resk += kWgk[j] * (lo + hi);
        if (j % 2 == 1) resg += kWg[j / 2] * (lo + hi);
    }

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
    resasc *= std::abs(h);

    const double value = resk * h;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {value, err};
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double lo, double hi,
                              double abs_tol, double rel_tol, int max_panels,
                              std::vector<double> seeds)
{
    QuadResult out;
    if (!(hi > lo)) {
        out.converged = true;
        return out;
    }

    seeds.push_back(lo);
    seeds.push_back(hi);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    std::priority_queue<Panel> queue;
    double total = 0.0, total_err = 0.0;
    int panels = 0;
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
        const double a = std::max(seeds[i], lo);
        const double b = std::min(seeds[i + 1], hi);
        if (!(b > a)) continue;
        const auto est = gk15(f, a, b);
        queue.push({a, b, est.value, est.error});
        total += est.value;
        total_err += est.error;
        ++panels;
    }

    auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
    while (total_err > target() && panels < max_panels && !queue.empty()) {
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // panel narrower than machine spacing; keep its estimate
            total_err -= worst.error;
            total_err += worst.error * 1e-3;
            continue;
        }
        const auto left = gk15(f, worst.a, mid);
        const auto right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        ++panels;
    }

    out.value = total;
    out.abs_err = total_err;
    out.panels = panels;
    out.converged = total_err <= target();
    return out;
}

QuadResult integrate_blocks_to(const Integrand& f, double lo, double t0,
                               double hi_cap, double abs_tol, double rel_tol,
                               int max_panels, const std::vector<double>& seeds)
{
    if (hi_cap <= t0) t0 = hi_cap;
    std::vector<double> head_seeds;
    for (double s : seeds)
        if (s > lo && s < t0) head_seeds.push_back(s);

    QuadResult total = integrate_adaptive(f, lo, t0, abs_tol, rel_tol, max_panels, head_seeds);

    double a = t0;
    int quiet_blocks = 0;
    double prev2 = 0.0, prev1 = 0.0, last = 0.0;
    int block_count = 0;
    while (a < hi_cap && quiet_blocks < 2) {
        // full doublings only, overshooting the cap if needed, so trailing
        // block ratios stay comparable for the tail estimate below
        const double b = 2.0 * a;
        std::vector<double> block_seeds;
        for (double s : seeds)
            if (s > a && s < b) block_seeds.push_back(s);
        const QuadResult block =
            integrate_adaptive(f, a, b, abs_tol, rel_tol, max_panels, block_seeds);
        total.value += block.value;
        total.abs_err += block.abs_err;
        total.panels += block.panels;
        prev2 = prev1;
        prev1 = last;
        last = block.value;
        ++block_count;
        const double need = std::max(abs_tol, rel_tol * std::abs(total.value));
        quiet_blocks = (std::abs(block.value) + block.abs_err < 0.25 * need) ? quiet_blocks + 1 : 0;
        a = b;
    }

    // Reached the cap with a tail still pending.  When the trailing blocks
    // decay geometrically with one sign and a stable ratio (the signature of
    // an algebraic envelope without oscillation), sum the remaining tail as a
    // geometric series; this closes 1/t^2-type tails exactly to leading order.
    if (a >= hi_cap && quiet_blocks < 2 && block_count >= 3) {
        const bool same_sign = (prev2 > 0) == (prev1 > 0) && (prev1 > 0) == (last > 0);
        if (same_sign && prev2 != 0.0 && prev1 != 0.0) {
            const double r1 = prev1 / prev2;
            const double r2 = last / prev1;
            if (r1 > 0.05 && r1 < 0.95 && r2 > 0.05 && r2 < 0.95 &&
                std::abs(r2 - r1) < 0.1) {
                const double tail = last * r2 / (1.0 - r2);
                total.value += tail;
                total.abs_err += std::abs(tail) * std::abs(r2 - r1) * 4.0;
            }
        }
    }
    total.converged = total.abs_err <= std::max(abs_tol, rel_tol * std::abs(total.value));
    return total;
}

std::vector<std::pair<double, double>> gk15_nodes(double lo, double hi, int panels)
{
    std::vector<std::pair<double, double>> out;
    if (!(hi > lo) || panels < 1) return out;
    out.reserve(static_cast<std::size_t>(panels) * 15);
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = lo + (p + 0.5) * width;
        const double h = 0.5 * width;
        out.emplace_back(c, kWgk[7] * h);
        for (int j = 0; j < 7; ++j) {
            out.emplace_back(c - h * kXgk[j], kWgk[j] * h);
            out.emplace_back(c + h * kXgk[j], kWgk[j] * h);
        }
    }
    return out;
}

std::vector<double> lobe_seeds(double lo, double hi, double freq, std::size_t max_seeds)
{
    std::vector<double> seeds;
    if (!(freq > 0) || !(hi > lo)) return seeds;
    const double step = std::numbers::pi / freq;
    if ((hi - lo) / step > static_cast<double>(max_seeds)) {
        // too many lobes to enumerate: snap geometrically growing blocks to
        // lobe boundaries instead
        double t = std::max(lo + step, step * std::ceil(lo / step + 1.0));
        while (t < hi && seeds.size() < max_seeds) {
            seeds.push_back(t);
            double next = 2.0 * t;
            next = step * std::ceil(next / step);
            t = next;
        }
        return seeds;
    }
    for (double t = step * std::ceil(lo / step + 1e-12); t < hi; t += step) {
        if (t > lo) seeds.push_back(t);
        if (seeds.size() >= max_seeds) break;
    }
    return seeds;
}

}  // namespace deconv
