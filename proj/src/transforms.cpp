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

#include "deconv/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "deconv/distributions.hpp"
#include "deconv/special.hpp"

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

// Quadrature seeds shared by the inversion integrals: lobe boundaries of the
// e^{-i xi t} factor plus known zeros / kinks of phi.
std::vector<double> inversion_seeds(const CharFn& phi, double freq, double lo, double hi,
                                    const QuadSpec& quad)
{
    std::vector<double> seeds;
    if (quad.panel_rule == PanelRule::oscillation_aligned && freq > 1.0)
        seeds = lobe_seeds(lo, hi, freq);
    for (double p : phi.zero_set.points_in(lo, hi, 512)) seeds.push_back(p);
    if (phi.support_bound && *phi.support_bound > lo && *phi.support_bound < hi)
        seeds.push_back(*phi.support_bound);
    return seeds;
}

void require_converged(const QuadResult& r, const QuadSpec& quad, const char* what)
{
    const double target = std::max(quad.abs_tol, quad.rel_tol * std::abs(r.value));
    if (!r.converged && r.abs_err > 50 * target)
        throw QuadratureError(std::string(what) + ": quadrature did not converge", r.abs_err,
                              target);
}

// Whether the Gil-Pelaez integrand can be extended continuously to t = 0
// (finite first moment, or a symmetric c.f.).
bool zero_extension_ok(const CharFn& phi)
{
    if (phi.is_real_symmetric) return true;
    if (phi.source && moment(*phi.source, 1)) return true;
    return false;
}

}  // namespace

SmoothingKernel gaussian_kernel()
{
    SmoothingKernel k;
    CharFn phi;
    phi.eval = [](double t) { return std::complex<double>(std::exp(-0.5 * t * t), 0.0); };
    phi.is_real_symmetric = true;
    phi.is_unit_interval = true;
    phi.zero_set = ZeroSet::empty_set();
    phi.decay = DecayHint::exponential;
    k.phi_i = std::move(phi);
    k.nu = 8.0;
    return k;
}

double tail_cutoff(const CharFn& phi, double level, double cap)
{
    if (phi.support_bound) return std::min(*phi.support_bound, cap);
    // envelope on a log grid; a window of samples guards against landing on
    // oscillatory zeros
    const int per_decade = 8;
    double t = 0.5;
    while (t < cap) {
        double envelope = 0.0;
        for (int j = 0; j < 2 * per_decade; ++j) {
            const double u = t * std::pow(10.0, j / double(2 * per_decade));
            envelope = std::max(envelope, std::abs(phi.eval(u)));
        }
        if (envelope < level) return t;
        t *= std::pow(10.0, 1.0 / per_decade);
    }
    return cap;
}

double effective_t_max(const CharFn& phi, const QuadSpec& quad)
{
    if (quad.t_max > 0) {
        if (phi.support_bound) return std::min(*phi.support_bound, quad.t_max);
        return quad.t_max;
    }
    return tail_cutoff(phi, quad.abs_tol / 10.0, 1e5);
}

double psi_cap_transform(const CharFn& phi_x, double S, double T, double xi,
                         const QuadSpec& quad)
{
    quad.validate();
    if (!(S >= 0) || !(T > S)) throw std::invalid_argument("psi_cap_transform: need 0 <= S < T");

    if (phi_x.source) {
        const DistributionSpec& src = *phi_x.source;
        if (std::isinf(T)) {
            double r = 0.5 * (1.0 - cdf(src, xi) - cdf_left(src, xi));
            if (S > 0)
                r += expect(src, [&](double x) { return si((xi - x) * S); }, quad.abs_tol) / kPi;
            return r;
        }
        return -expect(src,
                       [&](double x) { return si((xi - x) * T) - si((xi - x) * S); },
                       quad.abs_tol) /
               kPi;
    }

    // direct route: (1/pi) int_S^T Im(e^{-i xi t} phi(t)) / t dt
    const auto f = [&](double t) {
        if (t < 1e-300) return 0.0;
        const std::complex<double> z = phi_x.eval(t);
        return (z.imag() * std::cos(xi * t) - z.real() * std::sin(xi * t)) / (kPi * t);
    };
    const double hi = std::isinf(T) ? effective_t_max(phi_x, quad) : T;
    const auto seeds = inversion_seeds(phi_x, std::abs(xi), S, hi, quad);
    const double t0 = std::min(hi, std::max(2.0 * S, 32.0));
    const QuadResult r = integrate_blocks_to(f, S, t0, hi, quad.abs_tol, quad.rel_tol,
                                             quad.max_panels, seeds);
    require_converged(r, quad, "psi_cap_transform");
    return r.value;
}

double invert_cdf_bilateral(const CharFn& phi_x, double a, double b, const QuadSpec& quad)
{
    quad.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("invert_cdf_bilateral: need finite a < b");

    const auto f = [&](double t) {
        if (t < 1e-300) return (b - a) / kPi;
        const std::complex<double> v = phi_ab(a, b, -t) * phi_x.eval(t);
        return v.real() / kPi;
    };
    const double hi = effective_t_max(phi_x, quad);
    const double freq = std::max(std::abs(a), std::abs(b));
    const auto seeds = inversion_seeds(phi_x, freq, 0.0, hi, quad);
    const QuadResult r = integrate_blocks_to(f, 0.0, std::min(hi, 32.0), hi, quad.abs_tol,
                                             quad.rel_tol, quad.max_panels, seeds);
    require_converged(r, quad, "invert_cdf_bilateral");
    return r.value;
}

double invert_cdf_gilpelaez(const CharFn& phi_x, double xi, const QuadSpec& quad)
{
    quad.validate();
    const double lo = zero_extension_ok(phi_x) ? 0.0 : 1e-8;
    const auto f = [&](double t) {
        if (t < 1e-300) return 0.0;
        const std::complex<double> z = phi_x.eval(t);
        return (z.imag() * std::cos(xi * t) - z.real() * std::sin(xi * t)) / (kPi * t);
    };
    const double hi = effective_t_max(phi_x, quad);
    const auto seeds = inversion_seeds(phi_x, std::abs(xi), lo, hi, quad);
    const QuadResult r = integrate_blocks_to(f, lo, std::min(hi, 32.0), hi, quad.abs_tol,
                                             quad.rel_tol, quad.max_panels, seeds);
    require_converged(r, quad, "invert_cdf_gilpelaez");
    return 0.5 - r.value;
}

double delta_schedule_limit(const std::function<double(double)>& value, double tol,
                            const char* what)
{
    double v_prev = 0.0, d_prev = 0.0, e_prev = 0.0;
    bool have_v = false, have_d = false, have_e = false;
    double delta = 0.5;
    for (int k = 0; k < 20; ++k, delta *= 0.5) {
        const double v = value(delta);
        if (have_v) {
            const double d = v - v_prev;
            if (std::abs(d) < tol) return v;
            bool extrapolated = false;
            if (have_d && d_prev != 0.0 && (d > 0) == (d_prev > 0)) {
                const double r = d / d_prev;
                if (r > 0.05 && r < 0.95) {
                    const double e = v + d * r / (1.0 - r);
                    if (have_e && std::abs(e - e_prev) < tol) return e;
                    e_prev = e;
                    have_e = true;
                    extrapolated = true;
                }
            }
            if (!extrapolated) have_e = false;
            d_prev = d;
            have_d = true;
        }
        v_prev = v;
        have_v = true;
    }
    throw QuadratureError(std::string(what) + ": delta-schedule did not reach a Cauchy limit",
                          std::abs(d_prev), tol);
}

double invert_pdf(const CharFn& phi_x, const SmoothingKernel& kernel, double xi,
                  const QuadSpec& quad)
{
    quad.validate();
    const double hi = effective_t_max(phi_x, quad);
    const auto seeds = inversion_seeds(phi_x, std::abs(xi), 0.0, hi, quad);

    const auto smoothed = [&](double delta) {
        const auto f = [&](double t) {
            const std::complex<double> v = phi_x.eval(t) * kernel.phi_i.eval(delta * t);
            return (v.real() * std::cos(xi * t) + v.imag() * std::sin(xi * t)) / kPi;
        };
        const QuadResult r = integrate_blocks_to(f, 0.0, std::min(hi, 32.0), hi, quad.abs_tol,
                                                 quad.rel_tol, quad.max_panels, seeds);
        require_converged(r, quad, "invert_pdf");
        return r.value;
    };
    return delta_schedule_limit(smoothed, quad.abs_tol + quad.rel_tol, "invert_pdf");
}

}  // namespace deconv
