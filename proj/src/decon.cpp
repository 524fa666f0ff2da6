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

#include "deconv/decon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "deconv/special.hpp"

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAtomExclusion = 1e-6;
constexpr double kTCap = 1e5;

// Outer truncation for Phi_D-side integrals: |Phi_D| <= min(|Phi_X|, (m+1)|Phi_Ydd|),
// so the integral may stop where either envelope dies.
double decon_cutoff(const DeconProblem& prob)
{
    if (prob.quad.t_max > 0) {
        if (prob.sym.phi_eps_bar.support_bound)
            return std::min(*prob.sym.phi_eps_bar.support_bound, prob.quad.t_max);
        return prob.quad.t_max;
    }
    if (prob.sym.phi_eps_bar.support_bound)
        return std::min(*prob.sym.phi_eps_bar.support_bound, kTCap);
    const double level = prob.quad.abs_tol / 10.0;
    double cut = tail_cutoff(prob.phi_y_dotdot, level / (prob.m + 1), kTCap);
    if (prob.phi_x) cut = std::min(cut, tail_cutoff(*prob.phi_x, level, kTCap));
    return cut;
}

std::vector<double> decon_seeds(const DeconProblem& prob, double freq, double hi)
{
    std::vector<double> seeds;
    if (prob.quad.panel_rule == PanelRule::oscillation_aligned && freq > 1.0)
        seeds = lobe_seeds(0.0, hi, freq);
    // panels split at descriptor zeros so the integrand switch never lands
    // mid-panel
    for (double p : prob.sym.phi_eps_bar.zero_set.points_in(0.0, hi, 512))
        seeds.push_back(p);
    if (prob.sym.phi_eps_bar.support_bound) {
        const double b = *prob.sym.phi_eps_bar.support_bound;
        if (b > 0 && b < hi) seeds.push_back(b);
    }
    return seeds;
}

void require_converged(const QuadResult& r, const QuadSpec& quad, const char* what)
{
    const double target = std::max(quad.abs_tol, quad.rel_tol * std::abs(r.value));
    if (!r.converged && r.abs_err > 50 * target)
        throw QuadratureError(std::string(what) + ": quadrature did not converge", r.abs_err,
                              target);
}

bool anchor_zero_extension_ok(const DeconProblem& prob)
{
    if (prob.phi_y_dotdot.is_real_symmetric) return true;
    if (prob.phi_x && prob.phi_x->is_real_symmetric) return true;
    if (prob.phi_x && prob.phi_x->source && moment(*prob.phi_x->source, 1)) return true;
    return false;
}

// D(xi, m) by the unilateral representation.
double unilateral_value(const DeconProblem& prob, double xi, double hi,
                        const std::vector<double>& seeds)
{
    const auto f = [&](double t) {
        if (t < 1e-300) return 0.0;
        const std::complex<double> z = prob.phi_y_dotdot.eval(t);
        const double g = geometric_sum(prob.sym, t, prob.m, prob.quad.zero_threshold);
        const double im = z.imag() * std::cos(xi * t) - z.real() * std::sin(xi * t);
        return -im * g / (kPi * t);
    };
    const double lo = anchor_zero_extension_ok(prob) ? 0.0 : 1e-8;
    const QuadResult r = integrate_blocks_to(f, lo, std::min(hi, 32.0), hi, prob.quad.abs_tol,
                                             prob.quad.rel_tol, prob.quad.max_panels, seeds);
    require_converged(r, prob.quad, "eval_decon(anchor)");
    return 0.5 + r.value;
}

// D(b, m) - D(a, m) by the bilateral increment integral.
double increment_value(const DeconProblem& prob, double a, double b, double hi,
                       const std::vector<double>& seeds)
{
    const auto f = [&](double t) {
        if (t < 1e-300) return (b - a) / kPi;
        const std::complex<double> v = phi_ab(a, b, -t) * phi_decon(prob, t);
        return v.real() / kPi;
    };
    const QuadResult r = integrate_blocks_to(f, 0.0, std::min(hi, 32.0), hi, prob.quad.abs_tol,
                                             prob.quad.rel_tol, prob.quad.max_panels, seeds);
    require_converged(r, prob.quad, "eval_decon(increment)");
    return r.value;
}

// Numerical check of the near-zero integrability of (1 - phi_eps_bar(t))/t:
// the contributions from (10^-(j+1), 10^-j] must fade.
void check_bias_integrability(const DeconProblem& prob, const char* what)
{
    const auto f = [&](double t) {
        return t < 1e-300 ? 0.0 : (1.0 - prob.sym.eps_bar(t)) / t;
    };
    double prev = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double hi = std::pow(10.0, -j);
        const double lo = hi / 10.0;
        const QuadResult r = integrate_adaptive(f, lo, hi, 1e-12, 1e-9, 200);
        if (j >= 4 && r.value > prev + 1e-9 && r.value > 1e-6)
            throw std::invalid_argument(
                std::string(what) +
                ": (1 - phi_eps_bar)/t shows no integrable behaviour near t = 0");
        prev = r.value;
    }
}

// (1/pi) Integral of Im(e^{-i xi t} phi_x(t))/t over a union of intervals,
// the folded form of the Theta correction of the compact-support limit.
double theta_cdf_correction(const DeconProblem& prob, double xi, double t_support)
{
    const ZeroSet& zs = prob.sym.phi_eps_bar.zero_set;
    if (zs.kind != ZeroSet::Kind::intervals) return 0.0;
    double total = 0.0;
    for (const auto& [t1, t2] : zs.intervals) {
        const double lo = std::max(t1, 0.0);
        const double hi = std::min(t2, t_support);
        if (!(hi > lo)) continue;
        const auto f = [&](double t) {
            const std::complex<double> z = prob.phi_x->eval(t);
            return (z.imag() * std::cos(xi * t) - z.real() * std::sin(xi * t)) / (kPi * t);
        };
        const QuadResult r = integrate_adaptive(f, lo, hi, prob.quad.abs_tol,
                                                prob.quad.rel_tol, prob.quad.max_panels);
        total += r.value;
    }
    return total;
}

// (1/pi) Integral of Re(e^{-i xi t} phi_x(t)) over [lo, hi] (hi may be inf),
// the building block of the density-side psi corrections.
double psi_density_piece(const DeconProblem& prob, double xi, double lo, double hi)
{
    const CharFn& phi = *prob.phi_x;
    const auto f = [&](double t) {
        const std::complex<double> z = phi.eval(t);
        return (z.real() * std::cos(xi * t) + z.imag() * std::sin(xi * t)) / kPi;
    };
    double top = hi;
    if (std::isinf(hi)) {
        const bool integrable = phi.decay == DecayHint::exponential ||
                                phi.decay == DecayHint::compact ||
                                (phi.decay == DecayHint::algebraic && phi.decay_exponent > 1.0);
        if (!integrable)
            throw UnsupportedStructureError(
                "eval_density_limit_oracle: phi_x is not integrable and no "
                "gamma/phi factorization is available");
        top = effective_t_max(phi, prob.quad);
    }
    if (!(top > lo)) return 0.0;
    const QuadResult r = integrate_blocks_to(f, lo, std::min(top, std::max(lo * 2, 32.0)), top,
                                             prob.quad.abs_tol, prob.quad.rel_tol,
                                             prob.quad.max_panels);
    require_converged(r, prob.quad, "eval_density_limit_oracle");
    return r.value;
}

}  // namespace

void DeconProblem::validate() const
{
    if (m < 0) throw std::invalid_argument("DeconProblem: m must be nonnegative");
    quad.validate();
    if (!sym.phi_eps_bar.is_unit_interval)
        throw std::invalid_argument("DeconProblem: phi_eps_bar must map into [0, 1]");
}

DeconProblem make_problem(const DistributionSpec& target, const DistributionSpec& error,
                          const SymmetrizationRequest& mode, int m, QuadSpec quad)
{
    DeconProblem prob;
    prob.m = m;
    prob.quad = quad;
    prob.phi_x = cf(target);
    const CharFn phi_eps = cf(error);
    prob.sym = symmetrize(phi_eps, mode);
    const CharFn phi_y = cf_product(*prob.phi_x, phi_eps);
    prob.phi_y_dotdot = compose_y_dotdot(phi_y, prob.sym);

    // continuity of f_ydd from family knowledge: a convolution has a
    // continuous density when either factor brings one, or both factors are
    // absolutely continuous with (bounded) densities
    bool eps_bar_abs_cont = is_absolutely_continuous(error);
    bool eps_bar_cont_density = has_continuous_density(error);
    if (mode.kind == SymmetrizationRequest::Kind::conjugate)
        eps_bar_cont_density = eps_bar_abs_cont;  // self-convolution smooths
    const bool x_abs_cont = is_absolutely_continuous(target);
    prob.ydd_density_continuous = (x_abs_cont && has_continuous_density(target)) ||
                                  eps_bar_cont_density ||
                                  (x_abs_cont && eps_bar_abs_cont);

    for (const auto& [x, mass] : atoms(target)) {
        (void)mass;
        prob.exclusion_atoms.push_back(x);
    }
    const auto err_atoms = atoms(error);
    if (!err_atoms.empty()) {
        switch (mode.kind) {
            case SymmetrizationRequest::Kind::conjugate:
                // eps - eps' has atoms at all pairwise differences
                for (const auto& [xi, mi] : err_atoms) {
                    (void)mi;
                    for (const auto& [xj, mj] : err_atoms) {
                        (void)mj;
                        prob.exclusion_atoms.push_back(xi - xj);
                    }
                }
                break;
            case SymmetrizationRequest::Kind::shift:
                for (const auto& [x, mass] : err_atoms) {
                    (void)mass;
                    prob.exclusion_atoms.push_back(x - mode.tau);
                }
                break;
            case SymmetrizationRequest::Kind::custom:
                if (mode.eta && mode.eta->source) {
                    for (const auto& [x, mx] : err_atoms) {
                        (void)mx;
                        for (const auto& [h, mh] : atoms(*mode.eta->source)) {
                            (void)mh;
                            prob.exclusion_atoms.push_back(x - h);
                        }
                    }
                } else {
                    for (const auto& [x, mass] : err_atoms) {
                        (void)mass;
                        prob.exclusion_atoms.push_back(x);
                    }
                }
                break;
        }
    }
    prob.validate();
    return prob;
}

double m_power(const Symmetrization& sym, double t, int m)
{
    if (m < 0) throw std::invalid_argument("m_power: m must be nonnegative");
    const double p = sym.eps_bar(t);
    if (p >= 1.0) return 0.0;
    return std::exp((m + 1) * std::log1p(-p));
}

double geometric_sum(const Symmetrization& sym, double t, int m, double zero_threshold)
{
    if (m < 0) throw std::invalid_argument("geometric_sum: m must be nonnegative");
    const double p = sym.eps_bar(t);
    // below the threshold the point counts as a zero of phi_eps, where the
    // piecewise value is m + 1 (and where the ratio form degrades to 0/0)
    if (p < zero_threshold) return m + 1.0;
    const double g = -std::expm1((m + 1) * std::log1p(-p)) / p;
    return std::clamp(g, 1.0, m + 1.0);
}

std::complex<double> phi_decon(const DeconProblem& prob, double t, PhiDeconPath path)
{
    switch (path) {
        case PhiDeconPath::ydotdot_gsum:
            return prob.phi_y_dotdot.eval(t) *
                   geometric_sum(prob.sym, t, prob.m, prob.quad.zero_threshold);
        case PhiDeconPath::target_mpower: {
            if (!prob.phi_x)
                throw std::invalid_argument("phi_decon: target path needs phi_x");
            const double p = prob.sym.eps_bar(t);
            const double one_minus_p = -std::expm1((prob.m + 1) * std::log1p(-p));
            return prob.phi_x->eval(t) * one_minus_p;
        }
    }
    throw std::logic_error("phi_decon: unknown path");
}

DeconCurve eval_decon(const DeconProblem& prob, const std::vector<double>& grid)
{
    prob.validate();
    if (grid.empty()) throw std::invalid_argument("eval_decon: empty grid");

    DeconCurve out;
    out.fn.grid = grid;
    out.fn.kind = GridKind::cdf_like;
    out.fn.values.resize(grid.size());
    out.fn.validate();

    for (std::size_t i = 0; i < grid.size(); ++i)
        for (double a : prob.exclusion_atoms)
            if (std::abs(grid[i] - a) <= kAtomExclusion) {
                out.atom_flagged.push_back(i);
                break;
            }

    const double hi = decon_cutoff(prob);
    double freq = std::abs(grid.front());
    for (double xi : grid) freq = std::max(freq, std::abs(xi));
    const auto seeds = decon_seeds(prob, freq, hi);

    out.fn.values[0] = unilateral_value(prob, grid[0], hi, seeds);
    for (std::size_t i = 1; i < grid.size(); ++i)
        out.fn.values[i] =
            out.fn.values[i - 1] + increment_value(prob, grid[i - 1], grid[i], hi, seeds);
    return out;
}

double eval_decon_bias(const DeconProblem& prob, double xi)
{
    prob.validate();
    if (!prob.phi_x) throw std::invalid_argument("eval_decon_bias: needs phi_x");
    check_bias_integrability(prob, "eval_decon_bias");

    const double hi = decon_cutoff(prob);
    const auto seeds = decon_seeds(prob, std::abs(xi), hi);
    const auto f = [&](double t) {
        if (t < 1e-300) return 0.0;
        const double p = m_power(prob.sym, t, prob.m);
        if (p == 0.0) return 0.0;
        const std::complex<double> z = prob.phi_x->eval(t);
        return p * (z.imag() * std::cos(xi * t) - z.real() * std::sin(xi * t)) / (kPi * t);
    };
    const QuadResult r = integrate_blocks_to(f, 0.0, std::min(hi, 32.0), hi, prob.quad.abs_tol,
                                             prob.quad.rel_tol, prob.quad.max_panels, seeds);
    require_converged(r, prob.quad, "eval_decon_bias");
    return r.value;
}

DeconCurve eval_density(const DeconProblem& prob, const SmoothingKernel& kernel,
                        const std::vector<double>& grid)
{
    prob.validate();
    if (grid.empty()) throw std::invalid_argument("eval_density: empty grid");
    if (!prob.ydd_density_continuous)
        throw std::invalid_argument(
            "eval_density: F_y_dotdot must be absolutely continuous with a "
            "continuous density");

    DeconCurve out;
    out.fn.grid = grid;
    out.fn.kind = GridKind::density_like;
    out.fn.values.assign(grid.size(), 0.0);
    out.fn.validate();

    const double hi_decon = decon_cutoff(prob);
    const double kernel_cut = tail_cutoff(kernel.phi_i, prob.quad.abs_tol / 10.0, kTCap);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double xi = grid[i];
        const auto smoothed = [&](double delta) {
            const double hi = std::min(hi_decon, kernel_cut / delta);
            const auto seeds = decon_seeds(prob, std::abs(xi), hi);
            const auto f = [&](double t) {
                const std::complex<double> v =
                    phi_decon(prob, t) * kernel.phi_i.eval(delta * t);
                return (v.real() * std::cos(xi * t) + v.imag() * std::sin(xi * t)) / kPi;
            };
            const QuadResult r =
                integrate_blocks_to(f, 0.0, std::min(hi, 32.0), hi, prob.quad.abs_tol,
                                    prob.quad.rel_tol, prob.quad.max_panels, seeds);
            require_converged(r, prob.quad, "eval_density");
            return r.value;
        };
        out.fn.values[i] = delta_schedule_limit(
            smoothed, prob.quad.abs_tol + prob.quad.rel_tol, "eval_density");
    }
    return out;
}

double eval_density_bias(const DeconProblem& prob, const SmoothingKernel& kernel, double xi)
{
    prob.validate();
    if (!prob.phi_x || !prob.phi_x->source ||
        !is_absolutely_continuous(*prob.phi_x->source))
        throw std::invalid_argument("eval_density_bias: needs an absolutely continuous F_X");

    const double hi_decon = decon_cutoff(prob);
    const double kernel_cut = tail_cutoff(kernel.phi_i, prob.quad.abs_tol / 10.0, kTCap);

    const auto smoothed = [&](double delta) {
        const double hi = std::min(hi_decon, kernel_cut / delta);
        const auto seeds = decon_seeds(prob, std::abs(xi), hi);
        const auto f = [&](double t) {
            const double p = m_power(prob.sym, t, prob.m);
            if (p == 0.0) return 0.0;
            const std::complex<double> v = prob.phi_x->eval(t) * kernel.phi_i.eval(delta * t);
            return -p * (v.real() * std::cos(xi * t) + v.imag() * std::sin(xi * t)) / kPi;
        };
        const QuadResult r = integrate_blocks_to(f, 0.0, std::min(hi, 32.0), hi,
                                                 prob.quad.abs_tol, prob.quad.rel_tol,
                                                 prob.quad.max_panels, seeds);
        require_converged(r, prob.quad, "eval_density_bias");
        return r.value;
    };
    return delta_schedule_limit(smoothed, prob.quad.abs_tol + prob.quad.rel_tol,
                                "eval_density_bias");
}

double eval_decon_limit_oracle(const DeconProblem& prob, double xi)
{
    prob.validate();
    if (!prob.phi_x || !prob.phi_x->source)
        throw UnsupportedStructureError(
            "eval_decon_limit_oracle: needs an analytic target distribution");
    const double midpoint = cdf_midpoint(*prob.phi_x->source, xi);
    const ZeroSet& zs = prob.sym.phi_eps_bar.zero_set;

    if (prob.sym.phi_eps_bar.support_bound) {
        check_bias_integrability(prob, "eval_decon_limit_oracle");
        const double ts = *prob.sym.phi_eps_bar.support_bound;
        const double theta = theta_cdf_correction(prob, xi, ts);
        const double psi = psi_cap_transform(*prob.phi_x, ts, kInf, xi, prob.quad);
        return midpoint + theta + psi;
    }
    switch (zs.kind) {
        case ZeroSet::Kind::empty:
        case ZeroSet::Kind::finite_points:
            return midpoint;  // the correction sum vanishes with the measure of N
        case ZeroSet::Kind::beyond:
            return midpoint + psi_cap_transform(*prob.phi_x, zs.beyond, kInf, xi, prob.quad);
        case ZeroSet::Kind::intervals: {
            double sum = 0.0;
            for (const auto& [t1, t2] : zs.intervals)
                sum += psi_cap_transform(*prob.phi_x, t1, t2, xi, prob.quad);
            return midpoint + sum;
        }
        default:
            throw UnsupportedStructureError(
                "eval_decon_limit_oracle: zero set is neither compactly supported "
                "nor a finite union of intervals");
    }
}

double eval_density_limit_oracle(const DeconProblem& prob, const SmoothingKernel& kernel,
                                 double xi)
{
    (void)kernel;  // the limit is kernel-free; the kernel only steers d(., m)
    prob.validate();
    if (!prob.phi_x || !prob.phi_x->source ||
        !is_absolutely_continuous(*prob.phi_x->source))
        throw UnsupportedStructureError(
            "eval_density_limit_oracle: needs an analytic absolutely continuous target");
    const double midpoint = pdf_midpoint(*prob.phi_x->source, xi);
    const ZeroSet& zs = prob.sym.phi_eps_bar.zero_set;

    if (prob.sym.phi_eps_bar.support_bound) {
        const double ts = *prob.sym.phi_eps_bar.support_bound;
        double theta = 0.0;
        if (zs.kind == ZeroSet::Kind::intervals)
            for (const auto& [t1, t2] : zs.intervals) {
                const double lo = std::max(t1, 0.0), hi = std::min(t2, ts);
                if (hi > lo) theta += psi_density_piece(prob, xi, lo, hi);
            }
        return midpoint - theta - psi_density_piece(prob, xi, ts, kInf);
    }
    switch (zs.kind) {
        case ZeroSet::Kind::empty:
        case ZeroSet::Kind::finite_points:
            return midpoint;
        case ZeroSet::Kind::beyond:
            return midpoint - psi_density_piece(prob, xi, zs.beyond, kInf);
        case ZeroSet::Kind::intervals: {
            double sum = 0.0;
            for (const auto& [t1, t2] : zs.intervals)
                sum += psi_density_piece(prob, xi, t1, std::min(t2, kInf));
            return midpoint - sum;
        }
        default:
            throw UnsupportedStructureError(
                "eval_density_limit_oracle: zero set is neither compactly supported "
                "nor a finite union of intervals");
    }
}

std::optional<FactorizationDescriptor> factorization_for(const DistributionSpec& target,
                                                         const Symmetrization& sym)
{
    FactorizationDescriptor desc;
    desc.t0 = 0.0;
    if (sym.phi_eps_bar.zero_set.kind == ZeroSet::Kind::periodic_points)
        desc.rho = sym.phi_eps_bar.zero_set.period;

    const auto target_atoms = atoms(target);
    if (target.family == Family::dirac) {
        desc.gx_atoms = {{target.param1, 1.0}};
        return desc;
    }
    if (is_absolutely_continuous(target)) {
        desc.gx_atoms = {{0.0, 1.0}};  // trivial factorization, gamma_X = 1
        return desc;
    }
    if (target.family == Family::mixture && target_atoms.size() == 1) {
        desc.gx_atoms = {target_atoms.front()};
        return desc;
    }
    return std::nullopt;  // several atoms: gamma_X would have zeros of its own
}

double w_xi_distance(const FactorizationDescriptor& desc, double xi)
{
    if (desc.rho <= 0 || desc.gx_atoms.empty())
        return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [x, mass] : desc.gx_atoms) {
        (void)mass;
        const double w = (x - xi) * desc.rho;
        const double r = std::abs(std::remainder(w, 2 * kPi));
        best = std::min(best, r);
    }
    return best;
}

}  // namespace deconv
