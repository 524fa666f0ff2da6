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

#include "deconv/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deconv {

std::vector<double> ZeroSet::points_in(double lo, double hi, std::size_t cap) const
{
    std::vector<double> out;
    switch (kind) {
        case Kind::empty:
        case Kind::unknown:
            break;
        case Kind::finite_points:
            for (double p : points)
                if (p > lo && p < hi) out.push_back(p);
            break;
        case Kind::periodic_points: {
            if (period <= 0) break;
            double k = std::max(1.0, std::ceil((lo - offset) / period));
            for (; out.size() < cap; k += 1.0) {
                const double p = offset + k * period;
                if (p >= hi) break;
                if (p > lo) out.push_back(p);
            }
            break;
        }
        case Kind::intervals:
            for (const auto& [t1, t2] : intervals) {
                if (t1 > lo && t1 < hi) out.push_back(t1);
                if (t2 > lo && t2 < hi && std::isfinite(t2)) out.push_back(t2);
            }
            break;
        case Kind::beyond:
            if (beyond > lo && beyond < hi) out.push_back(beyond);
            break;
    }
    std::sort(out.begin(), out.end());
    if (out.size() > cap) out.resize(cap);
    return out;
}

bool ZeroSet::measure_zero_below(double hi) const
{
    switch (kind) {
        case Kind::empty:
        case Kind::finite_points:
        case Kind::periodic_points:
            return true;
        case Kind::intervals:
            for (const auto& [t1, t2] : intervals)
                if (t1 < hi && t2 > t1) return false;
            return true;
        case Kind::beyond:
            return hi <= beyond;
        case Kind::unknown:
            return false;
    }
    return false;
}

std::span<const double> flag_check_sample()
{
    static const std::vector<double> sample = [] {
        std::vector<double> s;
        s.reserve(4096);
        // log-spaced from 1e-4 to 1e5, 4096 points
        const double lo = -4.0, hi = 5.0;
        for (int i = 0; i < 4096; ++i) {
            const double u = lo + (hi - lo) * (i + 0.5) / 4096.0;
            s.push_back(std::pow(10.0, u));
        }
        return s;
    }();
    return sample;
}

double Symmetrization::eps_bar(double t) const
{
    const double v = phi_eps_bar.eval(t).real();
    return std::clamp(v, 0.0, 1.0);
}

namespace {

// Verifies real symmetry and unit-interval range of a candidate phi_eps_bar
// on the fixed t-sample; throws SymmetrizationError on violation.
void check_eps_bar(const CharFn& phi, const char* what)
{
    constexpr double kTol = 1e-9;
    for (double t : flag_check_sample()) {
        const std::complex<double> zp = phi.eval(t);
        if (std::abs(zp.imag()) > kTol)
            throw SymmetrizationError(std::string(what) +
                                      ": residual not real symmetric at t=" + std::to_string(t));
        if (zp.real() < -kTol || zp.real() > 1.0 + kTol)
            throw SymmetrizationError(std::string(what) +
                                      ": residual outside [0,1] at t=" + std::to_string(t));
        const std::complex<double> zm = phi.eval(-t);
        if (std::abs(zm - zp) > kTol * (1.0 + std::abs(zp)))
            throw SymmetrizationError(std::string(what) + ": residual not even at t=" +
                                      std::to_string(t));
    }
}

DecayHint stronger(DecayHint a, DecayHint b)
{
    return static_cast<DecayHint>(std::max(static_cast<int>(a), static_cast<int>(b)));
}

}  // namespace

CharFn cf_product(const CharFn& a, const CharFn& b)
{
    CharFn out;
    auto ea = a.eval, eb = b.eval;
    out.eval = [ea, eb](double t) { return ea(t) * eb(t); };
    out.is_real_symmetric = a.is_real_symmetric && b.is_real_symmetric;
    out.is_unit_interval = a.is_unit_interval && b.is_unit_interval;
    out.decay = stronger(a.decay, b.decay);
    if (a.decay == DecayHint::algebraic && b.decay == DecayHint::algebraic) {
        out.decay_exponent = a.decay_exponent + b.decay_exponent;
    } else {
        out.decay_exponent = std::max(a.decay_exponent, b.decay_exponent);
    }
    if (a.support_bound && b.support_bound)
        out.support_bound = std::min(*a.support_bound, *b.support_bound);
    else if (a.support_bound)
        out.support_bound = a.support_bound;
    else if (b.support_bound)
        out.support_bound = b.support_bound;
    // zero set of a product: keep whichever factor's description is usable
    if (a.zero_set.kind == ZeroSet::Kind::empty)
        out.zero_set = b.zero_set;
    else if (b.zero_set.kind == ZeroSet::Kind::empty)
        out.zero_set = a.zero_set;
    else
        out.zero_set = ZeroSet::unknown_set();
    return out;
}

CharFn cf_conjugate(const CharFn& phi)
{
    CharFn out = phi;
    auto e = phi.eval;
    out.eval = [e](double t) { return std::conj(e(t)); };
    out.source.reset();
    return out;
}

Symmetrization symmetrize(const CharFn& phi_eps, const SymmetrizationRequest& request)
{
    Symmetrization sym;
    sym.mode = request.kind;

    switch (request.kind) {
        case SymmetrizationRequest::Kind::conjugate: {
            sym.phi_eta = phi_eps;
            CharFn bar;
            auto e = phi_eps.eval;
            bar.eval = [e](double t) {
                return std::complex<double>(std::norm(e(t)), 0.0);
            };
            bar.is_real_symmetric = true;
            bar.is_unit_interval = true;
            bar.zero_set = phi_eps.zero_set;  // N_eps_bar = N_eps
            bar.support_bound = phi_eps.support_bound;
            bar.decay = phi_eps.decay;
            bar.decay_exponent =
                phi_eps.decay == DecayHint::algebraic ? 2.0 * phi_eps.decay_exponent : 0.0;
            sym.phi_eps_bar = std::move(bar);
            break;
        }
        case SymmetrizationRequest::Kind::shift: {
            sym.shift_tau = request.tau;
            const double tau = request.tau;
            CharFn eta;
            eta.eval = [tau](double t) {
                return std::complex<double>(std::cos(t * tau), std::sin(t * tau));
            };
            eta.is_real_symmetric = (tau == 0.0);
            eta.is_unit_interval = (tau == 0.0);
            eta.zero_set = ZeroSet::empty_set();
            sym.phi_eta = std::move(eta);

            CharFn bar;
            auto e = phi_eps.eval;
            bar.eval = [e, tau](double t) {
                const std::complex<double> rot(std::cos(t * tau), -std::sin(t * tau));
                return e(t) * rot;
            };
            check_eps_bar(bar, "symmetrize(shift)");
            bar.is_real_symmetric = true;
            bar.is_unit_interval = true;
            bar.zero_set = phi_eps.zero_set;
            bar.support_bound = phi_eps.support_bound;
            bar.decay = phi_eps.decay;
            bar.decay_exponent = phi_eps.decay_exponent;
            sym.phi_eps_bar = std::move(bar);
            break;
        }
        case SymmetrizationRequest::Kind::custom: {
            if (!request.eta)
                throw std::invalid_argument("symmetrize: custom mode needs phi_eta");
            sym.phi_eta = *request.eta;
            CharFn bar;
            auto e = phi_eps.eval;
            auto h = sym.phi_eta.eval;
            bar.eval = [e, h](double t) { return e(t) * std::conj(h(t)); };
            check_eps_bar(bar, "symmetrize(custom)");
            bar.is_real_symmetric = true;
            bar.is_unit_interval = true;
            if (sym.phi_eta.zero_set.kind == ZeroSet::Kind::empty)
                bar.zero_set = phi_eps.zero_set;
            else
                bar.zero_set = cf_product(phi_eps, sym.phi_eta).zero_set;
            const CharFn meta = cf_product(phi_eps, sym.phi_eta);
            bar.support_bound = meta.support_bound;
            bar.decay = meta.decay;
            bar.decay_exponent = meta.decay_exponent;
            sym.phi_eps_bar = std::move(bar);
            break;
        }
    }
    return sym;
}

CharFn compose_y_dotdot(const CharFn& phi_y, Symmetrization& sym)
{
    CharFn out = cf_product(phi_y, cf_conjugate(sym.phi_eta));
    // the symmetrized error supplies the vanishing factor, so its metadata
    // also bounds the product
    out.decay = stronger(out.decay, sym.phi_eps_bar.decay);
    if (sym.phi_eps_bar.support_bound) {
        out.support_bound = out.support_bound
                                ? std::min(*out.support_bound, *sym.phi_eps_bar.support_bound)
                                : sym.phi_eps_bar.support_bound;
    }
    sym.phi_y_dotdot = out;
    return out;
}

std::complex<double> ecf(std::span<const double> values, double t)
{
    if (values.empty()) throw std::invalid_argument("ecf: empty sample");
    std::complex<double> acc(0.0, 0.0);
    for (double y : values) acc += std::complex<double>(std::cos(t * y), std::sin(t * y));
    return acc / static_cast<double>(values.size());
}

std::complex<double> ecf(const Sample& sample, double t)
{
    return ecf(std::span<const double>(sample.values), t);
}

}  // namespace deconv
