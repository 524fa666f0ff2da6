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

#include "deconv/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "deconv/quadrature.hpp"
#include "deconv/special.hpp"

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x)
{
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// ---------------------------------------------------------------------------
// counter-based uniform generator (splitmix64 finalizer), platform-stable
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// uniform in (0,1), indexed by (seed, counter); strictly inside the interval
double uniform01(std::uint64_t seed, std::uint64_t counter)
{
    const std::uint64_t x = splitmix64(seed ^ splitmix64(counter));
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

// Inverse standard normal cdf: Acklam's rational approximation refined by one
// Halley step against erfc, ~1e-15 absolute.
double normal_quantile(double p)
{
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        const double q = std::sqrt(-2 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2 * kPi) * std::exp(x * x / 2);
    return x - u / (1 + x * u / 2);
}

double polya_cdf(double T, double x)
{
    const double u = T * x;
    if (std::abs(u) < 1e-4) return 0.5 + u / (2 * kPi) - u * u * u / (72 * kPi);
    const double s = std::sin(u / 2);
    return 0.5 + si(u) / kPi - 2.0 * s * s / (kPi * u);
}

// Inverse of the Polya-triangle cdf by bisection; monotone, deterministic.
double polya_quantile(double T, double p)
{
    double lo = -1.0, hi = 1.0;
    while (polya_cdf(T, lo) > p) lo *= 2.0;
    while (polya_cdf(T, hi) < p) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (polya_cdf(T, mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double binomial_coeff(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

// draw one value, consuming counters [4*index, 4*index+3]
double draw_one(const DistributionSpec& spec, std::uint64_t seed, std::uint64_t index);

double draw_from(const DistributionSpec& spec, std::uint64_t seed, std::uint64_t base,
                 int slot)
{
    auto u = [&](int j) { return uniform01(seed, base + static_cast<std::uint64_t>(j)); };
    switch (spec.family) {
        case Family::dirac:
            return spec.param1;
        case Family::gaussian:
            return spec.param1 + spec.param2 * normal_quantile(u(slot));
        case Family::laplace: {
            const double v = u(slot) - 0.5;
            return spec.param1 - spec.param2 * (v < 0 ? -1.0 : 1.0) * std::log1p(-2 * std::abs(v));
        }
        case Family::uniform:
            return spec.param1 + (spec.param2 - spec.param1) * u(slot);
        case Family::triangular_diff: {
            const double a = spec.param1;
            return a * (2 * u(slot) - 1) - a * (2 * u(slot + 1) - 1);
        }
        case Family::polya_triangle:
            return polya_quantile(spec.param1, u(slot));
        case Family::mixture: {
            double pick = u(slot);
            std::size_t j = 0;
            for (; j + 1 < spec.weights.size(); ++j) {
                if (pick < spec.weights[j]) break;
                pick -= spec.weights[j];
            }
            return draw_from(spec.components[j], seed, base, slot + 1);
        }
    }
    throw std::logic_error("draw_from: unknown family");
}

double draw_one(const DistributionSpec& spec, std::uint64_t seed, std::uint64_t index)
{
    return draw_from(spec, seed, 4 * index, 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// construction / validation
// ---------------------------------------------------------------------------

DistributionSpec DistributionSpec::dirac(double a)
{
    DistributionSpec s;
    s.family = Family::dirac;
    s.param1 = a;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::gaussian(double mu, double sigma)
{
    DistributionSpec s;
    s.family = Family::gaussian;
    s.param1 = mu;
    s.param2 = sigma;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::laplace(double mu, double b)
{
    DistributionSpec s;
    s.family = Family::laplace;
    s.param1 = mu;
    s.param2 = b;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::uniform(double a, double b)
{
    DistributionSpec s;
    s.family = Family::uniform;
    s.param1 = a;
    s.param2 = b;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::triangular_diff(double a)
{
    DistributionSpec s;
    s.family = Family::triangular_diff;
    s.param1 = a;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::polya_triangle(double T)
{
    DistributionSpec s;
    s.family = Family::polya_triangle;
    s.param1 = T;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::mixture(std::vector<double> weights,
                                           std::vector<DistributionSpec> components)
{
    DistributionSpec s;
    s.family = Family::mixture;
    s.weights = std::move(weights);
    s.components = std::move(components);
    s.validate();
    return s;
}

void DistributionSpec::validate() const
{
    auto bad = [](const std::string& msg) { throw std::invalid_argument("DistributionSpec: " + msg); };
    switch (family) {
        case Family::dirac:
            if (!std::isfinite(param1)) bad("dirac location must be finite");
            break;
        case Family::gaussian:
            if (!(param2 > 0)) bad("gaussian needs sigma > 0");
            break;
        case Family::laplace:
            if (!(param2 > 0)) bad("laplace needs b > 0");
            break;
        case Family::uniform:
            if (!(param1 < param2)) bad("uniform needs a < b");
            break;
        case Family::triangular_diff:
            if (!(param1 > 0)) bad("triangular_diff needs a > 0");
            break;
        case Family::polya_triangle:
            if (!(param1 > 0)) bad("polya_triangle needs T > 0");
            break;
        case Family::mixture: {
            if (weights.empty() || weights.size() != components.size())
                bad("mixture needs one positive weight per component");
            double total = 0.0;
            for (double w : weights) {
                if (!(w > 0)) bad("mixture weights must be positive");
                total += w;
            }
            if (std::abs(total - 1.0) > 1e-12) bad("mixture weights must sum to 1");
            for (const auto& c : components) c.validate();
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// cdf / pdf
// ---------------------------------------------------------------------------

double cdf(const DistributionSpec& spec, double xi)
{
    switch (spec.family) {
        case Family::dirac:
            return xi >= spec.param1 ? 1.0 : 0.0;
        case Family::gaussian:
            return 0.5 * std::erfc(-(xi - spec.param1) / (spec.param2 * std::numbers::sqrt2));
        case Family::laplace: {
            const double z = (xi - spec.param1) / spec.param2;
            return z < 0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
        }
        case Family::uniform: {
            const double u = (xi - spec.param1) / (spec.param2 - spec.param1);
            return std::clamp(u, 0.0, 1.0);
        }
        case Family::triangular_diff: {
            const double c = 2.0 * spec.param1;  // support is [-c, c]
            if (xi <= -c) return 0.0;
            if (xi >= c) return 1.0;
            if (xi <= 0) {
                const double d = xi + c;
                return d * d / (2 * c * c);
            }
            const double d = c - xi;
            return 1.0 - d * d / (2 * c * c);
        }
        case Family::polya_triangle:
            return std::clamp(polya_cdf(spec.param1, xi), 0.0, 1.0);
        case Family::mixture: {
            double v = 0.0;
            for (std::size_t j = 0; j < spec.weights.size(); ++j)
                v += spec.weights[j] * cdf(spec.components[j], xi);
            return v;
        }
    }
    throw std::logic_error("cdf: unknown family");
}

double cdf_left(const DistributionSpec& spec, double xi)
{
    double jump = 0.0;
    for (const auto& [x, mass] : atoms(spec))
        if (x == xi) jump += mass;
    return cdf(spec, xi) - jump;
}

double cdf_midpoint(const DistributionSpec& spec, double xi)
{
    return 0.5 * (cdf(spec, xi) + cdf_left(spec, xi));
}

std::optional<double> pdf(const DistributionSpec& spec, double xi)
{
    switch (spec.family) {
        case Family::dirac:
            return std::nullopt;
        case Family::gaussian: {
            const double z = (xi - spec.param1) / spec.param2;
            return std::exp(-0.5 * z * z) / (spec.param2 * std::sqrt(2 * kPi));
        }
        case Family::laplace:
            return std::exp(-std::abs(xi - spec.param1) / spec.param2) / (2 * spec.param2);
        case Family::uniform:
            return (xi >= spec.param1 && xi <= spec.param2)
                       ? 1.0 / (spec.param2 - spec.param1)
                       : 0.0;
        case Family::triangular_diff: {
            const double c = 2.0 * spec.param1;
            const double v = (c - std::abs(xi)) / (c * c);
            return std::max(v, 0.0);
        }
        case Family::polya_triangle: {
            const double T = spec.param1;
            const double s = sinc(T * xi / 2);
            return T / (2 * kPi) * s * s;
        }
        case Family::mixture: {
            double v = 0.0;
            for (std::size_t j = 0; j < spec.weights.size(); ++j) {
                const auto p = pdf(spec.components[j], xi);
                if (!p) return std::nullopt;
                v += spec.weights[j] * *p;
            }
            return v;
        }
    }
    throw std::logic_error("pdf: unknown family");
}

double pdf_midpoint(const DistributionSpec& spec, double xi)
{
    if (spec.family == Family::uniform) {
        const double h = 1.0 / (spec.param2 - spec.param1);
        if (xi == spec.param1 || xi == spec.param2) return 0.5 * h;
        return (xi > spec.param1 && xi < spec.param2) ? h : 0.0;
    }
    if (spec.family == Family::mixture) {
        double v = 0.0;
        for (std::size_t j = 0; j < spec.weights.size(); ++j)
            v += spec.weights[j] * pdf_midpoint(spec.components[j], xi);
        return v;
    }
    const auto p = pdf(spec, xi);
    if (!p) throw std::invalid_argument("pdf_midpoint: family has no density");
    return *p;
}

// ---------------------------------------------------------------------------
// characteristic functions
// ---------------------------------------------------------------------------

CharFn cf(const DistributionSpec& spec)
{
    CharFn out;
    out.source = std::make_shared<DistributionSpec>(spec);
    switch (spec.family) {
        case Family::dirac: {
            const double a = spec.param1;
            out.eval = [a](double t) {
                return std::complex<double>(std::cos(a * t), std::sin(a * t));
            };
            out.is_real_symmetric = (a == 0.0);
            out.is_unit_interval = (a == 0.0);
            out.zero_set = ZeroSet::empty_set();
            out.decay = DecayHint::none;
            break;
        }
        case Family::gaussian: {
            const double mu = spec.param1, sigma = spec.param2;
            out.eval = [mu, sigma](double t) {
                const double mag = std::exp(-0.5 * sigma * sigma * t * t);
                return std::complex<double>(mag * std::cos(mu * t), mag * std::sin(mu * t));
            };
            out.is_real_symmetric = (mu == 0.0);
            out.is_unit_interval = (mu == 0.0);
            out.zero_set = ZeroSet::empty_set();
            out.decay = DecayHint::exponential;
            break;
        }
        case Family::laplace: {
            const double mu = spec.param1, b = spec.param2;
            out.eval = [mu, b](double t) {
                const double mag = 1.0 / (1.0 + b * b * t * t);
                return std::complex<double>(mag * std::cos(mu * t), mag * std::sin(mu * t));
            };
            out.is_real_symmetric = (mu == 0.0);
            out.is_unit_interval = (mu == 0.0);
            out.zero_set = ZeroSet::empty_set();
            out.decay = DecayHint::algebraic;
            out.decay_exponent = 2.0;
            break;
        }
        case Family::uniform: {
            const double mid = 0.5 * (spec.param1 + spec.param2);
            const double c = 0.5 * (spec.param2 - spec.param1);
            out.eval = [mid, c](double t) {
                const double mag = sinc(c * t);
                return std::complex<double>(mag * std::cos(mid * t), mag * std::sin(mid * t));
            };
            out.is_real_symmetric = (mid == 0.0);
            out.is_unit_interval = false;  // sinc takes negative values
            out.zero_set = ZeroSet::periodic(kPi / c);
            out.decay = DecayHint::algebraic;
            out.decay_exponent = 1.0;
            break;
        }
        case Family::triangular_diff: {
            const double a = spec.param1;
            out.eval = [a](double t) {
                const double s = sinc(a * t);
                return std::complex<double>(s * s, 0.0);
            };
            out.is_real_symmetric = true;
            out.is_unit_interval = true;
            out.zero_set = ZeroSet::periodic(kPi / a);
            out.decay = DecayHint::algebraic;
            out.decay_exponent = 2.0;
            break;
        }
        case Family::polya_triangle: {
            const double T = spec.param1;
            out.eval = [T](double t) {
                return std::complex<double>(std::max(0.0, 1.0 - std::abs(t) / T), 0.0);
            };
            out.is_real_symmetric = true;
            out.is_unit_interval = true;
            out.zero_set = ZeroSet::beyond_of(T);
            out.support_bound = T;
            out.decay = DecayHint::compact;
            break;
        }
        case Family::mixture: {
            std::vector<std::function<std::complex<double>(double)>> evals;
            std::vector<double> w = spec.weights;
            for (const auto& c : spec.components) evals.push_back(cf(c).eval);
            out.eval = [evals, w](double t) {
                std::complex<double> acc(0.0, 0.0);
                for (std::size_t j = 0; j < evals.size(); ++j) acc += w[j] * evals[j](t);
                return acc;
            };
            bool sym = true, unit = true, compact = true;
            double bound = 0.0;
            DecayHint weakest = DecayHint::compact;
            for (const auto& c : spec.components) {
                const CharFn comp = cf(c);
                sym = sym && comp.is_real_symmetric;
                unit = unit && comp.is_unit_interval;
                compact = compact && comp.support_bound.has_value();
                if (comp.support_bound) bound = std::max(bound, *comp.support_bound);
                weakest = static_cast<DecayHint>(
                    std::min(static_cast<int>(weakest), static_cast<int>(comp.decay)));
            }
            out.is_real_symmetric = sym;
            out.is_unit_interval = unit;
            out.zero_set = ZeroSet::unknown_set();  // zeros of mixtures are transcendental
            if (compact) out.support_bound = bound;
            out.decay = weakest;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

std::optional<double> moment(const DistributionSpec& spec, int k)
{
    if (k < 0) throw std::invalid_argument("moment: order must be nonnegative");
    if (k == 0) return 1.0;
    switch (spec.family) {
        case Family::dirac:
            return std::pow(spec.param1, k);
        case Family::gaussian: {
            // M_k = mu M_{k-1} + (k-1) sigma^2 M_{k-2}
            const double mu = spec.param1, s2 = spec.param2 * spec.param2;
            double prev = 1.0, cur = mu;
            for (int j = 2; j <= k; ++j) {
                const double next = mu * cur + (j - 1) * s2 * prev;
                prev = cur;
                cur = next;
            }
            return cur;
        }
        case Family::laplace: {
            const double mu = spec.param1, b = spec.param2;
            double total = 0.0;
            double fact = 1.0;  // i!
            for (int i = 0; i <= k; ++i) {
                if (i > 0) fact *= i;
                if (i % 2 == 0)
                    total += binomial_coeff(k, i) * std::pow(mu, k - i) * fact * std::pow(b, i);
            }
            return total;
        }
        case Family::uniform: {
            const double a = spec.param1, b = spec.param2;
            return (std::pow(b, k + 1) - std::pow(a, k + 1)) / ((k + 1) * (b - a));
        }
        case Family::triangular_diff: {
            if (k % 2 == 1) return 0.0;
            const double c = 2.0 * spec.param1;
            return 2.0 * std::pow(c, k) / (static_cast<double>(k + 1) * (k + 2));
        }
        case Family::polya_triangle:
            return std::nullopt;  // E|X|^k = infinity for k >= 1
        case Family::mixture: {
            double total = 0.0;
            for (std::size_t j = 0; j < spec.weights.size(); ++j) {
                const auto m = moment(spec.components[j], k);
                if (!m) return std::nullopt;
                total += spec.weights[j] * *m;
            }
            return total;
        }
    }
    throw std::logic_error("moment: unknown family");
}

// ---------------------------------------------------------------------------
// sampling and structure
// ---------------------------------------------------------------------------

Sample sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed)
{
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    Sample out;
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.values.push_back(draw_one(spec, seed, static_cast<std::uint64_t>(i)));
    out.seed_info = "seed=" + std::to_string(seed) + " n=" + std::to_string(n);
    return out;
}

std::vector<std::pair<double, double>> atoms(const DistributionSpec& spec)
{
    switch (spec.family) {
        case Family::dirac:
            return {{spec.param1, 1.0}};
        case Family::mixture: {
            std::vector<std::pair<double, double>> out;
            for (std::size_t j = 0; j < spec.weights.size(); ++j)
                for (const auto& [x, mass] : atoms(spec.components[j]))
                    out.emplace_back(x, spec.weights[j] * mass);
            std::sort(out.begin(), out.end());
            return out;
        }
        default:
            return {};
    }
}

bool is_absolutely_continuous(const DistributionSpec& spec)
{
    switch (spec.family) {
        case Family::dirac:
            return false;
        case Family::mixture:
            for (const auto& c : spec.components)
                if (!is_absolutely_continuous(c)) return false;
            return true;
        default:
            return true;
    }
}

bool has_continuous_density(const DistributionSpec& spec)
{
    switch (spec.family) {
        case Family::dirac:
            return false;  // no density
        case Family::uniform:
            return false;  // density jumps at the endpoints
        case Family::mixture:
            for (const auto& c : spec.components)
                if (!has_continuous_density(c)) return false;
            return true;
        default:
            return true;
    }
}

std::pair<double, double> support_hint(const DistributionSpec& spec, double tail_mass)
{
    switch (spec.family) {
        case Family::dirac:
            return {spec.param1, spec.param1};
        case Family::gaussian: {
            const double r = spec.param2 * std::sqrt(-2 * std::log(std::max(tail_mass, 1e-300)));
            return {spec.param1 - r - 1, spec.param1 + r + 1};
        }
        case Family::laplace: {
            const double r = -spec.param2 * std::log(std::max(tail_mass, 1e-300));
            return {spec.param1 - r - 1, spec.param1 + r + 1};
        }
        case Family::uniform:
            return {spec.param1, spec.param2};
        case Family::triangular_diff:
            return {-2 * spec.param1, 2 * spec.param1};
        case Family::polya_triangle: {
            // tails ~ 2/(pi T |x|); cap the range, heavy tails
            const double r = std::min(1e6, 2.0 / (kPi * spec.param1 * std::max(tail_mass, 1e-9)));
            return {-r, r};
        }
        case Family::mixture: {
            double lo = 0, hi = 0;
            bool first = true;
            for (const auto& c : spec.components) {
                const auto [l, h] = support_hint(c, tail_mass);
                lo = first ? l : std::min(lo, l);
                hi = first ? h : std::max(hi, h);
                first = false;
            }
            return {lo, hi};
        }
    }
    throw std::logic_error("support_hint: unknown family");
}

double expect(const DistributionSpec& spec, const std::function<double(double)>& g,
              double abs_tol)
{
    if (spec.family == Family::mixture) {
        double total = 0.0;
        for (std::size_t j = 0; j < spec.weights.size(); ++j)
            total += spec.weights[j] * expect(spec.components[j], g, abs_tol);
        return total;
    }
    double total = 0.0;
    for (const auto& [x, mass] : atoms(spec)) total += mass * g(x);
    if (!is_absolutely_continuous(spec)) return total;
    const auto [lo, hi] = support_hint(spec, std::min(1e-12, abs_tol));
    const auto integrand = [&](double x) { return g(x) * pdf(spec, x).value_or(0.0); };
    const QuadResult r = integrate_adaptive(integrand, lo, hi, abs_tol, 1e-10, 20000);
    return total + r.value;
}

}  // namespace deconv
