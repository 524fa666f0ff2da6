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

#include "deconv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "deconv/summation.hpp"

namespace deconv {

namespace {

constexpr int kMaxOracleM = 24;

double binomial_coeff(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

bool on_lattice(double x, double origin, double step)
{
    const double idx = (x - origin) / step;
    return std::abs(idx - std::round(idx)) < 1e-9;
}

// dirac-at-zero lattice compatible with `like`
LatticeMeasure dirac_zero_like(const LatticeMeasure& like)
{
    LatticeMeasure d;
    d.origin = 0.0;
    d.step = like.step;
    d.masses = {1.0};
    return d;
}

void check_multiple_of_step(const LatticeMeasure& lat, const char* what)
{
    if (!on_lattice(0.0, lat.origin, lat.step))
        throw std::invalid_argument(std::string(what) +
                                    ": lattice origin must be an integer multiple of step");
}

}  // namespace

double LatticeMeasure::total_mass() const
{
    NeumaierSum s;
    for (double m : masses) s.add(m);
    return s.value();
}

double cumulative(const LatticeMeasure& lat, double xi, AtomRule rule)
{
    const double idx = (xi - lat.origin) / lat.step;
    NeumaierSum s;

    // cell k covers (x_k - h/2, x_k + h/2]; a query on a cell edge includes
    // the cell in full, with no nearest-node ambiguity
    const double edge = std::floor(idx) + 0.5;
    if (std::abs(idx - edge) < 1e-9) {
        const double stop_d =
            std::min(std::floor(idx) + 1.0, static_cast<double>(lat.masses.size()));
        for (double i = 0; i < stop_d; ++i) s.add(lat.masses[static_cast<std::size_t>(i)]);
        return s.value();
    }

    const double nearest = std::round(idx);
    if (nearest < 0) return 0.0;
    const std::size_t stop = static_cast<std::size_t>(
        std::min(nearest, static_cast<double>(lat.masses.size())));
    for (std::size_t i = 0; i < stop; ++i) s.add(lat.masses[i]);
    if (stop < lat.masses.size() && nearest >= 0 &&
        static_cast<std::size_t>(nearest) < lat.masses.size()) {
        const double w = (rule == AtomRule::midpoint) ? 0.5 : 1.0;
        s.add(w * lat.masses[static_cast<std::size_t>(nearest)]);
    }
    return s.value();
}

LatticeMeasure discretize(const DistributionSpec& spec, double span, double step)
{
    if (!(step > 0)) throw std::invalid_argument("discretize: step must be positive");
    if (span < 0) throw std::invalid_argument("discretize: span must be nonnegative");
    spec.validate();

    const auto atom_list = atoms(spec);
    double center = moment(spec, 1).value_or(0.0);
    if (!atom_list.empty()) center = atom_list.front().first;

    // lattice nodes at integer multiples of step around the center
    double origin = std::round((center - span) / step) * step;
    std::size_t n = static_cast<std::size_t>(std::floor(2 * span / step)) + 1;

    // a uniform whose width is a whole number of cells gets its endpoints on
    // cell edges, so every interior cell carries the same mass
    if (spec.family == Family::uniform) {
        const double cells = (spec.param2 - spec.param1) / step;
        if (std::abs(cells - std::round(cells)) < 1e-9) {
            const double phase = (spec.param1 - origin) / step;
            origin += (phase - std::floor(phase) - 0.5) * step;
        }
    }

    // shift so atoms land exactly on nodes, then verify all of them fit
    if (!atom_list.empty()) {
        const double a0 = atom_list.front().first;
        origin += a0 - (origin + std::round((a0 - origin) / step) * step);
        for (const auto& [x, mass] : atom_list) {
            (void)mass;
            if (!on_lattice(x, origin, step))
                throw std::invalid_argument("discretize: atom at " + std::to_string(x) +
                                            " not representable on the lattice");
        }
    }

    LatticeMeasure lat;
    lat.origin = origin;
    lat.step = step;
    lat.masses.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lat.x_at(i);
        lat.masses[i] = cdf(spec, x + step / 2) - cdf(spec, x - step / 2);
    }
    return lat;
}

// TODO: optional FFT fast path for very fine lattices; direct stays the
// oracle of record.
LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b)
{
    if (std::abs(a.step - b.step) > 1e-12 * std::max(a.step, b.step))
        throw std::invalid_argument("convolve: lattice steps must match");
    LatticeMeasure c;
    c.origin = a.origin + b.origin;
    c.step = a.step;
    c.masses.assign(a.masses.size() + b.masses.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.masses.size(); ++i) {
        const double ai = a.masses[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < b.masses.size(); ++j) c.masses[i + j] += ai * b.masses[j];
    }
    return c;
}

LatticeMeasure mirrored(const LatticeMeasure& lat)
{
    LatticeMeasure out;
    out.step = lat.step;
    out.origin = -(lat.origin + static_cast<double>(lat.masses.size() - 1) * lat.step);
    out.masses.assign(lat.masses.rbegin(), lat.masses.rend());
    return out;
}

LatticeMeasure symmetrized_error_lattice(const DistributionSpec& error,
                                         const SymmetrizationRequest& request,
                                         double span, double step)
{
    const LatticeMeasure eps = discretize(error, span, step);
    switch (request.kind) {
        case SymmetrizationRequest::Kind::conjugate:
            return convolve(eps, mirrored(eps));
        case SymmetrizationRequest::Kind::shift: {
            LatticeMeasure out = eps;
            const double shift = std::round(request.tau / step) * step;
            if (std::abs(shift - request.tau) > 1e-9 * std::max(1.0, std::abs(request.tau)))
                throw std::invalid_argument(
                    "symmetrized_error_lattice: shift tau must sit on the lattice");
            out.origin -= shift;
            return out;
        }
        case SymmetrizationRequest::Kind::custom: {
            if (!request.eta || !request.eta->source)
                throw std::invalid_argument(
                    "symmetrized_error_lattice: custom mode needs eta with a known "
                    "distribution");
            const DistributionSpec& eta_spec = *request.eta->source;
            if (eta_spec.family == Family::dirac) {
                LatticeMeasure out = eps;
                const double shift = std::round(eta_spec.param1 / step) * step;
                out.origin -= shift;
                return out;
            }
            return convolve(eps, mirrored(discretize(eta_spec, span, step)));
        }
    }
    throw std::logic_error("symmetrized_error_lattice: unknown request");
}

LatticeMeasure decon_sum(const LatticeMeasure& eps_bar, int m, DeconSumPath path)
{
    if (m < 0) throw std::invalid_argument("decon_sum: m must be nonnegative");
    if (m > kMaxOracleM)
        throw std::out_of_range("decon_sum: m exceeds the oracle cap of 24");
    check_multiple_of_step(eps_bar, "decon_sum");
    if (path == DeconSumPath::auto_select)
        path = (m <= 12) ? DeconSumPath::binomial : DeconSumPath::neumann;

    const double step = eps_bar.step;
    const std::size_t n = eps_bar.masses.size();
    // final support: the widest convolution power, plus the atom at zero
    const std::size_t n_big = m > 0 ? static_cast<std::size_t>(m) * (n - 1) + 1 : 1;
    const double origin_big = m > 0 ? m * eps_bar.origin : 0.0;

    LatticeMeasure out;
    out.origin = std::min(origin_big, 0.0);
    out.step = step;
    const std::size_t zero_idx = static_cast<std::size_t>(std::round(-out.origin / step));
    out.masses.assign(std::max<std::size_t>(n_big, zero_idx + 1), 0.0);

    std::vector<NeumaierSum> cells(out.masses.size());
    auto accumulate = [&](const LatticeMeasure& lat, double coeff) {
        const std::ptrdiff_t off =
            static_cast<std::ptrdiff_t>(std::round((lat.origin - out.origin) / step));
        for (std::size_t i = 0; i < lat.masses.size(); ++i) {
            const std::ptrdiff_t idx = off + static_cast<std::ptrdiff_t>(i);
            if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(cells.size()))
                throw std::logic_error("decon_sum: accumulation outside the target lattice");
            cells[idx].add(coeff * lat.masses[i]);
        }
    };

    if (path == DeconSumPath::binomial) {
        // powers F_eps_bar^{*k}, k = 0..m
        std::vector<LatticeMeasure> powers;
        powers.push_back(dirac_zero_like(eps_bar));
        for (int k = 1; k <= m; ++k) powers.push_back(convolve(powers.back(), eps_bar));
        for (int ell = 0; ell <= m; ++ell)
            for (int k = 0; k <= ell; ++k) {
                const double coeff = (k % 2 == 0 ? 1.0 : -1.0) * binomial_coeff(ell, k);
                accumulate(powers[k], coeff);
            }
    } else {
        // Neumann form: sum of convolution powers of (dirac at 0) - F_eps_bar
        LatticeMeasure delta = eps_bar;
        for (double& v : delta.masses) v = -v;
        const std::ptrdiff_t d0 =
            static_cast<std::ptrdiff_t>(std::round(-delta.origin / step));
        if (d0 < 0 || d0 >= static_cast<std::ptrdiff_t>(delta.masses.size()))
            throw std::invalid_argument("decon_sum: eps_bar lattice must cover zero");
        delta.masses[d0] += 1.0;

        LatticeMeasure cur = dirac_zero_like(eps_bar);
        accumulate(cur, 1.0);  // ell = 0 term
        for (int ell = 1; ell <= m; ++ell) {
            cur = convolve(cur, delta);
            accumulate(cur, 1.0);
        }
    }

    for (std::size_t i = 0; i < cells.size(); ++i) out.masses[i] = cells[i].value();
    return out;
}

SignedGridFn decon_binomial(const LatticeMeasure& y_dotdot, const LatticeMeasure& eps_bar,
                            int m, const std::vector<double>& grid)
{
    const LatticeMeasure s = decon_sum(eps_bar, m);
    const LatticeMeasure d = convolve(y_dotdot, s);
    SignedGridFn out;
    out.grid = grid;
    out.kind = GridKind::cdf_like;
    out.values.reserve(grid.size());
    for (double xi : grid) out.values.push_back(cumulative(d, xi));
    out.validate();
    return out;
}

double signed_moment(const LatticeMeasure& lat, int k)
{
    if (k < 0) throw std::invalid_argument("signed_moment: order must be nonnegative");
    NeumaierSum s;
    for (std::size_t i = 0; i < lat.masses.size(); ++i) {
        const double x = lat.x_at(i);
        s.add(lat.masses[i] * (k == 0 ? 1.0 : std::pow(x, k)));
    }
    return s.value();
}

}  // namespace deconv
