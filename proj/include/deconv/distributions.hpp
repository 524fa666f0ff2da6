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

#ifndef DECONV_DISTRIBUTIONS_HPP
#define DECONV_DISTRIBUTIONS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "deconv/charfn.hpp"
#include "deconv/types.hpp"

namespace deconv {

enum class Family {
    dirac,            // point mass at a
    gaussian,         // N(mu, sigma^2)
    laplace,          // location mu, scale b
    uniform,          // on [a, b]
    triangular_diff,  // U - U', U uniform on [-a, a]; c.f. (sin(at)/(at))^2
    polya_triangle,   // c.f. (1 - |t|/T)_+
    mixture,
};

/// Analytic description of a one-dimensional distribution.
///
/// Parameter meaning by family:
///   dirac:           param1 = a
///   gaussian:        param1 = mu, param2 = sigma (> 0)
///   laplace:         param1 = mu, param2 = b (> 0)
///   uniform:         param1 = a,  param2 = b (a < b)
///   triangular_diff: param1 = a (> 0), the half-width of each uniform
///   polya_triangle:  param1 = T (> 0)
///   mixture:         positive weights summing to 1, one per component
struct DistributionSpec {
    Family family = Family::dirac;
    double param1 = 0.0;
    double param2 = 0.0;
    std::vector<double> weights;
    std::vector<DistributionSpec> components;

    static DistributionSpec dirac(double a);
    static DistributionSpec gaussian(double mu, double sigma);
    static DistributionSpec laplace(double mu, double b);
    static DistributionSpec uniform(double a, double b);
    static DistributionSpec triangular_diff(double a);
    static DistributionSpec polya_triangle(double T);
    static DistributionSpec mixture(std::vector<double> weights,
                                    std::vector<DistributionSpec> components);

    void validate() const;  // throws std::invalid_argument
};

/// Distribution function F(xi) = P(X <= xi), right-continuous at atoms.
double cdf(const DistributionSpec& spec, double xi);

/// Left limit F(xi-).
double cdf_left(const DistributionSpec& spec, double xi);

/// (F(xi) + F(xi-)) / 2, the value Fourier inversion recovers at atoms.
double cdf_midpoint(const DistributionSpec& spec, double xi);

/// Lebesgue density, or nullopt for families without one.
std::optional<double> pdf(const DistributionSpec& spec, double xi);

/// (f(xi+) + f(xi-)) / 2; differs from pdf only at density jumps (uniform
/// endpoints).  Throws std::invalid_argument for families without a density.
double pdf_midpoint(const DistributionSpec& spec, double xi);

/// Characteristic function with metadata filled in from closed forms.
CharFn cf(const DistributionSpec& spec);

/// k-th moment about zero, or nullopt when it does not exist.
std::optional<double> moment(const DistributionSpec& spec, int k);

/// n i.i.d. draws; deterministic for a given seed (counter-based generator,
/// no hidden state).
Sample sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// Atoms as (location, mass) pairs; empty for continuous families.
std::vector<std::pair<double, double>> atoms(const DistributionSpec& spec);

bool is_absolutely_continuous(const DistributionSpec& spec);

/// True when the density exists and is continuous on all of R.
bool has_continuous_density(const DistributionSpec& spec);

/// Interval [lo, hi] outside which at most `tail_mass` probability lies
/// (capped at +-1e6 for the heavy-tailed Polya family).
std::pair<double, double> support_hint(const DistributionSpec& spec,
                                       double tail_mass = 1e-12);

/// Integral of a bounded g against dF: atom sums plus adaptive quadrature of
/// g * density over the support hint.
double expect(const DistributionSpec& spec, const std::function<double(double)>& g,
              double abs_tol = 1e-10);

}  // namespace deconv

#endif  // DECONV_DISTRIBUTIONS_HPP
