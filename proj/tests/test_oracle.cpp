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

#include <doctest.h>

#include <cmath>

#include "deconv/oracle.hpp"

using namespace deconv;

namespace {

LatticeMeasure gaussian_eps_bar(double sigma_eps, double span = 8.0, double step = 0.01)
{
    return symmetrized_error_lattice(DistributionSpec::gaussian(0.0, sigma_eps),
                                     SymmetrizationRequest::conjugate(), span, step);
}

}  // namespace

TEST_CASE("discretize: point mass, total mass, uniform cells")
{
    const LatticeMeasure d = discretize(DistributionSpec::dirac(0.0), 0.0, 0.01);
    REQUIRE(d.masses.size() == 1);
    CHECK(d.masses[0] == 1.0);
    CHECK(d.origin == 0.0);

    const LatticeMeasure g = discretize(DistributionSpec::gaussian(0, 1), 16.0, 0.01);
    CHECK(std::abs(g.total_mass() - 1.0) < 1e-10);

    const LatticeMeasure u = discretize(DistributionSpec::uniform(0, 1), 1.0, 0.1);
    int full_cells = 0;
    for (double m : u.masses)
        if (std::abs(m - 0.1) < 1e-12) ++full_cells;
    CHECK(full_cells == 10);
    CHECK(std::abs(u.total_mass() - 1.0) < 1e-12);
}

TEST_CASE("discretize: atom placement")
{
    const LatticeMeasure m = discretize(
        DistributionSpec::mixture({0.5, 0.5}, {DistributionSpec::dirac(0.25),
                                               DistributionSpec::gaussian(0.25, 1.0)}),
        10.0, 0.01);
    // atom sits exactly on a node and carries at least its own mass
    const double idx = (0.25 - m.origin) / m.step;
    CHECK(std::abs(idx - std::round(idx)) < 1e-9);
    CHECK(m.masses[static_cast<std::size_t>(std::round(idx))] >= 0.5);

    CHECK_THROWS_AS(discretize(DistributionSpec::mixture(
                                   {0.5, 0.5}, {DistributionSpec::dirac(0.0),
                                                DistributionSpec::dirac(0.1234567)}),
                               2.0, 0.1),
                    std::invalid_argument);
}

TEST_CASE("convolve: neutral element and point masses")
{
    const LatticeMeasure g = discretize(DistributionSpec::gaussian(0, 1), 8.0, 0.01);
    LatticeMeasure delta0;
    delta0.origin = 0.0;
    delta0.step = 0.01;
    delta0.masses = {1.0};
    const LatticeMeasure same = convolve(g, delta0);
    REQUIRE(same.masses.size() == g.masses.size());
    for (std::size_t i = 0; i < g.masses.size(); ++i)
        CHECK(same.masses[i] == doctest::Approx(g.masses[i]).epsilon(1e-15));

    LatticeMeasure dx = delta0, dy = delta0;
    dx.origin = 0.25;
    dy.origin = -1.5;
    const LatticeMeasure dxy = convolve(dx, dy);
    CHECK(dxy.origin == doctest::Approx(-1.25));
    CHECK(dxy.masses == std::vector<double>{1.0});

    LatticeMeasure other = delta0;
    other.step = 0.02;
    CHECK_THROWS_AS(convolve(g, other), std::invalid_argument);
}

TEST_CASE("convolve: uniform times uniform is triangular")
{
    const LatticeMeasure u = discretize(DistributionSpec::uniform(0, 1), 1.0, 0.05);
    const LatticeMeasure uu = convolve(u, u);
    // direct double-sum oracle at three output cells
    for (std::size_t k : {10u, 20u, 30u}) {
        double direct = 0.0;
        for (std::size_t i = 0; i < u.masses.size(); ++i)
            if (k >= i && k - i < u.masses.size()) direct += u.masses[i] * u.masses[k - i];
        CHECK(uu.masses[k] == doctest::Approx(direct).epsilon(1e-14));
    }
    // peak near x = 1
    std::size_t arg = 0;
    for (std::size_t i = 0; i < uu.masses.size(); ++i)
        if (uu.masses[i] > uu.masses[arg]) arg = i;
    CHECK(std::abs(uu.x_at(arg) - 1.0) <= 0.051);
}

TEST_CASE("mirrored and conjugate symmetrization of the error lattice")
{
    const LatticeMeasure eps =
        discretize(DistributionSpec::gaussian(0.4, 0.5), 6.0, 0.01);
    const LatticeMeasure bar = convolve(eps, mirrored(eps));
    // symmetric around zero: cumulative midpoint at 0 is 1/2
    CHECK(std::abs(cumulative(bar, 0.0) - 0.5) < 1e-9);
    CHECK(std::abs(bar.total_mass() - 1.0) < 1e-9);
}

TEST_CASE("decon_sum: structure at m = 0 and the (m+2)/2 law")
{
    const LatticeMeasure eps_bar = gaussian_eps_bar(0.5);
    const LatticeMeasure s0 = decon_sum(eps_bar, 0);
    double nonzero = 0.0;
    for (std::size_t i = 0; i < s0.masses.size(); ++i) nonzero += std::abs(s0.masses[i]);
    CHECK(nonzero == doctest::Approx(1.0));
    CHECK(std::abs(cumulative(s0, 0.0, AtomRule::right_continuous) - 1.0) < 1e-14);

    for (int m : {1, 2, 5, 8}) {
        const LatticeMeasure s = decon_sum(eps_bar, m);
        const double got = cumulative(s, 0.0, AtomRule::right_continuous);
        CHECK(std::abs(got - 0.5 * (m + 2)) < 4.0 * (m + 1) * eps_bar.step);
    }
}

TEST_CASE("decon_sum: binomial and Neumann paths agree per cell")
{
    for (const auto& err :
         {DistributionSpec::gaussian(0.0, 0.5), DistributionSpec::triangular_diff(0.7)}) {
        const LatticeMeasure eps_bar = symmetrized_error_lattice(
            err, SymmetrizationRequest::conjugate(), 6.0, 0.02);
        for (int m : {0, 1, 3, 6, 10}) {
            const LatticeMeasure sb = decon_sum(eps_bar, m, DeconSumPath::binomial);
            const LatticeMeasure sn = decon_sum(eps_bar, m, DeconSumPath::neumann);
            REQUIRE(sb.masses.size() == sn.masses.size());
            double dev = 0.0;
            for (std::size_t i = 0; i < sb.masses.size(); ++i)
                dev = std::max(dev, std::abs(sb.masses[i] - sn.masses[i]));
            CHECK(dev < 1e-9);
        }
    }
}

TEST_CASE("decon_sum: antisymmetry and the second moment")
{
    const double sigma = 0.5;
    const LatticeMeasure eps_bar = gaussian_eps_bar(sigma, 10.0, 0.01);
    for (int m : {1, 3, 6}) {
        const LatticeMeasure s = decon_sum(eps_bar, m);
        for (double xi : {0.3, 0.9, 2.1}) {
            const double lhs = cumulative(s, xi) + cumulative(s, -xi);
            CHECK(std::abs(lhs - 1.0) < 5e-3);
        }
        // int z^2 dS^m = -E[eps_bar^2] = -2 sigma^2 for m >= 1
        CHECK(std::abs(signed_moment(s, 2) + 2 * sigma * sigma) < 1e-4);
        // odd moments vanish by symmetry
        CHECK(std::abs(signed_moment(s, 1)) < 1e-9);
        CHECK(std::abs(signed_moment(s, 3)) < 1e-8);
    }
    CHECK_THROWS_AS(decon_sum(eps_bar, 25), std::out_of_range);
    CHECK_THROWS_AS(decon_sum(eps_bar, -1), std::invalid_argument);
}

TEST_CASE("decon_binomial: degenerate reductions")
{
    const double step = 0.01;
    const LatticeMeasure lat_x = discretize(DistributionSpec::gaussian(0, 1), 10.0, step);
    const LatticeMeasure eps_bar = gaussian_eps_bar(0.5, 8.0, step);
    const LatticeMeasure ydd = convolve(lat_x, eps_bar);
    std::vector<double> grid;
    for (double x = -3.0; x <= 3.01; x += 0.5) grid.push_back(x);

    // m = 0: the deconvolution function IS F_ydd
    const SignedGridFn d0 = decon_binomial(ydd, eps_bar, 0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(d0.values[i] == doctest::Approx(cumulative(ydd, grid[i])).epsilon(1e-12));

    // degenerate error: F_X on the grid
    LatticeMeasure delta0;
    delta0.origin = 0.0;
    delta0.step = step;
    delta0.masses = {1.0};
    const SignedGridFn dx = decon_binomial(lat_x, delta0, 4, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(dx.values[i] - cdf(DistributionSpec::gaussian(0, 1), grid[i])) < 1e-4);

    // symmetry pin: D(0, m) = 1/2 for all m
    for (int m : {0, 2, 5}) {
        const SignedGridFn d = decon_binomial(ydd, eps_bar, m, {0.0});
        CHECK(std::abs(d.values[0] - 0.5) < 1e-6);
    }

    // endpoint limits
    const SignedGridFn tails = decon_binomial(ydd, eps_bar, 3, {-9.0, 9.0});
    CHECK(std::abs(tails.values[0]) < 1e-6);
    CHECK(std::abs(tails.values[1] - 1.0) < 1e-6);
}

TEST_CASE("signed_moment: moment matching of the deconvolution function")
{
    const double step = 0.005;
    const double sigma_eps = 0.5;
    const LatticeMeasure lat_x = discretize(DistributionSpec::gaussian(0, 1), 10.0, step);
    const LatticeMeasure eps_bar = gaussian_eps_bar(sigma_eps, 8.0, step);
    const LatticeMeasure ydd = convolve(lat_x, eps_bar);
    const double e2 = 2 * sigma_eps * sigma_eps;  // E[eps_bar^2]

    for (int m : {0, 1, 2}) {
        const LatticeMeasure dm = convolve(ydd, decon_sum(eps_bar, m));
        CHECK(std::abs(signed_moment(dm, 0) - 1.0) < 1e-9);
        // matching orders: k < min(K0 + 1, 2(m+1))
        for (int k = 1; k < std::min(5, 2 * (m + 1)); ++k) {
            const double mx = moment(DistributionSpec::gaussian(0, 1), k).value();
            CHECK(std::abs(signed_moment(dm, k) - mx) < 1e-4);
        }
    }
    // first violated moment at m = 0: M_D(2,0) - M_X(2) = E[eps_bar^2]
    const LatticeMeasure d0 = convolve(ydd, decon_sum(eps_bar, 0));
    CHECK(std::abs(signed_moment(d0, 2) - 1.0 - e2) < 1e-4);

    // and at m = 1 the violated order is 4, with defect (2(m+1))! c_2^{m+1}
    const double c2 = e2 / 2.0;
    const double defect = 24.0 * c2 * c2;  // i^-4 (4)! c_2^2
    const LatticeMeasure d1 = convolve(ydd, decon_sum(eps_bar, 1));
    CHECK(std::abs((3.0 - signed_moment(d1, 4)) - defect) < 1e-3);
}
