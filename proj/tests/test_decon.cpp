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
#include <numbers>
#include <random>

#include "deconv/decon.hpp"
#include "deconv/oracle.hpp"

using namespace deconv;

namespace {

DeconProblem gg_problem(int m, double sigma_eps = 0.5)
{
    return make_problem(DistributionSpec::gaussian(0, 1),
                        DistributionSpec::gaussian(0, sigma_eps),
                        SymmetrizationRequest::conjugate(), m);
}

DeconProblem degenerate_error_problem(int m)
{
    return make_problem(DistributionSpec::gaussian(0, 1), DistributionSpec::dirac(0.0),
                        SymmetrizationRequest::conjugate(), m);
}

}  // namespace

TEST_CASE("m_power: anchor values")
{
    const DeconProblem p = gg_problem(0, 1.0);
    CHECK(m_power(p.sym, 0.0, 0) == 0.0);
    CHECK(m_power(p.sym, 0.0, 7) == 0.0);
    // gaussian error sigma = 1, conjugate: phi_bar(1) = e^{-1}
    CHECK(m_power(p.sym, 1.0, 0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

    // on the zero set the m-power equals one
    const DeconProblem tri = make_problem(DistributionSpec::gaussian(0, 1),
                                          DistributionSpec::triangular_diff(1.0),
                                          SymmetrizationRequest::conjugate(), 3);
    CHECK(m_power(tri.sym, std::numbers::pi, 5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geometric_sum: anchor values and the zero band")
{
    const DeconProblem p = gg_problem(0, 1.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 100; ++i)
        CHECK(geometric_sum(p.sym, u(rng), 0, 1e-9) == 1.0);

    // phi_bar = 0.5 at t = sqrt(ln 2): 1 + 0.5 + 0.25
    const double t_half = std::sqrt(std::log(2.0));
    CHECK(geometric_sum(p.sym, t_half, 2, 1e-9) == doctest::Approx(1.75).epsilon(1e-12));

    const DeconProblem tri = make_problem(DistributionSpec::gaussian(0, 1),
                                          DistributionSpec::triangular_diff(1.0),
                                          SymmetrizationRequest::conjugate(), 7);
    CHECK(geometric_sum(tri.sym, std::numbers::pi, 7, 1e-9) == 8.0);
}

TEST_CASE("m_power and geometric_sum: ranges and monotonicity in m")
{
    const DeconProblem p = gg_problem(0);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    std::uniform_int_distribution<int> um(0, 63);
    for (int i = 0; i < 2000; ++i) {
        const double t = u(rng);
        const int m = um(rng);
        const double pw = m_power(p.sym, t, m);
        CHECK(pw >= 0.0);
        CHECK(pw <= 1.0);
        CHECK(m_power(p.sym, t, m + 1) <= pw + 1e-15);
        const double g = geometric_sum(p.sym, t, m, 1e-9);
        CHECK(g >= 1.0);
        CHECK(g <= m + 1.0);
        CHECK(geometric_sum(p.sym, t, m + 1, 1e-9) >= g - 1e-12);
    }
}

TEST_CASE("phi_decon: contract and both evaluation paths")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    std::uniform_int_distribution<int> um(0, 64);
    for (int i = 0; i < 1000; ++i) {
        const double t = u(rng);
        const int m = um(rng);
        const DeconProblem p = gg_problem(m);
        const auto a = phi_decon(p, t, PhiDeconPath::ydotdot_gsum);
        const auto b = phi_decon(p, t, PhiDeconPath::target_mpower);
        CHECK(std::abs(a) <= 1.0 + 1e-10);
        CHECK(std::abs(a - b) < 1e-10);
    }
    const DeconProblem p0 = gg_problem(0);
    CHECK(std::abs(phi_decon(p0, 0.0) - 1.0) < 1e-14);
    // m = 0 reduces to phi_y_dotdot
    for (double t : {0.4, 1.3})
        CHECK(std::abs(phi_decon(p0, t) - p0.phi_y_dotdot.eval(t)) < 1e-14);
}

TEST_CASE("phi_decon converges to phi_x off the zero set")
{
    const DeconProblem p = gg_problem(256);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int i = 0; i < 300; ++i) {
        const double t = u(rng);
        const double allowed =
            std::pow(1.0 - p.sym.eps_bar(t), 257) + 1e-10;
        CHECK(std::abs(phi_decon(p, t) - p.phi_x->eval(t)) <= allowed);
    }
}

TEST_CASE("eval_decon: degenerate error returns the target cdf")
{
    const DeconProblem p = degenerate_error_problem(5);
    std::vector<double> grid;
    for (double x = -3.0; x <= 3.01; x += 0.5) grid.push_back(x);
    const DeconCurve c = eval_decon(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(c.fn.values[i] - cdf(DistributionSpec::gaussian(0, 1), grid[i])) < 1e-7);
}

TEST_CASE("eval_decon: symmetric target pins one half at the center")
{
    for (int m : {0, 3, 17}) {
        const DeconProblem p = gg_problem(m);
        const DeconCurve c = eval_decon(p, {0.0});
        CHECK(std::abs(c.fn.values[0] - 0.5) < 1e-9);
    }
}

TEST_CASE("eval_decon: dirac target with continuous symmetric error")
{
    for (int m : {0, 4, 8}) {
        const DeconProblem p =
            make_problem(DistributionSpec::dirac(0.7), DistributionSpec::gaussian(0, 0.5),
                         SymmetrizationRequest::conjugate(), m);
        const DeconCurve c = eval_decon(p, {0.7});
        CHECK(std::abs(c.fn.values[0] - 0.5) < 1e-3);
        REQUIRE(c.atom_flagged.size() == 1);  // grid point sits on the target atom
        CHECK(c.atom_flagged[0] == 0);
    }
}

TEST_CASE("eval_decon: shift symmetrization against the lattice oracle")
{
    const auto target = DistributionSpec::gaussian(0, 1);
    const auto error = DistributionSpec::gaussian(0.3, 0.5);
    const auto request = SymmetrizationRequest::shift(0.3);

    const double step = 0.01;
    const LatticeMeasure eps_bar = symmetrized_error_lattice(error, request, 6.0, step);
    const LatticeMeasure ydd = convolve(discretize(target, 10.0, step), eps_bar);

    const DeconProblem prob = make_problem(target, error, request, 3);
    const std::vector<double> grid{-1.5, 0.0, 1.0};
    const DeconCurve fourier = eval_decon(prob, grid);
    const SignedGridFn lattice = decon_binomial(ydd, eps_bar, 3, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(fourier.fn.values[i] - lattice.values[i]) < 1e-3);
}

TEST_CASE("eval_decon: both panel rules agree")
{
    DeconProblem aligned = gg_problem(6);
    DeconProblem bisect = gg_problem(6);
    bisect.quad.panel_rule = PanelRule::adaptive_bisection;
    for (double xi : {-1.7, 0.4, 2.2}) {
        const double a = eval_decon(aligned, {xi}).fn.values[0];
        const double b = eval_decon(bisect, {xi}).fn.values[0];
        CHECK(std::abs(a - b) < 1e-8);
    }
}

TEST_CASE("eval_decon: endpoint limits over a wide grid")
{
    // the signed measure spreads wider than F_X; D(+-8, 4) itself is ~2e-6
    const DeconProblem p = gg_problem(4);
    const DeconCurve c = eval_decon(p, {-8.0, 8.0});
    CHECK(std::abs(c.fn.values[0]) < 1e-5);
    CHECK(std::abs(c.fn.values[1] - 1.0) < 1e-5);
}

TEST_CASE("eval_decon agrees with the lattice oracle")
{
    const double step = 0.005;
    const LatticeMeasure lat_x = discretize(DistributionSpec::gaussian(0, 1), 10.0, step);
    const LatticeMeasure eps_bar = symmetrized_error_lattice(
        DistributionSpec::gaussian(0, 0.5), SymmetrizationRequest::conjugate(), 8.0, step);
    const LatticeMeasure ydd = convolve(lat_x, eps_bar);
    std::vector<double> grid{-2.0, -1.0, 0.0, 1.0, 2.0};
    for (int m : {0, 2}) {
        const DeconProblem p = gg_problem(m);
        const DeconCurve fourier = eval_decon(p, grid);
        const SignedGridFn lattice = decon_binomial(ydd, eps_bar, m, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(std::abs(fourier.fn.values[i] - lattice.values[i]) < 1e-3);
    }
}

TEST_CASE("eval_decon_bias: zero cases and internal consistency")
{
    // degenerate error: no bias anywhere
    const DeconProblem pid = degenerate_error_problem(3);
    for (double xi : {-1.0, 0.3, 2.0}) CHECK(std::abs(eval_decon_bias(pid, xi)) < 1e-9);

    // symmetric target at the center: odd integrand
    const DeconProblem p = gg_problem(2);
    CHECK(std::abs(eval_decon_bias(p, 0.0)) < 1e-12);

    // bias == D(xi, m) - F_X(xi) computed the long way
    const double xi = 1.0;
    const double direct = eval_decon(p, {xi}).fn.values[0] -
                          cdf(DistributionSpec::gaussian(0, 1), xi);
    CHECK(std::abs(eval_decon_bias(p, xi) - direct) < 1e-5);
}

TEST_CASE("eval_density: reductions and cdf consistency")
{
    const SmoothingKernel kernel = gaussian_kernel();

    // degenerate error: density of the target itself
    const DeconProblem pid = degenerate_error_problem(2);
    const DeconCurve d0 = eval_density(pid, kernel, {0.0, 0.5});
    CHECK(std::abs(d0.fn.values[0] - 0.3989422804014327) < 1e-6);
    CHECK(std::abs(d0.fn.values[1] - pdf(DistributionSpec::gaussian(0, 1), 0.5).value()) <
          1e-6);

    // m = 0: density of Y dotdot ~ N(0, 1 + 2 sigma_eps^2)
    const DeconProblem p0 = gg_problem(0);
    const double var_ydd = 1.0 + 2 * 0.5 * 0.5;
    const DeconCurve dy = eval_density(p0, kernel, {0.0});
    CHECK(std::abs(dy.fn.values[0] - 1.0 / std::sqrt(2 * std::numbers::pi * var_ydd)) < 1e-6);

    // trapezoid integral of the density matches the cdf increment
    const DeconProblem p = gg_problem(4);
    std::vector<double> grid;
    for (double x = -4.0; x <= 4.001; x += 0.1) grid.push_back(x);
    const DeconCurve dens = eval_density(p, kernel, grid);
    double integral = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        integral += 0.5 * (dens.fn.values[i] + dens.fn.values[i - 1]) * (grid[i] - grid[i - 1]);
    const DeconCurve ends = eval_decon(p, {grid.front(), grid.back()});
    CHECK(std::abs(integral - (ends.fn.values[1] - ends.fn.values[0])) < 5e-3);
}

TEST_CASE("eval_density matches a lattice difference quotient")
{
    const double step = 0.005;
    const LatticeMeasure eps_bar = symmetrized_error_lattice(
        DistributionSpec::gaussian(0, 0.5), SymmetrizationRequest::conjugate(), 8.0, step);
    const LatticeMeasure ydd =
        convolve(discretize(DistributionSpec::gaussian(0, 1), 10.0, step), eps_bar);

    const double h = 0.05;
    const SignedGridFn around = decon_binomial(ydd, eps_bar, 4, {-h, h});
    const double slope = (around.values[1] - around.values[0]) / (2 * h);

    const DeconProblem p = gg_problem(4);
    const DeconCurve dens = eval_density(p, gaussian_kernel(), {0.0});
    CHECK(std::abs(dens.fn.values[0] - slope) < 1e-3);
}

TEST_CASE("eval_density_bias: zero cases, m = 0 value, decay in m")
{
    const SmoothingKernel kernel = gaussian_kernel();
    const DeconProblem pid = degenerate_error_problem(1);
    CHECK(std::abs(eval_density_bias(pid, kernel, 0.4)) < 1e-8);

    // m = 0: f_ydd - f_x
    const DeconProblem p0 = gg_problem(0);
    const double var_ydd = 1.5;
    const double expected = 1.0 / std::sqrt(2 * std::numbers::pi * var_ydd) -
                            pdf(DistributionSpec::gaussian(0, 1), 0.0).value();
    CHECK(std::abs(eval_density_bias(p0, kernel, 0.0) - expected) < 1e-6);

    // larger m shrinks the bias
    const double b5 = std::abs(eval_density_bias(gg_problem(5), kernel, 0.5));
    const double b200 = std::abs(eval_density_bias(gg_problem(200), kernel, 0.5));
    CHECK(b200 < b5);
}

TEST_CASE("limit oracles: zero-measure zero set and degenerate error")
{
    // gaussian error: N_eps is empty, corrections vanish
    const DeconProblem p = gg_problem(3);
    for (double xi : {-1.0, 0.0, 0.8}) {
        CHECK(std::abs(eval_decon_limit_oracle(p, xi) -
                       cdf(DistributionSpec::gaussian(0, 1), xi)) < 1e-12);
        CHECK(std::abs(eval_density_limit_oracle(p, gaussian_kernel(), xi) -
                       pdf(DistributionSpec::gaussian(0, 1), xi).value()) < 1e-12);
    }
    // degenerate error reduces to F_X at continuity points
    const DeconProblem pid = degenerate_error_problem(3);
    CHECK(std::abs(eval_decon_limit_oracle(pid, 0.3) -
                   cdf(DistributionSpec::gaussian(0, 1), 0.3)) < 1e-12);
}

TEST_CASE("limit oracles: compact support corrections")
{
    const auto eta = cf(DistributionSpec::dirac(0.0));
    const DeconProblem p =
        make_problem(DistributionSpec::gaussian(0, 1), DistributionSpec::polya_triangle(1.0),
                     SymmetrizationRequest::custom(eta), 0);
    // at the symmetry point every correction integral vanishes
    CHECK(std::abs(eval_decon_limit_oracle(p, 0.0) - 0.5) < 1e-9);

    // away from it the correction is the psi transform; cross-check against a
    // large-m evaluation of the deconvolution function itself
    const double xi = 1.0;
    const double limit = eval_decon_limit_oracle(p, xi);
    const DeconProblem p400 = p.with_m(400);
    const double d400 = eval_decon(p400, {xi}).fn.values[0];
    CHECK(std::abs(limit - d400) < 5e-3);

    // density-side analogue
    const double dlimit = eval_density_limit_oracle(p, gaussian_kernel(), 0.0);
    const DeconCurve dd = eval_density(p400, gaussian_kernel(), {0.0});
    CHECK(std::abs(dlimit - dd.fn.values[0]) < 5e-3);
}

TEST_CASE("limit oracles: unsupported structures are reported")
{
    const DeconProblem tri = make_problem(DistributionSpec::gaussian(0, 1),
                                          DistributionSpec::triangular_diff(1.0),
                                          SymmetrizationRequest::conjugate(), 2);
    CHECK_THROWS_AS(eval_decon_limit_oracle(tri, 0.5), UnsupportedStructureError);
    CHECK_THROWS_AS(eval_density_limit_oracle(tri, gaussian_kernel(), 0.5),
                    UnsupportedStructureError);

    // density oracle needs an absolutely continuous target
    const DeconProblem datom =
        make_problem(DistributionSpec::dirac(0.0), DistributionSpec::gaussian(0, 0.5),
                     SymmetrizationRequest::conjugate(), 2);
    CHECK_THROWS_AS(eval_density_limit_oracle(datom, gaussian_kernel(), 0.0),
                    UnsupportedStructureError);
}

TEST_CASE("factorization descriptor and the distance condition")
{
    const DeconProblem tri = make_problem(DistributionSpec::gaussian(0, 1),
                                          DistributionSpec::triangular_diff(1.0),
                                          SymmetrizationRequest::conjugate(), 2);
    const auto desc = factorization_for(DistributionSpec::gaussian(0, 1), tri.sym);
    REQUIRE(desc.has_value());
    CHECK(desc->rho == doctest::Approx(std::numbers::pi));
    CHECK(w_xi_distance(*desc, 0.5) == doctest::Approx(std::numbers::pi / 2));
    CHECK(w_xi_distance(*desc, 0.0) == doctest::Approx(0.0));

    const auto ddirac = factorization_for(DistributionSpec::dirac(1.0), tri.sym);
    REQUIRE(ddirac.has_value());
    CHECK(ddirac->gx_atoms.size() == 1);
    CHECK(ddirac->gx_atoms[0].first == 1.0);

    const auto multi = factorization_for(
        DistributionSpec::mixture({0.5, 0.5}, {DistributionSpec::dirac(0.0),
                                               DistributionSpec::dirac(1.0)}),
        tri.sym);
    CHECK(!multi.has_value());
}

TEST_CASE("squared-sinc regime: bias shrinks from m = 8 to m = 64")
{
    const DeconProblem base = make_problem(DistributionSpec::gaussian(0, 1),
                                           DistributionSpec::triangular_diff(1.0),
                                           SymmetrizationRequest::conjugate(), 8);
    const double xi = 0.5;
    const auto desc = factorization_for(DistributionSpec::gaussian(0, 1), base.sym);
    REQUIRE(w_xi_distance(*desc, xi) > 0.3);

    const double target = cdf(DistributionSpec::gaussian(0, 1), xi);
    const double e8 = std::abs(eval_decon(base, {xi}).fn.values[0] - target);
    const double e64 = std::abs(eval_decon(base.with_m(64), {xi}).fn.values[0] - target);
    CHECK(e64 < e8);
}
