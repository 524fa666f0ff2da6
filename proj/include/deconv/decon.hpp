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

#ifndef DECONV_DECON_HPP
#define DECONV_DECON_HPP

#include <complex>
#include <optional>
#include <vector>

#include "deconv/charfn.hpp"
#include "deconv/distributions.hpp"
#include "deconv/quadrature.hpp"
#include "deconv/transforms.hpp"
#include "deconv/types.hpp"

namespace deconv {

/// The data a deconvolution evaluation works from: the symmetrized error,
/// the characteristic function of the symmetrized observation, the
/// truncation index m, and quadrature controls.  phi_x is optional; the
/// bias integrals and the limit oracles need it.
struct DeconProblem {
    std::optional<CharFn> phi_x;
    Symmetrization sym;
    CharFn phi_y_dotdot;
    int m = 0;
    QuadSpec quad;
    bool ydd_density_continuous = false;  // F_ydd abs. continuous, density continuous
    std::vector<double> exclusion_atoms;  // atoms of F_X and F_eps_bar

    void validate() const;

    DeconProblem with_m(int new_m) const
    {
        DeconProblem p = *this;
        p.m = new_m;
        return p;
    }
};

/// Analytic problem built from catalog specs, with
/// phi_y_dotdot = cf(target) * cf(error) * conj(phi_eta).
DeconProblem make_problem(const DistributionSpec& target, const DistributionSpec& error,
                          const SymmetrizationRequest& mode, int m, QuadSpec quad = {});

/// m-power P(t, m) = (1 - phi_eps_bar(t))^{m+1} in [0, 1]; equals 1 on the
/// zero set of phi_eps and 0 at t = 0.
double m_power(const Symmetrization& sym, double t, int m);

/// Geometric sum G(t, m) = sum_{l=0}^{m} (1 - phi_eps_bar(t))^l in [1, m+1];
/// evaluated through the stable closed form (1 - P)/phi_eps_bar, switching to
/// the exact value m+1 inside the zero band.
double geometric_sum(const Symmetrization& sym, double t, int m, double zero_threshold);

enum class PhiDeconPath {
    ydotdot_gsum,   // phi_y_dotdot(t) * G(t, m)
    target_mpower,  // phi_x(t) * (1 - P(t, m)); needs phi_x
};

/// Fourier-Stieltjes transform of the deconvolution function, |value| <= 1.
std::complex<double> phi_decon(const DeconProblem& prob, double t,
                               PhiDeconPath path = PhiDeconPath::ydotdot_gsum);

/// Grid evaluation result plus per-point atom warnings (indices of grid
/// points within the atom-exclusion distance, where the value documented is
/// the jump midpoint).
struct DeconCurve {
    SignedGridFn fn;
    std::vector<std::size_t> atom_flagged;
};

/// Deconvolution function D(xi, m) on a strictly increasing grid, anchored by
/// the unilateral inversion integral at the first point and extended by
/// bilateral increments.
DeconCurve eval_decon(const DeconProblem& prob, const std::vector<double>& grid);

/// Local bias D(xi, m) - (F_X(xi) + F_X(xi-))/2 as a truncated Fourier
/// integral; requires phi_x and the near-zero integrability of
/// (1 - phi_eps_bar(t))/t, which is checked numerically on (0, 1].
double eval_decon_bias(const DeconProblem& prob, double xi);

/// Deconvolution density d(xi, m) on a grid via the smoothed inversion
/// integral with the delta-schedule.
DeconCurve eval_density(const DeconProblem& prob, const SmoothingKernel& kernel,
                        const std::vector<double>& grid);

/// Local density bias d(xi, m) - (f_X(xi+) + f_X(xi-))/2.
double eval_density_bias(const DeconProblem& prob, const SmoothingKernel& kernel,
                         double xi);

/// The m -> infinity limit of D(xi, m): the jump midpoint of F_X plus the
/// correction transforms determined by the structure of phi_eps_bar (compact
/// support, or a zero set of finite interval type).  Throws
/// UnsupportedStructureError when neither structural route applies.
double eval_decon_limit_oracle(const DeconProblem& prob, double xi);

/// The m -> infinity limit of d(xi, m), including the density-side
/// correction transforms.
double eval_density_limit_oracle(const DeconProblem& prob, const SmoothingKernel& kernel,
                                 double xi);

/// Oscillatory-factorization data for targets whose characteristic function
/// splits into a step-function transform gamma_X times a vanishing envelope:
/// the atoms of G_X, the split point T_0, and the period rho of the error's
/// m-power pattern.  Supplied by the catalog for dirac targets, mixtures
/// with a single dirac component, and (trivially) continuous targets.
struct FactorizationDescriptor {
    double t0 = 0.0;
    std::vector<std::pair<double, double>> gx_atoms;  // (location, mass)
    double rho = 0.0;   // 0 when the error has no periodic zero pattern
    int j_eps_bar = 1;  // first period index with monotone m-power
};

std::optional<FactorizationDescriptor> factorization_for(const DistributionSpec& target,
                                                         const Symmetrization& sym);

/// Distance of W_xi = {(x - xi) rho : x in D_{G_X}} from 2 pi Z; +inf when
/// the descriptor carries no period.
double w_xi_distance(const FactorizationDescriptor& desc, double xi);

}  // namespace deconv

#endif  // DECONV_DECON_HPP
