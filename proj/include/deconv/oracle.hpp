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

#ifndef DECONV_ORACLE_HPP
#define DECONV_ORACLE_HPP

#include <vector>

#include "deconv/distributions.hpp"
#include "deconv/types.hpp"

namespace deconv {

/// Signed point masses on the lattice origin + k * step.  The brute-force
/// side of every deconvolution identity.
struct LatticeMeasure {
    double origin = 0.0;
    double step = 0.0;
    std::vector<double> masses;

    double x_at(std::size_t i) const { return origin + static_cast<double>(i) * step; }
    double total_mass() const;  // compensated
};

enum class AtomRule {
    right_continuous,  // cell at xi counted in full
    midpoint,          // cell at xi counted with half its mass
};

/// Cumulative value of the lattice at xi (nearest-node evaluation).  The
/// midpoint rule reports the jump midpoint at lattice atoms, matching what
/// Fourier inversion recovers there.
double cumulative(const LatticeMeasure& lat, double xi,
                  AtomRule rule = AtomRule::midpoint);

/// Cell masses from cdf differences on a lattice of half-width `span` around
/// the distribution's center; atoms are placed exactly on lattice nodes.
/// Throws when atoms cannot all be represented on one lattice.
LatticeMeasure discretize(const DistributionSpec& spec, double span, double step);

/// Direct O(N^2) discrete convolution; steps must match.
LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b);

/// Lattice of -X when X has the given lattice.
LatticeMeasure mirrored(const LatticeMeasure& lat);

/// Lattice of the symmetrized error under the given request: conjugate mode
/// convolves with the mirrored lattice, shift mode translates by -tau, and
/// custom mode convolves with the mirrored lattice of eta's distribution.
LatticeMeasure symmetrized_error_lattice(const DistributionSpec& error,
                                         const SymmetrizationRequest& request,
                                         double span, double step);

enum class DeconSumPath {
    auto_select,  // binomial for m <= 12, Neumann beyond
    binomial,     // double sum of binomial-weighted convolution powers
    neumann,      // sum of convolution powers of (dirac at 0) - F_eps_bar
};

/// Discretized deconvolution sum S^m; m capped at 24 (binomial coefficient
/// growth erodes the alternating cancellation beyond that).
LatticeMeasure decon_sum(const LatticeMeasure& eps_bar, int m,
                         DeconSumPath path = DeconSumPath::auto_select);

/// Brute-force deconvolution function: cumulative values of
/// F_y_dotdot convolved with S^m at the grid points.
SignedGridFn decon_binomial(const LatticeMeasure& y_dotdot, const LatticeMeasure& eps_bar,
                            int m, const std::vector<double>& grid);

/// sum x^k * mass over the lattice (compensated).
double signed_moment(const LatticeMeasure& lat, int k);

}  // namespace deconv

#endif  // DECONV_ORACLE_HPP
