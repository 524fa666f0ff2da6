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

#ifndef DECONV_QUADRATURE_HPP
#define DECONV_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace deconv {

enum class PanelRule { adaptive_bisection, oscillation_aligned };

/// Controls for the oscillatory / principal-value quadratures.
struct QuadSpec {
    double t_max = 0.0;      ///< outer truncation of t-integrals; 0 = automatic
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    double zero_threshold = 1e-9;  ///< |phi| below this is treated as a zero
    int max_panels = 20000;
    PanelRule panel_rule = PanelRule::oscillation_aligned;

    void validate() const;  // throws std::invalid_argument on bad fields
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    int panels = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7,15) integration of f over [lo, hi].
/// `seeds` lists interior points that must be panel boundaries (integrand
/// kinks, zeros of the underlying characteristic function, lobe edges).
QuadResult integrate_adaptive(const Integrand& f, double lo, double hi,
                              double abs_tol, double rel_tol, int max_panels,
                              std::vector<double> seeds = {});

/// Integral of f over [lo, inf), realized as [lo, t0] plus doubling blocks
/// [t0 2^k, t0 2^{k+1}] until two consecutive blocks fall below tolerance or
/// hi_cap is reached.  Blocks rely on internal cancellation, so hi_cap should
/// come from a decay policy when the integrand has no absolute tail bound.
QuadResult integrate_blocks_to(const Integrand& f, double lo, double t0,
                               double hi_cap, double abs_tol, double rel_tol,
                               int max_panels,
                               const std::vector<double>& seeds = {});

/// Panel boundaries at multiples of pi/freq inside (lo, hi), capped in count.
/// Used to align panels with the sign-alternating lobes of e^{-i xi t} factors.
std::vector<double> lobe_seeds(double lo, double hi, double freq,
                               std::size_t max_seeds = 1024);

/// Nodes and weights of the composite 15-point Kronrod rule over `panels`
/// equal panels of [lo, hi]; for integrals that must share one node set
/// across many integrands (per-observation decompositions).
std::vector<std::pair<double, double>> gk15_nodes(double lo, double hi, int panels);

}  // namespace deconv

#endif  // DECONV_QUADRATURE_HPP
