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

#ifndef DECONV_EMPIRICAL_HPP
#define DECONV_EMPIRICAL_HPP

#include <complex>
#include <optional>

#include "deconv/charfn.hpp"
#include "deconv/quadrature.hpp"
#include "deconv/types.hpp"

namespace deconv {

/// Plug-in estimation state: a Y-sample, the symmetrized error, the
/// truncation index, and quadrature controls.
struct EmpiricalDecon {
    Sample sample;
    Symmetrization sym;
    int m = 0;
    QuadSpec quad;

    void validate() const;
};

/// Deconvolution kernel K(-t, m) = phi_eta(-t) G(t, m); on the zero set of
/// phi_eps this equals (m+1) phi_eta(-t).
std::complex<double> kernel_k(const Symmetrization& sym, double t, int m,
                              double zero_threshold);

/// Empirical Fourier-Stieltjes transform of the deconvolution function,
/// ecf(t) * K(-t, m); unbiased for phi_decon(t, m).
std::complex<double> phi_decon_empirical(const EmpiricalDecon& ed, double t);

struct IncrementResult {
    double value = 0.0;
    std::optional<double> std_error;  // jackknife, when requested
};

/// Empirical estimate of D(b, m) - D(a, m) by the truncated increment
/// integral; truncation is driven by the decay of phi_eta (the e.c.f. itself
/// does not vanish at infinity).  With `with_jackknife`, the per-observation
/// decomposition of the same fixed-rule integral yields a standard error.
/// Endpoints a, b follow the same atom-exclusion convention as the
/// deconvolution module: within 1e-6 of a known atom the estimate targets
/// the jump-midpoint increment.
IncrementResult empirical_increment(const EmpiricalDecon& ed, double a, double b,
                                    bool with_jackknife = false);

}  // namespace deconv

#endif  // DECONV_EMPIRICAL_HPP
