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

#ifndef DECONV_TRANSFORMS_HPP
#define DECONV_TRANSFORMS_HPP

#include <limits>

#include "deconv/charfn.hpp"
#include "deconv/quadrature.hpp"

namespace deconv {

/// Smoothing kernel for density inversion: an absolutely continuous d.f.
/// with integrable characteristic function phi_i whose derivative decays
/// like |t|^-nu, nu > 2.
struct SmoothingKernel {
    CharFn phi_i;
    double nu = 0.0;
};

/// Standard normal kernel, phi_I(t) = exp(-t^2/2).  Its transform decays
/// faster than any power, so any nu is admissible; nu = 8 is recorded.
SmoothingKernel gaussian_kernel();

/// Smallest t at which the modulus envelope of phi stays below `level`,
/// searched on a log grid and capped.  Compact supports short-circuit.
double tail_cutoff(const CharFn& phi, double level, double cap = 1e5);

/// Effective outer truncation for integrals against phi under `quad`
/// (user t_max wins, else the decay policy above).
double effective_t_max(const CharFn& phi, const QuadSpec& quad);

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Fourier transform F{Psi_{S,T}}(-xi) of Psi_{S,T}(t) =
/// phi_x(t) / (i 2 pi t) * 1{S <= |t| <= T}.  When phi_x carries its source
/// distribution the sine-integral representation (an integral of
/// Si((xi-x)T) - Si((xi-x)S) against dF) is used; otherwise direct
/// oscillatory quadrature in t.  T may be infinite.
double psi_cap_transform(const CharFn& phi_x, double S, double T, double xi,
                         const QuadSpec& quad);

/// F_X(b) - F_X(a) + (F_X{a} - F_X{b})/2 via the truncated symmetric
/// integral of phi_ab(-t) phi_x(t) / (2 pi).  Requires finite a < b.
double invert_cdf_bilateral(const CharFn& phi_x, double a, double b,
                            const QuadSpec& quad);

/// (F_X(xi) + F_X(xi-))/2 via the principal-value (Gil-Pelaez) integral.
double invert_cdf_gilpelaez(const CharFn& phi_x, double xi, const QuadSpec& quad);

/// (f_X(xi+) + f_X(xi-))/2 via smoothed inversion with a delta-schedule
/// (delta_k = 0.5 * 2^-k, stopped on a Cauchy criterion, at most 20 steps).
double invert_pdf(const CharFn& phi_x, const SmoothingKernel& kernel, double xi,
                  const QuadSpec& quad);

/// Runs the delta-schedule delta_k = 0.5 * 2^-k against `value`, stopping
/// when successive values agree within tol.  When the decrements shrink at a
/// stable geometric ratio (kinked densities converge only linearly in delta)
/// the extrapolated limit is returned instead.  Throws QuadratureError after
/// 20 halvings without convergence.
double delta_schedule_limit(const std::function<double(double)>& value, double tol,
                            const char* what);

}  // namespace deconv

#endif  // DECONV_TRANSFORMS_HPP
