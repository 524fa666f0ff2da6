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

#ifndef DECONV_SPECIAL_HPP
#define DECONV_SPECIAL_HPP

#include <complex>

namespace deconv {

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
///
/// Odd in x, |Si(x)| <= Si(pi), Si(x) -> pi/2 as x -> +inf.  Evaluated by a
/// Pade approximant for |x| <= 4 and by the auxiliary-function representation
/// Si(x) = pi/2 - f(x) cos(x) - g(x) sin(x) beyond, both accurate to a few
/// ulp (coefficients from the published Chebyshev-Pade fits).
double si(double x);

/// Maximum of the sine integral, Si(pi).
double si_pi();

/// Fourier transform of the indicator of [a, b]:
/// phi_ab(t) = (exp(itb) - exp(ita)) / (it), with value b - a at t = 0.
/// Requires a < b.
std::complex<double> phi_ab(double a, double b, double t);

}  // namespace deconv

#endif  // DECONV_SPECIAL_HPP
