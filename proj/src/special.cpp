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

#include "deconv/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {

// Pade approximant of Si(x) on |x| <= 4, good to ~1e-16.  The coefficients
// are the Chebyshev-Pade fits published on the trigonometric-integral
// reference pages (originally derived with Maple for the GalSim project).
double si_small(double x)
{
    const double x2 = x * x;
    const double num =
        x * (1. +
             x2 * (-4.54393409816329991e-2 +
                   x2 * (1.15457225751016682e-3 +
                         x2 * (-1.41018536821330254e-5 +
                               x2 * (9.43280809438713025e-8 +
                                     x2 * (-3.53201978997168357e-10 +
                                           x2 * (7.08240282274875911e-13 +
                                                 x2 * (-6.05338212010422477e-16))))))));
    const double den =
        1. +
        x2 * (1.01162145739225565e-2 +
              x2 * (4.99175116169755106e-5 +
                    x2 * (1.55654986308745614e-7 +
                          x2 * (3.28067571055789734e-10 +
                                x2 * (4.5049097575386581e-13 +
                                      x2 * (3.21107051193712168e-16))))));
    return num / den;
}

// Auxiliary functions f and g with Si(x) = pi/2 - f(x)cos(x) - g(x)sin(x),
// valid to ~1e-16 for x > 4 (same source as above).
void si_aux(double x, double& f, double& g)
{
    const double y = 1. / (x * x);
    f = (1. +
         y * (7.44437068161936700618e2 +
              y * (1.96396372895146869801e5 +
                   y * (2.37750310125431834034e7 +
                        y * (1.43073403821274636888e9 +
                             y * (4.33736238870432522765e10 +
                                  y * (6.40533830574022022911e11 +
                                       y * (4.20968180571076940208e12 +
                                            y * (1.00795182980368574617e13 +
                                                 y * (4.94816688199951963482e12 +
                                                      y * (-4.94701168645415959931e11))))))))))) /
        (x * (1. +
              y * (7.46437068161927678031e2 +
                   y * (1.97865247031583951450e5 +
                        y * (2.41535670165126845144e7 +
                             y * (1.47478952192985464958e9 +
                                  y * (4.58595115847765779830e10 +
                                       y * (7.08501308149515401563e11 +
                                            y * (5.06084464593475076774e12 +
                                                 y * (1.43468549171581016479e13 +
                                                      y * (1.11535493509914254097e13)))))))))));
    g = y * (1. +
             y * (8.1359520115168615e2 +
                  y * (2.35239181626478200e5 +
                       y * (3.12557570795778731e7 +
                            y * (2.06297595146763354e9 +
                                 y * (6.83052205423625007e10 +
                                      y * (1.09049528450362786e12 +
                                           y * (7.57664583257834349e12 +
                                                y * (1.81004487464664575e13 +
                                                     y * (6.43291613143049485e12 +
                                                          y * (-1.36517137670871689e12))))))))))) /
        (1. +
         y * (8.19595201151451564e2 +
              y * (2.40036752835578777e5 +
                   y * (3.26026661647090822e7 +
                        y * (2.23355543278099360e9 +
                             y * (7.87465017341829930e10 +
                                  y * (1.39866710696414565e12 +
                                       y * (1.17164723371736605e13 +
                                            y * (4.01839087307656620e13 +
                                                 y * (3.99653257887490811e13))))))))));
}

}  // namespace

double si(double x)
{
    const double ax = std::abs(x);
    double value;
    if (ax <= 4.0) {
        value = si_small(ax);
    } else if (std::isinf(ax)) {
        value = std::numbers::pi / 2;
    } else {
        double f, g;
        si_aux(ax, f, g);
        value = std::numbers::pi / 2 - f * std::cos(ax) - g * std::sin(ax);
    }
    return std::signbit(x) ? -value : value;
}

double si_pi()
{
    // Si(pi) = 1.85193705198246617036105337016..., the Wilbraham-Gibbs constant.
    return 1.8519370519824661704;
}

std::complex<double> phi_ab(double a, double b, double t)
{
    if (!(a < b)) throw std::invalid_argument("phi_ab: requires a < b");
    if (t == 0.0) return {b - a, 0.0};
    // (e^{itb} - e^{ita})/(it) = e^{ita} (e^{it(b-a)} - 1)/(it); the factor
    // (e^{i theta} - 1) is formed from half-angle identities so small t does
    // not cancel.
    const double theta = t * (b - a);
    const double s = std::sin(theta / 2);
    const std::complex<double> em1(-2.0 * s * s, std::sin(theta));
    const std::complex<double> rot(std::cos(t * a), std::sin(t * a));
    return rot * em1 / std::complex<double>(0.0, t);
}

}  // namespace deconv
