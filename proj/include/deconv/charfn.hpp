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

#ifndef DECONV_CHARFN_HPP
#define DECONV_CHARFN_HPP

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "deconv/types.hpp"

namespace deconv {

struct DistributionSpec;  // distributions.hpp

/// Description of the zero set of a characteristic function on t >= 0
/// (symmetry supplies t < 0).  Listed points and intervals lie in (0, inf].
struct ZeroSet {
    enum class Kind { empty, finite_points, periodic_points, intervals, beyond, unknown };
    Kind kind = Kind::unknown;
    std::vector<double> points;                        // finite_points
    double period = 0.0;                               // periodic_points: k*period, k >= 1
    double offset = 0.0;                               // ... shifted by offset
    std::vector<std::pair<double, double>> intervals;  // [tau_{2k-1}, tau_{2k}]
    double beyond = std::numeric_limits<double>::infinity();  // all |t| > beyond

    static ZeroSet empty_set() { return {Kind::empty, {}, 0, 0, {}, 0}; }
    static ZeroSet finite(std::vector<double> pts)
    {
        return {Kind::finite_points, std::move(pts), 0, 0, {}, 0};
    }
    static ZeroSet periodic(double period, double offset = 0.0)
    {
        return {Kind::periodic_points, {}, period, offset, {}, 0};
    }
    static ZeroSet interval_list(std::vector<std::pair<double, double>> ivs)
    {
        return {Kind::intervals, {}, 0, 0, std::move(ivs), 0};
    }
    static ZeroSet beyond_of(double T) { return {Kind::beyond, {}, 0, 0, {}, T}; }
    static ZeroSet unknown_set() { return {}; }

    /// Zeros (point representatives) inside (lo, hi), for panel splitting.
    std::vector<double> points_in(double lo, double hi, std::size_t cap = 256) const;

    /// Whether N intersected with [0, hi] is known to have Lebesgue measure 0.
    bool measure_zero_below(double hi) const;
};

enum class DecayHint { none, algebraic, exponential, compact };

/// Evaluable characteristic function with metadata used by the quadratures.
struct CharFn {
    std::function<std::complex<double>(double)> eval;
    bool is_real_symmetric = false;  // real-valued and even
    bool is_unit_interval = false;   // values in [0, 1]
    ZeroSet zero_set;
    std::optional<double> support_bound;  // T with phi(t) = 0 for |t| > T
    DecayHint decay = DecayHint::none;
    double decay_exponent = 0.0;  // nu for DecayHint::algebraic
    std::shared_ptr<const DistributionSpec> source;  // set by the catalog

    std::complex<double> operator()(double t) const { return eval(t); }
};

/// Requested symmetrization of the error characteristic function.
struct SymmetrizationRequest {
    enum class Kind { conjugate, shift, custom };
    Kind kind = Kind::conjugate;
    double tau = 0.0;              // shift
    std::optional<CharFn> eta;     // custom

    static SymmetrizationRequest conjugate() { return {}; }
    static SymmetrizationRequest shift(double tau)
    {
        return {Kind::shift, tau, std::nullopt};
    }
    static SymmetrizationRequest custom(CharFn eta)
    {
        return {Kind::custom, 0.0, std::move(eta)};
    }
};

/// Result of symmetrizing an error: phi_eps_bar = phi_eps * conj(phi_eta) is
/// real symmetric with values in [0, 1] and shares the zero set of phi_eps.
struct Symmetrization {
    SymmetrizationRequest::Kind mode = SymmetrizationRequest::Kind::conjugate;
    double shift_tau = 0.0;
    CharFn phi_eta;
    CharFn phi_eps_bar;
    std::optional<CharFn> phi_y_dotdot;  // populated by compose_y_dotdot

    /// Real value of phi_eps_bar(t), clamped into [0, 1].
    double eps_bar(double t) const;
};

/// Builds the symmetrization of the error.  Conjugate mode (the default)
/// yields phi_eps_bar = |phi_eps|^2 and is always valid; shift mode requires
/// phi_eps(t) e^{-it tau} to be real symmetric and nonnegative; custom mode
/// accepts any eta whose product passes the same checks.  Violations throw
/// SymmetrizationError (checked on a fixed 4096-point log-spaced t-sample).
Symmetrization symmetrize(const CharFn& phi_eps,
                          const SymmetrizationRequest& request = {});

/// phi_y_dotdot = phi_y * conj(phi_eta); stores the result on `sym` as well.
CharFn compose_y_dotdot(const CharFn& phi_y, Symmetrization& sym);

/// Empirical characteristic function (1/n) sum_k exp(i t y_k).
std::complex<double> ecf(std::span<const double> values, double t);
std::complex<double> ecf(const Sample& sample, double t);

/// Product of two characteristic functions with combined metadata
/// (the stronger decay wins, support bounds take the minimum).
CharFn cf_product(const CharFn& a, const CharFn& b);

/// Characteristic function conj(phi(t)) = phi(-t).
CharFn cf_conjugate(const CharFn& phi);

/// Fixed 4096-point log-spaced sample on which construction-time flag checks
/// run (positive half; the negative half follows by symmetry).
std::span<const double> flag_check_sample();

}  // namespace deconv

#endif  // DECONV_CHARFN_HPP
