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

#ifndef DECONV_TYPES_HPP
#define DECONV_TYPES_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace deconv {

/// A set of i.i.d. real observations (one per entry).
struct Sample {
    std::vector<double> values;
    std::string seed_info;  // provenance note, e.g. "gaussian(0,1) n=100 seed=7"
};

enum class GridKind { cdf_like, density_like };

/// Values of a signed distribution function or density on a finite grid.
struct SignedGridFn {
    std::vector<double> grid;  // strictly increasing
    std::vector<double> values;
    GridKind kind = GridKind::cdf_like;

    void validate() const
    {
        if (grid.size() != values.size())
            throw std::invalid_argument("SignedGridFn: grid/value size mismatch");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw std::invalid_argument("SignedGridFn: grid must be strictly increasing");
    }
};

/// Thrown when a quadrature fails to reach the requested tolerance.
/// `achieved` carries the best error estimate obtained before giving up.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved, double requested)
        : std::runtime_error(what), achieved(achieved), requested(requested) {}
    double achieved;
    double requested;
};

/// Thrown when an operation requires structure (compact support, a finite
/// zero-set description, a factorization) that the inputs do not provide.
class UnsupportedStructureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a requested symmetrization does not produce a real symmetric
/// characteristic function with values in the unit interval.
class SymmetrizationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace deconv

#endif  // DECONV_TYPES_HPP
