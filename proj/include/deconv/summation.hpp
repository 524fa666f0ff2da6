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

#ifndef DECONV_SUMMATION_HPP
#define DECONV_SUMMATION_HPP

#include <cmath>

namespace deconv {

/// Neumaier's compensated summation; robust when terms alternate in sign and
/// exceed the running total.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

}  // namespace deconv

#endif  // DECONV_SUMMATION_HPP
