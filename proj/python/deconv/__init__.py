# Copyright 2026 The deconv authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Deconvolution of distribution functions and densities.

Thin Python layer over the C++ core: reconstruct the distribution of X from
the law of Y = X + eps via symmetrization and a truncated geometric series.
"""

from deconv._core import (
    DistributionSpec,
    QuadSpec,
    QuadratureError,
    SymmetrizationError,
    UnsupportedStructureError,
    cdf,
    cf_eval,
    decon_binomial,
    defaults_table,
    ecf,
    empirical_increment,
    eval_decon,
    eval_density,
    invert_cdf_bilateral,
    invert_cdf_gilpelaez,
    invert_pdf,
    moment,
    pdf,
    phi_ab,
    phi_decon,
    sample,
    si,
)

__all__ = [
    "DistributionSpec",
    "QuadSpec",
    "QuadratureError",
    "SymmetrizationError",
    "UnsupportedStructureError",
    "cdf",
    "cf_eval",
    "decon_binomial",
    "defaults_table",
    "ecf",
    "empirical_increment",
    "eval_decon",
    "eval_density",
    "invert_cdf_bilateral",
    "invert_cdf_gilpelaez",
    "invert_pdf",
    "moment",
    "pdf",
    "phi_ab",
    "phi_decon",
    "sample",
    "si",
]

__version__ = "0.1.0"
