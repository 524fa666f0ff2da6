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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deconv/config.hpp"
#include "deconv/decon.hpp"
#include "deconv/empirical.hpp"
#include "deconv/oracle.hpp"
#include "deconv/special.hpp"
#include "deconv/transforms.hpp"

namespace py = pybind11;
using namespace deconv;

namespace {

SymmetrizationRequest request_from(const std::string& mode, double tau,
                                   const std::optional<DistributionSpec>& eta)
{
    if (mode == "conjugate") return SymmetrizationRequest::conjugate();
    if (mode == "shift") return SymmetrizationRequest::shift(tau);
    if (mode == "custom") {
        if (!eta) throw std::invalid_argument("custom symmetrization needs eta");
        return SymmetrizationRequest::custom(cf(*eta));
    }
    throw std::invalid_argument("unknown symmetrization mode '" + mode + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "distribution-function deconvolution via symmetrized geometric series";

    py::register_exception<QuadratureError>(m, "QuadratureError");
    py::register_exception<UnsupportedStructureError>(m, "UnsupportedStructureError");
    py::register_exception<SymmetrizationError>(m, "SymmetrizationError");

    py::class_<DistributionSpec>(m, "DistributionSpec")
        .def_static("dirac", &DistributionSpec::dirac, py::arg("a"))
        .def_static("gaussian", &DistributionSpec::gaussian, py::arg("mu"), py::arg("sigma"))
        .def_static("laplace", &DistributionSpec::laplace, py::arg("mu"), py::arg("b"))
        .def_static("uniform", &DistributionSpec::uniform, py::arg("a"), py::arg("b"))
        .def_static("triangular_diff", &DistributionSpec::triangular_diff, py::arg("a"))
        .def_static("polya_triangle", &DistributionSpec::polya_triangle, py::arg("T"))
        .def_static("mixture", &DistributionSpec::mixture, py::arg("weights"),
                    py::arg("components"))
        .def_static("from_json", &parse_distribution_json, py::arg("text"));

    py::class_<QuadSpec>(m, "QuadSpec")
        .def(py::init<>())
        .def_readwrite("t_max", &QuadSpec::t_max)
        .def_readwrite("abs_tol", &QuadSpec::abs_tol)
        .def_readwrite("rel_tol", &QuadSpec::rel_tol)
        .def_readwrite("zero_threshold", &QuadSpec::zero_threshold)
        .def_readwrite("max_panels", &QuadSpec::max_panels);

    m.def("si", &si, py::arg("x"), "sine integral Si(x)");
    m.def("phi_ab", &phi_ab, py::arg("a"), py::arg("b"), py::arg("t"),
          "Fourier transform of the indicator of [a, b]");

    m.def("cdf", &cdf, py::arg("spec"), py::arg("xi"));
    m.def(
        "pdf",
        [](const DistributionSpec& s, double xi) { return pdf(s, xi); },
        py::arg("spec"), py::arg("xi"));
    m.def(
        "moment",
        [](const DistributionSpec& s, int k) { return moment(s, k); },
        py::arg("spec"), py::arg("k"));
    m.def(
        "sample",
        [](const DistributionSpec& s, std::size_t n, std::uint64_t seed) {
            return sample(s, n, seed).values;
        },
        py::arg("spec"), py::arg("n"), py::arg("seed"));
    m.def(
        "cf_eval",
        [](const DistributionSpec& s, double t) { return cf(s).eval(t); },
        py::arg("spec"), py::arg("t"), "characteristic function value at t");
    m.def(
        "ecf",
        [](const std::vector<double>& ys, double t) {
            return ecf(std::span<const double>(ys), t);
        },
        py::arg("values"), py::arg("t"), "empirical characteristic function");

    m.def(
        "invert_cdf_gilpelaez",
        [](const DistributionSpec& s, double xi, const QuadSpec& q) {
            return invert_cdf_gilpelaez(cf(s), xi, q);
        },
        py::arg("spec"), py::arg("xi"), py::arg("quad") = QuadSpec{});
    m.def(
        "invert_cdf_bilateral",
        [](const DistributionSpec& s, double a, double b, const QuadSpec& q) {
            return invert_cdf_bilateral(cf(s), a, b, q);
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("quad") = QuadSpec{});
    m.def(
        "invert_pdf",
        [](const DistributionSpec& s, double xi, const QuadSpec& q) {
            return invert_pdf(cf(s), gaussian_kernel(), xi, q);
        },
        py::arg("spec"), py::arg("xi"), py::arg("quad") = QuadSpec{});

    m.def(
        "eval_decon",
        [](const DistributionSpec& target, const DistributionSpec& error, int mm,
           const std::vector<double>& grid, const std::string& mode, double tau,
           const std::optional<DistributionSpec>& eta, const QuadSpec& q) {
            const DeconProblem prob =
                make_problem(target, error, request_from(mode, tau, eta), mm, q);
            return eval_decon(prob, grid).fn.values;
        },
        py::arg("target"), py::arg("error"), py::arg("m"), py::arg("grid"),
        py::arg("mode") = "conjugate", py::arg("tau") = 0.0, py::arg("eta") = py::none(),
        py::arg("quad") = QuadSpec{},
        "deconvolution function D(xi, m) on a grid");
    m.def(
        "eval_density",
        [](const DistributionSpec& target, const DistributionSpec& error, int mm,
           const std::vector<double>& grid, const std::string& mode, double tau,
           const std::optional<DistributionSpec>& eta, const QuadSpec& q) {
            const DeconProblem prob =
                make_problem(target, error, request_from(mode, tau, eta), mm, q);
            return eval_density(prob, gaussian_kernel(), grid).fn.values;
        },
        py::arg("target"), py::arg("error"), py::arg("m"), py::arg("grid"),
        py::arg("mode") = "conjugate", py::arg("tau") = 0.0, py::arg("eta") = py::none(),
        py::arg("quad") = QuadSpec{},
        "deconvolution density d(xi, m) on a grid");
    m.def(
        "phi_decon",
        [](const DistributionSpec& target, const DistributionSpec& error, int mm, double t,
           const QuadSpec& q) {
            const DeconProblem prob =
                make_problem(target, error, SymmetrizationRequest::conjugate(), mm, q);
            return phi_decon(prob, t);
        },
        py::arg("target"), py::arg("error"), py::arg("m"), py::arg("t"),
        py::arg("quad") = QuadSpec{});

    m.def(
        "empirical_increment",
        [](const std::vector<double>& ys, const DistributionSpec& error, int mm, double a,
           double b, bool with_se, const QuadSpec& q) {
            EmpiricalDecon ed;
            ed.sample.values = ys;
            ed.sample.seed_info = "python";
            ed.sym = symmetrize(cf(error), SymmetrizationRequest::conjugate());
            ed.m = mm;
            ed.quad = q;
            const IncrementResult r = empirical_increment(ed, a, b, with_se);
            return py::make_tuple(r.value, r.std_error);
        },
        py::arg("values"), py::arg("error"), py::arg("m"), py::arg("a"), py::arg("b"),
        py::arg("with_se") = false, py::arg("quad") = QuadSpec{},
        "empirical deconvolution increment (value, jackknife se or None)");

    m.def(
        "decon_binomial",
        [](const DistributionSpec& target, const DistributionSpec& error, int mm,
           const std::vector<double>& grid, double span, double step) {
            const LatticeMeasure eps_bar = symmetrized_error_lattice(
                error, SymmetrizationRequest::conjugate(), span, step);
            const LatticeMeasure lat_x = discretize(target, span, step);
            const LatticeMeasure ydd = convolve(lat_x, eps_bar);
            return decon_binomial(ydd, eps_bar, mm, grid).values;
        },
        py::arg("target"), py::arg("error"), py::arg("m"), py::arg("grid"),
        py::arg("span") = 10.0, py::arg("step") = 0.01,
        "brute-force lattice evaluation of D(xi, m)");

    m.def("defaults_table", &defaults_table);
}
