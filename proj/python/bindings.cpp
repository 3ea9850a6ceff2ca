// Python module: problem-file driven entry points returning JSON text.
#include "l2approx/approx.hpp"
#include "l2approx/error.hpp"
#include "l2approx/io.hpp"
#include "l2approx/orelocal.hpp"

#include <pybind11/pybind11.h>

namespace py = pybind11;
using namespace l2approx;

namespace {

RunOptions options(const Problem& p, int jobs) {
    RunOptions o;
    o.jobs = jobs;
    o.tol = p.tol;
    o.grid = p.grid;
    return o;
}

const GroupRingMatrix& matrix_of(const Problem& p) {
    if (!p.matrix) throw SchemaError("/matrix", "this operation needs a matrix");
    return *p.matrix;
}

std::string kernel(const std::string& text, int jobs, bool timing) {
    const Problem p = parse_problem(text);
    const auto run = approximate_kernel_dim(matrix_of(p), build_scheme(p), options(p, jobs), p.declared_limit);
    Json j = run_to_json(run, timing);
    j["verdict"] = verdict_to_json(check_atiyah_integrality(run, p.tol));
    return j.dump();
}

std::string kappa(const std::string& text, bool laplacian) {
    const Problem p = parse_problem(text);
    return kappa_to_json(laplacian ? matrix_of(p).laplacian() : matrix_of(p)).dump();
}

std::string det_bound(const std::string& text, int jobs) {
    const Problem p = parse_problem(text);
    return det_bound_to_json(verify_det_bound(matrix_of(p), build_scheme(p), options(p, jobs))).dump();
}

std::string continuity(const std::string& text, int jobs) {
    const Problem p = parse_problem(text);
    return continuity_to_json(verify_algebraic_continuity(matrix_of(p), build_scheme(p), options(p, jobs))).dump();
}

std::string gap(const std::string& text, int jobs) {
    const Problem p = parse_problem(text);
    if (!p.gap) throw SchemaError("/analyses/gap", "missing gap interval");
    return gap_to_json(spectrum_gap_check(matrix_of(p), build_scheme(p), p.gap->first, p.gap->second, options(p, jobs)))
        .dump();
}

std::string liouville(const std::string& text) {
    const Problem p = parse_problem(text);
    if (!p.liouville_n_max) throw SchemaError("/analyses/liouville", "missing liouville analysis");
    const int n = *p.liouville_n_max;
    return liouville_to_json(liouville_exclusion(matrix_of(p), liouville_constant(n), n)).dump();
}

std::string ore(const std::string& text) {
    const Problem p = parse_problem(text);
    Json j = Json::object();
    if (p.ore) j["ore"] = ore_to_json(p.group, ore_solve(p.group, p.ore->alpha, p.ore->sigma));
    if (p.zero_divisor) {
        const auto& z = *p.zero_divisor;
        j["zero_divisor"] = specialization_to_json(p.group, specialize_zero_divisor(p.group, z.a, z.b, z.g, z.g_prime));
    }
    if (j.empty()) throw SchemaError("/analyses", "needs ore or zero_divisor");
    return j.dump();
}

std::string normalize(const std::string& text) { return problem_to_json(parse_problem(text)).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and floating approximation of L2 invariants of group-ring matrices";
    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<SchemaError>(m, "SchemaError", base.ptr());

    m.def("kernel", &kernel, py::arg("problem"), py::arg("jobs") = 0, py::arg("timing") = false);
    m.def("kappa", &kappa, py::arg("problem"), py::arg("laplacian") = false);
    m.def("det_bound", &det_bound, py::arg("problem"), py::arg("jobs") = 0);
    m.def("continuity", &continuity, py::arg("problem"), py::arg("jobs") = 0);
    m.def("gap", &gap, py::arg("problem"), py::arg("jobs") = 0);
    m.def("liouville", &liouville, py::arg("problem"));
    m.def("ore", &ore, py::arg("problem"));
    m.def("normalize", &normalize, py::arg("problem"));
}
