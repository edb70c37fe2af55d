#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "windfit/error.hpp"
#include "windfit/estimation.hpp"
#include "windfit/gof.hpp"
#include "windfit/pipeline.hpp"
#include "windfit/power.hpp"
#include "windfit/stats.hpp"

namespace py = pybind11;
using namespace windfit;

namespace {

DistParams make_params(const std::string& family, const std::vector<double>& theta) {
    // Validated up front so bad parameters fail at construction in Python.
    DistParams p = DistParams::from_vector(parse_family(family), theta);
    validate(p);
    return p;
}

}  // namespace

PYBIND11_MODULE(_windfit, m) {
    m.doc() = "Wind-speed distribution fitting";

    static py::exception<Error> base(m, "WindfitError", PyExc_RuntimeError);
    py::register_exception<InvalidParams>(m, "InvalidParams", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<DivergentMoment>(m, "DivergentMoment", base.ptr());
    py::register_exception<DegenerateSample>(m, "DegenerateSample", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    py::enum_<FamilyId>(m, "Family")
        .value("WE3", FamilyId::WE3)
        .value("LL3", FamilyId::LL3)
        .value("LN3", FamilyId::LN3)
        .value("GEV", FamilyId::GEV)
        .value("WE3_LL3", FamilyId::WE3_LL3)
        .value("LL3_WE3", FamilyId::LL3_WE3);

    py::class_<DistParams>(m, "DistParams")
        .def(py::init(&make_params), py::arg("family"), py::arg("theta"))
        .def_property_readonly("family", [](const DistParams& p) { return std::string(family_name(p.family)); })
        .def("to_list", &DistParams::to_vector)
        .def("__repr__", [](const DistParams& p) { return to_string(p); });

    m.def("pdf", &pdf, py::arg("params"), py::arg("x"));
    m.def("cdf", &cdf, py::arg("params"), py::arg("x"));
    m.def("quantile", &quantile, py::arg("params"), py::arg("q"));
    m.def("sample", &sample, py::arg("params"), py::arg("n"), py::arg("seed") = 42);

    m.def(
        "loglik",
        [](const std::string& family, const std::vector<double>& theta, const std::vector<double>& x) {
            return loglik(parse_family(family), theta, x);
        },
        py::arg("family"), py::arg("theta"), py::arg("sample"));

    m.def(
        "fit_mle",
        [](const std::string& family, const std::vector<double>& x, std::size_t n_starts, std::uint64_t seed) {
            const FitResult r = fit_mle(parse_family(family), x, {}, n_starts, seed);
            py::dict d;
            d["params"] = r.params;
            d["loglik"] = r.loglik;
            d["iterations"] = r.iterations;
            d["converged"] = r.converged;
            d["starts"] = r.n_restarts_used;
            return d;
        },
        py::arg("family"), py::arg("sample"), py::arg("n_starts") = 0, py::arg("seed") = 42);

    m.def(
        "gof",
        [](const std::vector<double>& x, const DistParams& p, double plotting_a) {
            gof::GofConfig cfg;
            cfg.plotting_a = plotting_a;
            const gof::GofReport r = gof::evaluate(x, p, cfg);
            py::dict d;
            d["ks"] = r.ks;
            d["r2"] = r.r2;
            d["rmse"] = r.rmse;
            d["chi2"] = r.chi2;
            return d;
        },
        py::arg("sample"), py::arg("params"), py::arg("plotting_a") = 0.0);

    m.def(
        "p_ref",
        [](const std::vector<double>& x, double rho, double area) {
            power::PowerConfig cfg;
            cfg.rho = rho;
            cfg.area = area;
            return power::p_ref(x, cfg);
        },
        py::arg("sample"), py::arg("rho") = 1.0, py::arg("area") = 2.0);
    m.def(
        "p_model",
        [](const DistParams& p, double rho, double area) {
            power::PowerConfig cfg;
            cfg.rho = rho;
            cfg.area = area;
            return power::p_model(p, cfg);
        },
        py::arg("params"), py::arg("rho") = 1.0, py::arg("area") = 2.0);
    m.def("pde", &power::pde, py::arg("p_ref"), py::arg("p_model"));

    m.def(
        "describe",
        [](const std::vector<double>& x) {
            const stats::DescriptiveStats s = stats::describe(x);
            py::dict d;
            d["n"] = s.n;
            d["max"] = s.max;
            d["mean"] = s.mean;
            d["sd"] = s.sd;
            d["se_mean"] = s.se_mean;
            d["skewness"] = s.skewness;
            d["kurtosis"] = s.kurtosis;
            d["q1"] = s.q1;
            d["q2"] = s.q2;
            d["q3"] = s.q3;
            return d;
        },
        py::arg("sample"));

    // Runs the pipeline on CSV text and returns the JSON report as a string.
    m.def(
        "run_csv",
        [](const std::string& csv, const std::vector<std::string>& families, std::uint64_t seed,
           std::size_t n_starts) {
            pipeline::RunConfig cfg;
            cfg.families.clear();
            for (const auto& f : families) cfg.families.push_back(parse_family(f));
            cfg.seed = seed;
            cfg.n_starts = n_starts;
            std::istringstream in(csv);
            const auto data = pipeline::ingest(in, cfg.missing);
            const auto out = pipeline::run_pipeline(cfg, data);
            return py::make_tuple(pipeline::render_json(out), out.exit_code);
        },
        py::arg("csv"), py::arg("families"), py::arg("seed") = 42, py::arg("n_starts") = 0);
}
