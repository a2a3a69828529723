#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zetascope/report.hpp"

namespace py = pybind11;

namespace {

std::string run_stage(const std::string& problemJson, const std::string& stage, int pole) {
  zetascope::ProblemSpec spec = zetascope::parse_problem_text(problemJson);
  zetascope::Stage st = zetascope::Stage::Analyze;
  if (stage == "poles")
    st = zetascope::Stage::Poles;
  else if (stage == "coeff")
    st = zetascope::Stage::Coefficients;
  else if (stage == "verify")
    st = zetascope::Stage::Verify;
  else if (stage != "analyze")
    throw zetascope::input_error("unknown stage: " + stage);
  zetascope::AnalyzeOutcome out = zetascope::run_analyze(spec, st, pole);
  out.report["exit_code"] = out.exitCode;
  return out.report.dump();
}

double quadrature(const std::string& problemJson, double lambda, const std::string& mode) {
  zetascope::ProblemSpec spec = zetascope::parse_problem_text(problemJson);
  zetascope::ZetaMode m = zetascope::ZetaMode::Abs;
  if (mode == "plus")
    m = zetascope::ZetaMode::Plus;
  else if (mode == "minus")
    m = zetascope::ZetaMode::Minus;
  else if (mode != "abs")
    throw zetascope::input_error("mode must be abs, plus or minus");
  zetascope::QuadratureOptions opts;
  opts.tol = spec.options.tolerance;
  return zetascope::zeta_quadrature(spec.f, spec.phi, lambda, m, opts);
}

}  // namespace

PYBIND11_MODULE(_zetascope, m) {
  m.doc() = "pole analysis of local zeta functions for convenient non-degenerate polynomials";
  m.def("analyze_json", &run_stage, py::arg("problem_json"), py::arg("stage") = "analyze",
        py::arg("pole") = 0,
        "Run the pipeline on a problem description (JSON text) and return the report as JSON "
        "text; the report carries exit_code 0 (ok), 2 (precondition failed) or 3 "
        "(verification failed).");
  m.def("zeta_quadrature", &quadrature, py::arg("problem_json"), py::arg("lambda_"),
        py::arg("mode") = "abs",
        "Numerically integrate |f|^lambda phi (or the signed variants) for the problem's f "
        "and phi.");
}
