// pybind11 bindings for the toeptrace core.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toeptrace/analysis.hpp"
#include "toeptrace/config.hpp"
#include "toeptrace/harness.hpp"
#include "toeptrace/io.hpp"
#include "toeptrace/version.hpp"

namespace py = pybind11;
using namespace toeptrace;

namespace {

QuadratureSpec make_spec(int panels_per_unit, double grading_exponent, double abs_tol,
                         int max_refinements) {
  QuadratureSpec q;
  q.panels_per_unit = panels_per_unit;
  q.grading_exponent = grading_exponent;
  q.abs_tol = abs_tol;
  q.max_refinements = max_refinements;
  q.validate();
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Traces of products of Toeplitz matrices vs their integral limits";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "ToeptraceError");
  py::register_exception<EvalAtSingularity>(m, "EvalAtSingularityError");
  py::register_exception<QuadratureNoConverge>(m, "QuadratureNoConvergeError");
  py::register_exception<NonIntegrableProduct>(m, "NonIntegrableProductError");
  py::register_exception<NonIntegrablePower>(m, "NonIntegrablePowerError");
  py::register_exception<OutOfRegime>(m, "OutOfRegimeError");
  py::register_exception<RegimeViolation>(m, "RegimeViolationError");

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init(&make_spec), py::arg("panels_per_unit") = 4,
           py::arg("grading_exponent") = 1.0, py::arg("abs_tol") = 1e-10,
           py::arg("max_refinements") = 12)
      .def_readwrite("panels_per_unit", &QuadratureSpec::panels_per_unit)
      .def_readwrite("grading_exponent", &QuadratureSpec::grading_exponent)
      .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
      .def_readwrite("max_refinements", &QuadratureSpec::max_refinements);

  py::class_<SingularityProfile>(m, "SingularityProfile")
      .def_readonly("alpha", &SingularityProfile::alpha)
      .def_readonly("m1", &SingularityProfile::m1)
      .def_readonly("m2", &SingularityProfile::m2);

  py::enum_<SymbolKind>(m, "SymbolKind")
      .value("constant", SymbolKind::constant)
      .value("trig_polynomial", SymbolKind::trig_polynomial)
      .value("power_law", SymbolKind::power_law)
      .value("farima", SymbolKind::farima)
      .value("abs_sine", SymbolKind::abs_sine)
      .value("scaled", SymbolKind::scaled)
      .value("sum", SymbolKind::sum);

  py::class_<Symbol>(m, "Symbol")
      .def_static("constant", &Symbol::constant, py::arg("value"))
      .def_static("trig_polynomial", &Symbol::trig_polynomial, py::arg("cos_coeffs"))
      .def_static("cosine", &Symbol::cosine)
      .def_static("power_law", &Symbol::power_law, py::arg("alpha"))
      .def_static("farima", &Symbol::farima, py::arg("sigma2"), py::arg("alpha"))
      .def_static("abs_sine", &Symbol::abs_sine)
      .def_static("scaled", &Symbol::scaled, py::arg("base"), py::arg("factor"))
      .def_static("sum", &Symbol::sum, py::arg("lhs"), py::arg("rhs"))
      .def_static("parse", &parse_symbol_record, py::arg("record"))
      .def("kind", &Symbol::kind)
      .def("eval", &Symbol::eval, py::arg("lam"))
      .def("__call__", &Symbol::eval, py::arg("lam"))
      .def_property_readonly("singularity_alpha", &Symbol::singularity_alpha)
      .def_property_readonly("derivative_envelope", &Symbol::derivative_envelope)
      .def("profile", &Symbol::profile)
      .def("known_nonnegative", &Symbol::known_nonnegative)
      .def("describe", &Symbol::describe)
      .def("__repr__", [](const Symbol& s) { return "Symbol(" + s.describe() + ")"; });

  m.def("theorem3_gamma", &theorem3_gamma, py::arg("alpha1"), py::arg("alpha2"));

  py::class_<FourierTable>(m, "FourierTable")
      .def_readonly("symbol_id", &FourierTable::symbol_id)
      .def_readonly("n", &FourierTable::n)
      .def_readonly("coeffs", &FourierTable::coeffs)
      .def_readonly("err_est", &FourierTable::err_est)
      .def("coeff", &FourierTable::coeff, py::arg("k"));

  m.def("fourier_coeff", &fourier_coeff, py::arg("symbol"), py::arg("k"),
        py::arg("spec") = QuadratureSpec{});
  m.def("fourier_table", &fourier_table, py::arg("symbol"), py::arg("n"),
        py::arg("spec") = QuadratureSpec{});
  m.def("limit_integral", &limit_integral, py::arg("f"), py::arg("g"), py::arg("nu"),
        py::arg("spec") = QuadratureSpec{});
  m.def("phi", &phi, py::arg("f"), py::arg("g"), py::arg("u1"), py::arg("u2"), py::arg("u3"),
        py::arg("spec") = QuadratureSpec{});

  py::class_<HolderEstimate>(m, "HolderEstimate")
      .def_readonly("gamma_hat", &HolderEstimate::gamma_hat)
      .def_readonly("c_hat", &HolderEstimate::c_hat)
      .def_readonly("radii", &HolderEstimate::radii)
      .def_readonly("max_diffs", &HolderEstimate::max_diffs);
  m.def(
      "phi_holder_estimate",
      [](const Symbol& f, const Symbol& g, const std::vector<double>& radii,
         const QuadratureSpec& q) { return phi_holder_estimate(f, g, radii, q); },
      py::arg("f"), py::arg("g"), py::arg("radii"), py::arg("spec") = QuadratureSpec{});

  py::class_<DenseToeplitz>(m, "DenseToeplitz")
      .def_readonly("n", &DenseToeplitz::n)
      .def_readonly("entries", &DenseToeplitz::entries);
  m.def("build_dense", &build_dense, py::arg("table"));

  py::class_<ToeplitzOperator>(m, "ToeplitzOperator")
      .def(py::init<FourierTable>(), py::arg("table"))
      .def_property_readonly("n", &ToeplitzOperator::size)
      .def_property_readonly("embedding_size", &ToeplitzOperator::embedding_size)
      .def_property_readonly("circ_spectrum", &ToeplitzOperator::circ_spectrum)
      .def("matvec", &ToeplitzOperator::apply, py::arg("x"));

  py::enum_<TraceEngine>(m, "TraceEngine")
      .value("dense", TraceEngine::dense)
      .value("matfree", TraceEngine::matfree)
      .value("closed_nu1", TraceEngine::closed_nu1);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("n", &TraceRecord::n)
      .def_readonly("nu", &TraceRecord::nu)
      .def_readonly("s_n_nu", &TraceRecord::s_n_nu)
      .def_readonly("m_nu", &TraceRecord::m_nu)
      .def_readonly("delta", &TraceRecord::delta)
      .def_readonly("engine", &TraceRecord::engine)
      .def_readonly("elapsed", &TraceRecord::elapsed);

  m.def("trace_product_dense", &trace_product_dense, py::arg("f_table"), py::arg("g_table"),
        py::arg("nu"));
  m.def("trace_product_matfree", &trace_product_matfree, py::arg("f_op"), py::arg("g_op"),
        py::arg("nu"));
  m.def("trace_nu1_closed", &trace_nu1_closed, py::arg("f_table"), py::arg("g_table"));
  m.def("delta", &delta, py::arg("f"), py::arg("g"), py::arg("n"), py::arg("nu"),
        py::arg("engine"), py::arg("spec") = QuadratureSpec{});
  m.def("delta_integral_representation", &delta_integral_representation, py::arg("f"),
        py::arg("g"), py::arg("n"), py::arg("spec") = QuadratureSpec{});

  m.def("dirichlet", &dirichlet, py::arg("n"), py::arg("u"));
  m.def("check_dirichlet_bound",
        py::overload_cast<int, double, int>(&check_dirichlet_bound), py::arg("n"),
        py::arg("delta"), py::arg("samples"));

  py::class_<Lemma2Result>(m, "Lemma2Result")
      .def_readonly("value", &Lemma2Result::value)
      .def_readonly("scaled", &Lemma2Result::scaled);
  m.def("lemma2_identity", &lemma2_identity, py::arg("alpha"), py::arg("beta"), py::arg("y"),
        py::arg("spec") = QuadratureSpec{});
  m.def("lemma3_Bi", &lemma3_Bi, py::arg("alpha"), py::arg("beta"), py::arg("i"),
        py::arg("spec") = QuadratureSpec{}, py::arg("level") = 1);

  m.def("modulus_continuity", &modulus_continuity, py::arg("symbol"), py::arg("p"),
        py::arg("delta"), py::arg("grid_size") = 32, py::arg("spec") = QuadratureSpec{});

  py::class_<ModulusCurve>(m, "ModulusCurve")
      .def_readonly("symbol_id", &ModulusCurve::symbol_id)
      .def_readonly("p", &ModulusCurve::p)
      .def_readonly("deltas", &ModulusCurve::deltas)
      .def_readonly("omegas", &ModulusCurve::omegas)
      .def_readonly("fitted_gamma", &ModulusCurve::fitted_gamma)
      .def_readonly("fitted_c", &ModulusCurve::fitted_c);
  m.def(
      "lipschitz_fit",
      [](const Symbol& s, double p, const std::vector<double>& deltas, int grid_size,
         const QuadratureSpec& q) { return lipschitz_fit(s, p, deltas, grid_size, q); },
      py::arg("symbol"), py::arg("p"), py::arg("deltas"), py::arg("grid_size") = 32,
      py::arg("spec") = QuadratureSpec{});

  m.def(
      "lp_inequality_check",
      [](double gamma, double theta, double y0, const std::vector<double>& y_grid,
         const QuadratureSpec& q) { return lp_inequality_check(gamma, theta, y0, y_grid, q); },
      py::arg("gamma"), py::arg("theta"), py::arg("y0"), py::arg("y_grid"),
      py::arg("spec") = QuadratureSpec{});

  py::class_<DivergenceReport>(m, "DivergenceReport")
      .def_readonly("nu", &DivergenceReport::nu)
      .def_readonly("eta", &DivergenceReport::eta)
      .def_readonly("alpha_plus_beta", &DivergenceReport::alpha_plus_beta)
      .def_readonly("truncations", &DivergenceReport::truncations)
      .def_readonly("partial_integrals", &DivergenceReport::partial_integrals)
      .def_readonly("fitted_blowup_exponent", &DivergenceReport::fitted_blowup_exponent)
      .def_readonly("mc_region_estimate", &DivergenceReport::mc_region_estimate);
  m.def(
      "divergence_demo",
      [](int nu, double eta, double ab, const std::vector<double>& truncations,
         const QuadratureSpec& q) { return divergence_demo(nu, eta, ab, truncations, q); },
      py::arg("nu"), py::arg("eta"), py::arg("alpha_plus_beta"), py::arg("truncations"),
      py::arg("spec") = QuadratureSpec{});

  py::enum_<RateFit::Verdict>(m, "Verdict")
      .value("consistent", RateFit::Verdict::consistent)
      .value("faster_than_bound", RateFit::Verdict::faster_than_bound)
      .value("violation", RateFit::Verdict::violation)
      .value("inconclusive", RateFit::Verdict::inconclusive);

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("slope", &RateFit::slope)
      .def_readonly("intercept", &RateFit::intercept)
      .def_readonly("r_squared", &RateFit::r_squared)
      .def_readonly("n_min", &RateFit::n_min)
      .def_readonly("n_max", &RateFit::n_max)
      .def_readonly("verdict", &RateFit::verdict)
      .def_readonly("note", &RateFit::note);
  m.def(
      "fit_rate",
      [](const std::vector<TraceRecord>& records, int drop_head, std::optional<double> gamma,
         double slack) { return fit_rate(records, drop_head, gamma, slack); },
      py::arg("records"), py::arg("drop_head") = 2, py::arg("gamma_theory") = py::none(),
      py::arg("slack") = 0.1);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("f", &ExperimentConfig::f)
      .def_readwrite("g", &ExperimentConfig::g)
      .def_readwrite("nu", &ExperimentConfig::nu)
      .def_readwrite("n_grid", &ExperimentConfig::n_grid)
      .def_readwrite("dense_threshold", &ExperimentConfig::dense_threshold)
      .def_readwrite("quadrature", &ExperimentConfig::quadrature)
      .def_readwrite("theoretical_rate", &ExperimentConfig::theoretical_rate)
      .def_readwrite("rate_provenance", &ExperimentConfig::rate_provenance)
      .def_readwrite("drop_head", &ExperimentConfig::drop_head)
      .def_readwrite("slack", &ExperimentConfig::slack)
      .def_readwrite("workers", &ExperimentConfig::workers)
      .def("validate", &ExperimentConfig::validate);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("record", &SweepRow::record)
      .def_readonly("status", &SweepRow::status);
  m.def(
      "run_sweep", [](const ExperimentConfig& cfg) { return run_sweep(cfg); }, py::arg("config"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "preset", [](const std::string& name) { return preset(name); }, py::arg("name"));
  m.def("preset_list", &preset_list);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("details", &CheckResult::details);
  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("checks", &VerifyReport::checks)
      .def_readonly("all_pass", &VerifyReport::all_pass);
  m.def(
      "verify_all",
      [](bool quick) {
        VerifyOptions opts;
        opts.quick = quick;
        return verify_all(opts);
      },
      py::arg("quick") = false, py::call_guard<py::gil_scoped_release>());
}
