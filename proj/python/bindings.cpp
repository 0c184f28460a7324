#include "minmax/harness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace minmax;

namespace {

SolverConfig make_config(const SaddleProblem& problem, int T,
                         std::optional<double> gamma, std::optional<int> k,
                         int record_every, double inner_early_exit,
                         std::optional<Vector> initial_point) {
  SolverConfig c;
  c.T = T;
  c.gamma = gamma;
  c.k_rule = k ? KRule::fixed(*k) : KRule::automatic(problem.set());
  c.record_every = record_every;
  c.inner_early_exit = inner_early_exit;
  c.initial_point = std::move(initial_point);
  return c;
}

// Rows are iterates z_0..z_T.
Matrix stack(const std::vector<Vector>& zs) {
  Matrix out(static_cast<Index>(zs.size()), zs.empty() ? 0 : zs[0].size());
  for (std::size_t i = 0; i < zs.size(); ++i)
    out.row(static_cast<Index>(i)) = zs[i].transpose();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Convex-concave min-max solvers";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  py::class_<FeasibleSet>(m, "FeasibleSet")
      .def_static("unconstrained", &FeasibleSet::unconstrained, py::arg("dim"))
      .def_static("ball", &FeasibleSet::ball, py::arg("center"), py::arg("radius"))
      .def_static("box", &FeasibleSet::box, py::arg("lower"), py::arg("upper"))
      .def_static("simplex", &FeasibleSet::simplex, py::arg("dim"))
      .def_static("product", &FeasibleSet::product, py::arg("blocks"))
      .def_static("parse", [](const std::string& text) { return parse_set(text); })
      .def_property_readonly("dim", &FeasibleSet::dim)
      .def_property_readonly("bounded", &FeasibleSet::bounded)
      .def("describe", &FeasibleSet::describe)
      .def("__repr__", &FeasibleSet::describe);

  m.def("project", &project, py::arg("set"), py::arg("z"));
  m.def("diameter", &diameter, py::arg("set"));

  py::class_<SaddleProblem>(m, "SaddleProblem")
      .def_property_readonly("name", &SaddleProblem::name)
      .def_property_readonly("dim", &SaddleProblem::dim)
      .def_property_readonly("n", [](const SaddleProblem& p) { return p.split().n; })
      .def_property_readonly("lipschitz", &SaddleProblem::lipschitz)
      .def_property_readonly("set", &SaddleProblem::set)
      .def_property_readonly("saddle", &SaddleProblem::saddle)
      .def_property_readonly("initial_point", &SaddleProblem::initial_point)
      .def("value", &SaddleProblem::value, py::arg("z"))
      .def("grad_x", &SaddleProblem::grad_x, py::arg("z"))
      .def("grad_y", &SaddleProblem::grad_y, py::arg("z"))
      .def("operator", &SaddleProblem::joint_operator, py::arg("z"))
      .def("__repr__", [](const SaddleProblem& p) {
        return "<SaddleProblem " + p.name() + " on " + p.set().describe() + ">";
      });

  m.def("zoo_names", &zoo_names);
  m.def("zoo_problem", &zoo_problem, py::arg("name"));
  m.def("make_bilinear", &make_bilinear, py::arg("A"), py::arg("set"),
        py::arg("name") = "bilinear");
  m.def("make_quadratic_saddle", &make_quadratic_saddle, py::arg("P"),
        py::arg("A"), py::arg("Q"), py::arg("set"), py::arg("name") = "quadratic");

  py::class_<RunTrace>(m, "RunTrace")
      .def_property_readonly("solver", &RunTrace::solver_name)
      .def_property_readonly("completed", [](const RunTrace& t) {
        return t.status() == RunTrace::Status::Completed;
      })
      .def_property_readonly("error", &RunTrace::error)
      .def_readonly("gamma", &RunTrace::gamma)
      .def_readonly("k", &RunTrace::k)
      .def_readonly("warnings", &RunTrace::warnings)
      .def_property_readonly("steps", &RunTrace::steps)
      .def_property_readonly("iterates",
                             [](const RunTrace& t) { return stack(t.all_iterates()); })
      .def_property_readonly("inner_iters", &RunTrace::inner_iters)
      .def_property_readonly("grad_calls", &RunTrace::grad_calls)
      .def_property_readonly("step_norms", &RunTrace::step_norms)
      .def_property_readonly("initial", &RunTrace::initial)
      .def_property_readonly("last", &RunTrace::last);

  m.def(
      "run",
      [](const std::string& solver, const SaddleProblem& problem, int T,
         std::optional<double> gamma, std::optional<int> k, int record_every,
         double inner_early_exit, std::optional<Vector> initial_point) {
        const SolverConfig c = make_config(problem, T, gamma, k, record_every,
                                           inner_early_exit, std::move(initial_point));
        py::gil_scoped_release release;
        return run_solver(solver, problem, c);
      },
      py::arg("solver"), py::arg("problem"), py::arg("T") = 100,
      py::arg("gamma") = py::none(), py::arg("k") = py::none(),
      py::arg("record_every") = 1, py::arg("inner_early_exit") = 1e-14,
      py::arg("initial_point") = py::none(),
      "Runs ceg, eg, ogda or pp. k = None picks the automatic rule for the set.");

  m.def(
      "pp_oracle",
      [](const SaddleProblem& p, const Vector& z, double gamma,
         std::optional<double> tol) { return pp_oracle(p, z, gamma, tol); },
      py::arg("problem"), py::arg("z"), py::arg("gamma"), py::arg("tol") = py::none());
  m.def(
      "ceg_inner",
      [](const SaddleProblem& p, const Vector& z, double gamma, int k,
         double delta) { return ceg_inner(p, z, gamma, k, delta).w; },
      py::arg("problem"), py::arg("z"), py::arg("gamma"), py::arg("k"),
      py::arg("delta_inner") = 0.0);

  py::class_<GapReport>(m, "GapReport")
      .def_readonly("gap", &GapReport::gap)
      .def_readonly("comparator_radius", &GapReport::comparator_radius)
      .def_property_readonly("method",
                             [](const GapReport& g) { return to_string(g.method); });

  m.def("time_average", &time_average, py::arg("trace"));
  m.def("duality_gap", &duality_gap, py::arg("problem"), py::arg("z_hat"),
        py::arg("seed") = 0);
  m.def("restricted_gap", &restricted_gap, py::arg("problem"), py::arg("z_hat"),
        py::arg("center"), py::arg("radius"), py::arg("seed") = 0);
  m.def("operator_residual", &operator_residual, py::arg("problem"), py::arg("z"));
  m.def(
      "regret_sum",
      [](const RunTrace& t, const SaddleProblem& p, const Vector& z) {
        return regret_sum(t, p, z);
      },
      py::arg("trace"), py::arg("problem"), py::arg("comparator"));

  py::class_<BoundCheckResult>(m, "BoundCheck")
      .def_readonly("bound_name", &BoundCheckResult::bound_name)
      .def_readonly("problem", &BoundCheckResult::problem)
      .def_readonly("solver", &BoundCheckResult::solver)
      .def_readonly("lhs", &BoundCheckResult::lhs)
      .def_readonly("rhs", &BoundCheckResult::rhs)
      .def_readonly("slack", &BoundCheckResult::slack)
      .def_readonly("passed", &BoundCheckResult::passed)
      .def_readonly("skipped", &BoundCheckResult::skipped)
      .def_readonly("reason", &BoundCheckResult::reason)
      .def("__repr__", [](const BoundCheckResult& c) {
        return "<BoundCheck " + c.bound_name + (c.passed ? " passed>" : " FAILED>");
      });

  m.def("verify_bounds", &verify_bounds, py::arg("trace"), py::arg("problem"),
        py::arg("seed") = 0);

  m.def(
      "run_experiment",
      [](const std::string& config_text, std::optional<std::string> output) {
        ExperimentConfig c = parse_config(config_text);
        if (output) c.output = *output;
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        py::dict out;
        out["files"] = r.files;
        out["checks"] = r.checks();
        out["all_checks_passed"] = r.all_checks_passed();
        out["any_cell_failed"] = r.any_cell_failed();
        return out;
      },
      py::arg("config_text"), py::arg("output") = py::none(),
      "Parses a key = value config, runs every cell and writes the outputs.");
}
