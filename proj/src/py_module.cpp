#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etoc/elliptic.hpp"
#include "etoc/fixedv.hpp"
#include "etoc/form1.hpp"
#include "etoc/form2.hpp"
#include "etoc/model.hpp"
#include "etoc/shooting.hpp"
#include "etoc/verify.hpp"

namespace py = pybind11;
using namespace etoc;

namespace {

Formulation formulation_of(const std::string& name) {
  if (name == "form1") return Formulation::Form1;
  if (name == "form2") return Formulation::Form2;
  if (name == "fixedv") return Formulation::FixedV;
  throw std::invalid_argument("formulation must be form1, form2 or fixedv");
}

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["converged"] = r.converged;
  d["iterations"] = r.iterations;
  d["final_residual_norm"] = r.final_residual_norm;
  d["guess_used"] = r.guess_used;
  d["root"] = r.root;
  d["multistart_attempts"] = r.multistart_attempts;
  d["wall_time"] = r.wall_time;
  return d;
}

py::dict verification_dict(const VerificationReport& r) {
  py::dict d;
  py::list checks;
  for (const CheckResult& c : r.checks) {
    py::dict cd;
    cd["name"] = c.name;
    cd["max_violation"] = c.max_violation;
    cd["tolerance"] = c.tolerance;
    cd["pass"] = c.pass;
    checks.append(cd);
  }
  d["checks"] = checks;
  d["overall"] = r.overall;
  return d;
}

}  // namespace

PYBIND11_MODULE(_etoc, mod) {
  mod.doc() = "Energy-time optimal trajectories for wheeled mobile robots";

  py::class_<EllipticTriple>(mod, "EllipticTriple")
      .def_readonly("sn", &EllipticTriple::sn)
      .def_readonly("cn", &EllipticTriple::cn)
      .def_readonly("dn", &EllipticTriple::dn)
      .def_readonly("am", &EllipticTriple::am);
  mod.def("ellip_k", &ellip_k, py::arg("m"));
  mod.def("ellip_e_complete", &ellip_e_complete, py::arg("m"));
  mod.def("ellip_e_incomplete", &ellip_e_incomplete, py::arg("phi"),
          py::arg("m"));
  mod.def("jacobi", &jacobi, py::arg("u"), py::arg("m"));
  mod.def("jacobi_epsilon", &jacobi_epsilon, py::arg("u"), py::arg("m"));

  py::class_<State>(mod, "State")
      .def_readonly("x", &State::x)
      .def_readonly("y", &State::y)
      .def_readonly("theta", &State::theta);
  py::class_<Control>(mod, "Control")
      .def_readonly("v", &Control::v)
      .def_readonly("omega", &Control::omega);

  py::class_<Problem>(mod, "Problem")
      .def_static(
          "from_cartesian",
          [](double mu, double xf, double yf, const std::string& f) {
            return Problem::from_cartesian(mu, xf, yf, formulation_of(f));
          },
          py::arg("mu"), py::arg("xf"), py::arg("yf"),
          py::arg("formulation") = "form1")
      .def_static(
          "from_polar",
          [](double mu, double r, double alpha, const std::string& f) {
            return Problem::from_polar(mu, r, alpha, formulation_of(f));
          },
          py::arg("mu"), py::arg("r"), py::arg("alpha"),
          py::arg("formulation") = "form1")
      .def_readonly("mu", &Problem::mu)
      .def_readonly("r", &Problem::r)
      .def_readonly("alpha", &Problem::alpha)
      .def("xf", &Problem::xf)
      .def("yf", &Problem::yf);
  mod.def("control_radius", &control_radius, py::arg("mu"));

  py::class_<Form1Params>(mod, "Form1Params")
      .def_readonly("mu", &Form1Params::mu)
      .def_readonly("tf", &Form1Params::tf)
      .def_readonly("q", &Form1Params::q)
      .def_readonly("n", &Form1Params::n)
      .def_readonly("z", &Form1Params::z)
      .def_readonly("phi", &Form1Params::phi)
      .def_readonly("eta", &Form1Params::eta)
      .def_readonly("m", &Form1Params::m)
      .def_readonly("degenerate", &Form1Params::degenerate);
  py::class_<Form2Params>(mod, "Form2Params")
      .def_readonly("mu", &Form2Params::mu)
      .def_readonly("tf", &Form2Params::tf)
      .def_readonly("eps", &Form2Params::eps)
      .def_readonly("k", &Form2Params::k)
      .def_readonly("m", &Form2Params::m)
      .def_readonly("eta", &Form2Params::eta)
      .def_readonly("degenerate", &Form2Params::degenerate);
  py::class_<FixedVParams>(mod, "FixedVParams")
      .def_readonly("mu", &FixedVParams::mu)
      .def_readonly("tf", &FixedVParams::tf)
      .def_readonly("vc", &FixedVParams::vc)
      .def_readonly("m", &FixedVParams::m)
      .def_readonly("kc", &FixedVParams::kc)
      .def_readonly("cc", &FixedVParams::cc)
      .def_readonly("eta", &FixedVParams::eta)
      .def_readonly("degenerate", &FixedVParams::degenerate);

  mod.def(
      "solve_form1",
      [](const Problem& prob, std::uint64_t seed) {
        auto [p, rep] = form1_solve(prob, {0.0, 0.0}, seed);
        return py::make_tuple(p, report_dict(rep));
      },
      py::arg("problem"), py::arg("seed") = 42);
  mod.def(
      "solve_form2",
      [](const Problem& prob, std::uint64_t seed) {
        auto [p, rep] = form2_solve(prob, {0.0, 0.0}, seed);
        return py::make_tuple(p, report_dict(rep));
      },
      py::arg("problem"), py::arg("seed") = 42);
  mod.def(
      "solve_fixedv",
      [](const Problem& prob, std::uint64_t seed) {
        auto [p, rep] = fixedv_solve(prob, {0.0, 0.0, 0.0}, seed);
        return py::make_tuple(p, report_dict(rep));
      },
      py::arg("problem"), py::arg("seed") = 42);

  mod.def("eval_state_form1", &form1_eval_state);
  mod.def("eval_control_form1", &form1_eval_control);
  mod.def("eval_costates_form1", &form1_eval_costates);
  mod.def("eval_state_form2", &form2_eval_state);
  mod.def("eval_control_form2", &form2_eval_control);
  mod.def("eval_costates_form2", &form2_eval_costates);
  mod.def("eval_state_fixedv", &fixedv_eval_state);
  mod.def("eval_control_fixedv", &fixedv_eval_control);
  mod.def("eval_costates_fixedv", &fixedv_eval_costates);

  mod.def(
      "verify_form1",
      [](const Form1Params& p, const Problem& prob, int n) {
        return verification_dict(check_all(p, prob, n));
      },
      py::arg("params"), py::arg("problem"), py::arg("n_samples") = 101);
  mod.def(
      "verify_form2",
      [](const Form2Params& p, const Problem& prob, int n) {
        return verification_dict(check_all(p, prob, n));
      },
      py::arg("params"), py::arg("problem"), py::arg("n_samples") = 101);
  mod.def(
      "verify_fixedv",
      [](const FixedVParams& p, const Problem& prob, int n) {
        return verification_dict(check_all(p, prob, n));
      },
      py::arg("params"), py::arg("problem"), py::arg("n_samples") = 101);
  mod.def(
      "cross_check",
      [](const Problem& prob, std::uint64_t seed) {
        return verification_dict(cross_check(prob, seed));
      },
      py::arg("problem"), py::arg("seed") = 42);

  mod.def(
      "solve_shooting",
      [](const Problem& prob, std::array<double, 4> guess, int n_steps) {
        auto [root, rep] = solve_shooting(prob, guess, n_steps);
        return py::make_tuple(root, report_dict(rep));
      },
      py::arg("problem"), py::arg("guess"), py::arg("n_steps") = 10000);
}
