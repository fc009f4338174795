#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conedet/cone.hpp"
#include "conedet/detcalc.hpp"
#include "conedet/errors.hpp"

namespace py = pybind11;
using namespace conedet;

namespace {

void bind_errors(py::module_& m) {
  // translators run newest first, so the base classes go in first
  auto& base = py::register_exception<Error>(m, "ConedetError");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  auto& numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<KernelError>(m, "KernelError", numerical.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", numerical.ptr());
}

void bind_boundary(py::module_& m) {
  py::class_<RegularBC>(m, "RegularBC")
      .def_static("dirichlet", &RegularBC::dirichlet)
      .def_static("robin", &RegularBC::robin, py::arg("alpha"))
      .def_property_readonly("is_robin", &RegularBC::is_robin)
      .def_readonly("alpha", &RegularBC::alpha)
      .def("__repr__", [](const RegularBC& b) {
        return b.is_robin() ? "RegularBC.robin(" + std::to_string(b.alpha) + ")" : std::string("RegularBC.dirichlet()");
      });

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def(py::init([](double R, std::vector<double> lambdas, int q0, CMatrix A, CMatrix B, RegularBC bc) {
             OperatorSpec s;
             s.R = R;
             s.lambdas = std::move(lambdas);
             s.q0 = q0;
             s.A = std::move(A);
             s.B = std::move(B);
             s.bc = bc;
             return s;
           }),
           py::arg("R"), py::arg("lambdas"), py::arg("q0"), py::arg("A"), py::arg("B"), py::arg("bc"))
      .def_static("scalar", &OperatorSpec::scalar, py::arg("nu"), py::arg("a"), py::arg("b"), py::arg("bc"),
                  py::arg("R") = 1.0)
      .def_static("diagonal", &OperatorSpec::diagonal, py::arg("nus"), py::arg("a"), py::arg("b"), py::arg("bc"),
                  py::arg("R") = 1.0)
      .def_readonly("R", &OperatorSpec::R)
      .def_readonly("lambdas", &OperatorSpec::lambdas)
      .def_readonly("q0", &OperatorSpec::q0)
      .def_readonly("A", &OperatorSpec::A)
      .def_readonly("B", &OperatorSpec::B)
      .def_property_readonly("q", &OperatorSpec::q);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("violations", &ValidationReport::violations)
      .def_readonly("messages", &ValidationReport::messages)
      .def_property_readonly("ok", &ValidationReport::ok);
  m.def("validate", &validate, py::arg("spec"));

  py::class_<CharacteristicValues>(m, "CharacteristicValues")
      .def_readonly("alpha0", &CharacteristicValues::alpha0)
      .def_readonly("j0", &CharacteristicValues::j0)
      .def_readonly("a0", &CharacteristicValues::a0);

  py::class_<Operator>(m, "Operator")
      .def(py::init<OperatorSpec>(), py::arg("spec"))
      .def_property_readonly("spec", &Operator::spec)
      .def_property_readonly("q", &Operator::q)
      .def_property_readonly("nus", &Operator::nus)
      .def_property_readonly("characteristic", &Operator::characteristic)
      .def_property_readonly("phase", &Operator::phase);

  py::class_<ScalarClass>(m, "ScalarClass")
      .def_property_readonly("regime", [](const ScalarClass& c) { return to_string(c.regime); })
      .def_readonly("p", &ScalarClass::p)
      .def_readonly("nu", &ScalarClass::nu);
  m.def("classify_scalar", &classify_scalar, py::arg("lam"));
}

void bind_eigenfn(py::module_& m) {
  m.def("eval_F", &eval_F, py::arg("op"), py::arg("mu"));
  m.def("eval_F_imag", &eval_F_imag, py::arg("op"), py::arg("x"));
  m.def("eval_F_at_zero", &eval_F_at_zero, py::arg("op"));
  m.def("kernel_order", &kernel_order, py::arg("op"));
  m.def("asymptotic_relative_error", &asymptotic_relative_error, py::arg("op"), py::arg("x"));

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("positive", &Spectrum::positive)
      .def_readonly("negative", &Spectrum::negative)
      .def_readonly("certified", &Spectrum::certified)
      .def_readonly("suspect", &Spectrum::suspect)
      .def_readonly("notes", &Spectrum::notes);
  m.def("find_spectrum", &find_spectrum, py::arg("op"), py::arg("mu_max"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ContourDecay>(m, "ContourDecay")
      .def_readonly("a", &ContourDecay::a)
      .def_readonly("total", &ContourDecay::total)
      .def_readonly("segment", &ContourDecay::segment)
      .def_readonly("arcs", &ContourDecay::arcs);
  m.def("verify_contour_decay", &verify_contour_decay, py::arg("op"), py::arg("s"), py::arg("a_list"),
        py::arg("theta") = kPi / 4.0, py::call_guard<py::gil_scoped_release>());
}

void bind_detcalc(py::module_& m) {
  py::class_<DeterminantReport>(m, "DeterminantReport")
      .def_readonly("value", &DeterminantReport::value)
      .def_property_readonly("method", [](const DeterminantReport& r) { return to_string(r.method); })
      .def_readonly("k0", &DeterminantReport::k0)
      .def_readonly("log_singular", &DeterminantReport::log_singular)
      .def_readonly("label", &DeterminantReport::label)
      .def_readonly("diagnostics", &DeterminantReport::diagnostics);
  m.def("det_zeta_closed_form", &det_zeta_closed_form, py::arg("op"));
  m.def("det_zeta_finite_t", &det_zeta_finite_t, py::arg("op"), py::arg("t_abs"));
  m.def("det_zeta_regularized", &det_zeta_regularized, py::arg("op"));
  m.def("det_wronskian_scalar", &det_wronskian_scalar, py::arg("nu"), py::arg("bc"));

  py::class_<ZetaEstimate>(m, "ZetaEstimate")
      .def_readonly("value", &ZetaEstimate::value)
      .def_readonly("error", &ZetaEstimate::error)
      .def_readonly("roots_used", &ZetaEstimate::roots_used);
  m.def("zeta_direct", &zeta_direct, py::arg("spectrum"), py::arg("s"));
  m.def("zeta_contour", &zeta_contour, py::arg("op"), py::arg("s"), py::call_guard<py::gil_scoped_release>());
}

void bind_cone(py::module_& m) {
  py::class_<ConeSpec>(m, "ConeSpec")
      .def(py::init([](int m_, const std::map<int, std::vector<std::pair<double, int>>>& ccl,
                       const std::map<int, int>& harmonic, double R, double cutoff) {
             ConeSpec c;
             c.m = m_;
             c.ccl_spectra = ccl;
             c.harmonic_dims = harmonic;
             c.R = R;
             c.spectral_cutoff = cutoff;
             return c;
           }),
           py::arg("m"), py::arg("ccl_spectra"), py::arg("harmonic_dims"), py::arg("R") = 1.0,
           py::arg("spectral_cutoff") = 4.0);

  py::class_<ComponentFactor>(m, "ComponentFactor")
      .def_property_readonly("source", [](const ComponentFactor& f) { return to_string(f.source); })
      .def_readonly("nu", &ComponentFactor::nu)
      .def_readonly("multiplicity", &ComponentFactor::multiplicity)
      .def_readonly("factor", &ComponentFactor::factor);
  m.def("cone_determinant", &cone_determinant, py::arg("cone"), py::arg("k"));
  m.def("component_report", &component_report, py::arg("cone"), py::arg("k"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "zeta-regularized determinants of regular-singular Sturm-Liouville operators";
  bind_errors(m);
  bind_boundary(m);
  bind_eigenfn(m);
  bind_detcalc(m);
  bind_cone(m);
}
