#pragma once

#include <map>
#include <string>
#include <vector>

#include "conedet/eigenfn.hpp"

namespace conedet {

enum class DetMethod { ClosedForm, FiniteT, Wronskian, Regularized };

std::string to_string(DetMethod m);

struct DeterminantReport {
  double value = 0.0;
  DetMethod method = DetMethod::ClosedForm;
  int k0 = 0;
  bool log_singular = false;  // j0 != q0: value has the s log s defect removed
  std::string label = "determinant";
  std::vector<double> t_values;
  std::map<std::string, double> diagnostics;
};

// exp(-zeta'(0)) from F(0) and the characteristic values; kernel must be trivial.
DeterminantReport det_zeta_closed_form(const Operator& op);

// The same quantity from F(it) and the semicircle integral of
// log(mu) F'/F over the right half plane at radius t.
DeterminantReport det_zeta_finite_t(const Operator& op, double t_abs);

// Kernel case: F/mu^{2 k0} extrapolated to 0. Requires j0 = q0.
DeterminantReport det_zeta_regularized(const Operator& op);

// Scalar oracle on (0, 1] with the Friedrichs-type tip condition, any nu >= 0.
double det_wronskian_scalar(double nu, RegularBC bc);

struct ZetaEstimate {
  cplx value;
  double error = 0.0;
  int roots_used = 0;
  double t = 0.0;  // contour estimator only
  double X = 0.0;  // contour estimator only
};

// Sum over the computed spectrum plus a fitted tail.
ZetaEstimate zeta_direct(const Spectrum& sp, double s);
// Contour representation along the imaginary axis and a small semicircle.
ZetaEstimate zeta_contour(const Operator& op, double s);

}  // namespace conedet
