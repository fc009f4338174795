#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <string>

#include "conedet/errors.hpp"
#include "conedet/specialfn.hpp"

namespace conedet::detail {

// Adaptive Gauss-Kronrod on [a, b] for real or complex integrands.
// Throws NumericalError when the error estimate stays above the target.
template <class F>
auto integrate(F&& f, double a, double b, double rel_tol, double abs_floor,
               const char* what, double* err_out = nullptr) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0, l1 = 0.0;
  auto val = gauss_kronrod<double, 31>::integrate(f, a, b, 18, rel_tol, &err, &l1);
  if (err_out) *err_out = err;
  const double target = std::max(rel_tol * std::max(std::abs(val), l1) * 10.0,
                                 abs_floor);
  if (!(err <= target) || !std::isfinite(std::abs(val)))
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", err);
    throw NumericalError(std::string(what) + ": quadrature did not converge (error " +
                         buf + ")");
  }
  return val;
}

}  // namespace conedet::detail
