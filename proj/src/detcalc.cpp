#include "conedet/detcalc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conedet/errors.hpp"
#include "quad.hpp"

namespace conedet {

namespace {

cplx sign_power(int p) { return p % 2 ? -1.0 : 1.0; }

bool log_singular(const Operator& op) {
  return op.characteristic().j0 != op.q0();
}

// Winding-number guard plus a margin against roots just outside.
void require_clear_disk(const Operator& op, double t, int k0) {
  const int z = zeros_inside(op, t);
  if (z != 2 * k0) {
    std::ostringstream os;
    os << "contour radius " << t << " encloses " << (z - 2 * k0)
       << " root(s) of F; choose a smaller t";
    throw NumericalError(os.str());
  }
}

}  // namespace

std::string to_string(DetMethod m) {
  switch (m) {
    case DetMethod::ClosedForm: return "closed_form";
    case DetMethod::FiniteT: return "finite_t";
    case DetMethod::Wronskian: return "wronskian";
    case DetMethod::Regularized: return "regularized";
  }
  return "unknown";
}

DeterminantReport det_zeta_closed_form(const Operator& op) {
  const int k0 = kernel_order(op);
  if (k0 != 0)
    throw KernelError("det_zeta_closed_form: F(0) = 0 (kernel order " +
                      std::to_string(k0) + "); use the regularized method");
  const AsymptoticModel m = asymptotic_model(op);
  const cplx f0 = eval_F_at_zero(op);
  const cplx v = f0 * std::pow(-2.0 * std::exp(kEulerGamma), m.log_power) / m.C;
  DeterminantReport rep;
  rep.value = v.real();
  rep.method = DetMethod::ClosedForm;
  rep.log_singular = log_singular(op);
  if (rep.log_singular) rep.label = "defect-subtracted determinant";
  rep.diagnostics["imag_residue"] = std::abs(v.imag()) / std::max(std::abs(v), 1e-300);
  return rep;
}

DeterminantReport det_zeta_finite_t(const Operator& op, double t) {
  if (!(t > 0.0)) throw DomainError("det_zeta_finite_t: t must be positive");
  const int k0 = kernel_order(op);
  if (k0 != 0) throw KernelError("det_zeta_finite_t: kernel is nontrivial");
  require_clear_disk(op, t, 0);
  const AsymptoticModel m = asymptotic_model(op);
  const cplx I(0.0, 1.0);
  const cplx ft = eval_F_imag(op, t);
  // Semicircle from i t to -i t through the right half plane, principal log.
  auto integrand = [&](double ph) {
    const cplx mu = std::polar(t, ph);
    return cplx(std::log(t), ph) * log_derivative_F(op, mu) * I * mu;
  };
  double qerr = 0.0;
  const cplx semi = -detail::integrate(integrand, -kPi / 2.0, kPi / 2.0, 1e-10, 1e-13,
                                       "det_zeta_finite_t", &qerr);
  const cplx Q = -std::log(ft / (m.C * sign_power(m.log_power))) +
                 double(-m.log_power) * (kEulerGamma + std::log(2.0)) -
                 semi / (kPi * I);
  const cplx v = std::exp(-Q);
  DeterminantReport rep;
  rep.value = v.real();
  rep.method = DetMethod::FiniteT;
  rep.log_singular = log_singular(op);
  if (rep.log_singular) rep.label = "defect-subtracted determinant";
  rep.t_values = {t};
  rep.diagnostics["imag_residue"] = std::abs(v.imag()) / std::max(std::abs(v), 1e-300);
  rep.diagnostics["quadrature_error"] = qerr;
  return rep;
}

DeterminantReport det_zeta_regularized(const Operator& op) {
  const int k0 = kernel_order(op);
  if (k0 == 0) throw KernelError("det_zeta_regularized: kernel is trivial; use the closed form");
  if (log_singular(op))
    throw UnsupportedError("det_zeta_regularized: nontrivial kernel with j0 != q0");
  const double x[3] = {1e-2, 1e-3, 1e-4};  // mu^2
  cplx g[3];
  for (int i = 0; i < 3; ++i) g[i] = eval_F(op, std::sqrt(x[i])) / std::pow(x[i], k0);
  // Neville extrapolation to mu^2 = 0.
  const cplx p01 = (g[1] * x[0] - g[0] * x[1]) / (x[0] - x[1]);
  const cplx p12 = (g[2] * x[1] - g[1] * x[2]) / (x[1] - x[2]);
  const cplx p012 = (p12 * x[0] - p01 * x[2]) / (x[0] - x[2]);
  const double spread = std::abs(p012 - p12) / std::abs(p012);
  if (!(spread <= 1e-8)) {
    std::ostringstream os;
    os << "det_zeta_regularized: extrapolation unstable (relative change " << spread << ")";
    throw NumericalError(os.str());
  }
  const AsymptoticModel m = asymptotic_model(op);
  const cplx Ct = sign_power(k0) * m.C;
  const cplx v = p012 / Ct;
  DeterminantReport rep;
  rep.value = v.real();
  rep.method = DetMethod::Regularized;
  rep.k0 = k0;
  rep.diagnostics["F_tilde_0_re"] = (p012 * std::conj(op.phase())).real();
  rep.diagnostics["C_tilde_re"] = (Ct * std::conj(op.phase())).real();
  rep.diagnostics["extrapolation_spread"] = spread;
  rep.diagnostics["imag_residue"] = std::abs(v.imag()) / std::max(std::abs(v), 1e-300);
  return rep;
}

double det_wronskian_scalar(double nu, RegularBC bc) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("det_wronskian_scalar: nu must be >= 0");
  const double W = bc.is_robin() ? bc.alpha + nu + 0.5 : 1.0;
  if (std::abs(W) < 1e-14)
    throw KernelError("det_wronskian_scalar: alpha = -nu - 1/2 gives a kernel");
  return std::sqrt(2.0 * kPi) * W / (std::pow(2.0, nu) * specialfn::gamma_fn(1.0 + nu));
}

ZetaEstimate zeta_direct(const Spectrum& sp, double s) {
  if (!(s > 0.5)) throw DomainError("zeta_direct: s must exceed 1/2");
  const auto& mu = sp.positive;
  const int n = static_cast<int>(mu.size());
  const int need = s <= 1.0 ? 100 : 20;
  if (n < need)
    throw NumericalError("zeta_direct: " + std::to_string(n) + " roots, need at least " +
                         std::to_string(need) + " for the tail estimate");
  cplx sum = 0.0;
  for (int k = n - 1; k >= 0; --k) sum += std::pow(mu[k], -2.0 * s);
  for (double x : sp.negative) sum += std::pow(x, -2.0 * s) * std::polar(1.0, -kPi * s);

  // mu_k ~ a k + b over the last fifth of the list.
  const int k_lo = n - std::max(5, n / 5);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int cnt = n - k_lo;
  for (int i = k_lo; i < n; ++i) {
    const double k = i + 1.0;
    sx += k; sy += mu[i]; sxx += k * k; sxy += k * mu[i];
  }
  const double a = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double b = (sy - a * sx) / cnt;
  double resid = 0.0;
  for (int i = k_lo; i < n; ++i) resid = std::max(resid, std::abs(mu[i] - (a * (i + 1.0) + b)));
  const double edge = a * (n + 0.5) + b;
  const double tail = std::pow(edge, 1.0 - 2.0 * s) / (a * (2.0 * s - 1.0));
  const double deriv = 2.0 * s * a * std::pow(edge, -2.0 * s - 1.0);
  ZetaEstimate z;
  z.value = sum + tail;
  z.error = deriv / 24.0 + std::abs(tail) * (2.0 * s - 1.0) * resid / edge +
            1e-15 * std::abs(sum);
  z.roots_used = n;
  return z;
}

ZetaEstimate zeta_contour(const Operator& op, double s) {
  if (!(s > 0.5)) throw DomainError("zeta_contour: s must exceed 1/2");
  Spectrum neg;
  find_negative_spectrum(op, &neg);
  if (!neg.negative.empty())
    throw UnsupportedError("zeta_contour: negative eigenvalues present");
  const int k0 = kernel_order(op);
  double t = 0.5;
  for (int i = 0; zeros_inside(op, t) != 2 * k0; ++i) {
    if (i == 12) throw NumericalError("zeta_contour: no root-free disk found");
    t /= 2.0;
  }
  t /= 2.0;  // keep a margin from the nearest root
  const AsymptoticModel m = asymptotic_model(op);
  const double R = op.R();
  const int q = op.q();
  const double X = std::min(200.0, 600.0 / (q * R));
  const cplx I(0.0, 1.0);
  ZetaEstimate z;
  z.t = t;
  z.X = X;

  // Imaginary-axis part, absent at integer s.
  cplx axis = 0.0;
  const double sn = std::sin(kPi * s);
  if (std::abs(s - std::round(s)) > 1e-14) {
    auto f = [&](double x) {
      return std::pow(x, -2.0 * s) * (log_derivative_F_imag(op, x) - 2.0 * k0 / x);
    };
    double e1 = 0.0;
    double body = 0.0;
    double a = t;
    // Split geometrically so the x^{-2s} weight is resolved near t.
    while (a < X) {
      const double b = std::min(X, a * 4.0);
      double e = 0.0;
      body += detail::integrate(f, a, b, 1e-9, 1e-13, "zeta_contour axis", &e);
      e1 += e;
      a = b;
    }
    const double Et = m.exponent - 2.0 * k0;
    double tail = q * R * std::pow(X, 1.0 - 2.0 * s) / (2.0 * s - 1.0) +
                  Et * std::pow(X, -2.0 * s) / (2.0 * s);
    if (m.log_power != 0) {
      const double u0 = std::log(X);
      auto g = [&](double u) { return std::exp(-2.0 * s * (u - u0)) / (u - kGammaTilde); };
      tail += m.log_power * std::pow(X, -2.0 * s) *
              detail::integrate(g, u0, u0 + 40.0 / s, 1e-12, 1e-16, "zeta_contour tail");
    }
    // Size of the first neglected term of the large-x model.
    const double model_slope = q * R + Et / X;
    const double miss = std::abs(log_derivative_F_imag(op, X) - 2.0 * k0 / X - model_slope);
    z.error += std::abs(sn / kPi) * (e1 + miss * std::pow(X, 1.0 - 2.0 * s) / (2.0 * s));
    axis = sn / kPi * (body + tail);
  }

  auto h = [&](double ph) {
    const cplx mu = std::polar(t, ph);
    return std::pow(mu, -2.0 * s) * (log_derivative_F(op, mu) - 2.0 * k0 / mu) * mu;
  };
  double e2 = 0.0;
  const cplx semi = -detail::integrate(h, -kPi / 2.0, kPi / 2.0, 1e-10, 1e-14,
                                       "zeta_contour semicircle", &e2) / (2.0 * kPi);
  z.value = axis + semi;
  z.error += e2 / (2.0 * kPi) + 1e-12 * std::abs(z.value);
  return z;
}

}  // namespace conedet
