#include "conedet/eigenfn.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <sstream>

#include "conedet/errors.hpp"
#include "quad.hpp"

namespace conedet {

namespace {

using lcplx = std::complex<long double>;
using specialfn::bessel_i;
using specialfn::bessel_j;
using specialfn::bessel_j_deriv;
using specialfn::bessel_k;
using specialfn::gamma_fn;

struct Rows {
  std::vector<cplx> plus, minus;
};

// E_s(w) = Gamma(1+s) (w/2)^{-s} J_s(w), entire in w^2, and dE/dw.
void entire_E(double s, cplx w, cplx* E, cplx* Ep) {
  const lcplx W(w);
  const lcplx q = -W * W / 4.0L;
  lcplx t = 1.0L, sum = 1.0L;
  lcplx v = 1.0L / (1.0L + s), vs = v;
  const long double half = std::abs(W) / 2.0L;
  for (int k = 1; k < 400; ++k) {
    t *= q / (static_cast<long double>(k) * (k + s));
    v *= q / (static_cast<long double>(k) * (s + 1.0L + k));
    sum += t;
    vs += v;
    if (k > half && std::abs(t) <= 1e-21L * std::abs(sum) &&
        std::abs(v) <= 1e-21L * std::abs(vs))
      break;
  }
  *E = cplx(sum);
  *Ep = cplx(-(W / 2.0L) * vs);
}

bool use_series(cplx w) {
  if (w.imag() == 0.0 && w.real() > 8.0) return false;
  return std::abs(w) <= specialfn::kSeriesRadius;
}

Rows lower_rows(const Operator& op, cplx mu) {
  if (mu.real() < 0.0 || (mu.real() == 0.0 && mu.imag() < 0.0)) mu = -mu;
  const double R = op.R(), sR = std::sqrt(R), logR = std::log(R);
  const double kap = op.kappa();
  const bool robin = op.bc().is_robin();
  const cplx w = mu * R;
  const int q = op.q();
  Rows r;
  r.plus.resize(q);
  r.minus.resize(q);
  for (int l = 0; l < q; ++l) {
    const double nu = op.nus()[l];
    if (nu == 0.0) {
      const cplx J0 = bessel_j(0.0, w), J1 = bessel_j(1.0, w);
      const cplx S = specialfn::log_series(w);
      const cplx Sp = specialfn::log_series_deriv(w);
      const cplx Jm = logR * J0 - S;
      const cplx dJm = J0 / R - logR * mu * J1 - mu * Sp;
      if (robin) {
        r.plus[l] = kap * J0 - mu * sR * J1;
        r.minus[l] = kap * Jm + sR * dJm;
      } else {
        r.plus[l] = sR * J0;
        r.minus[l] = sR * Jm;
      }
      continue;
    }
    for (int sign : {1, -1}) {
      const double s = sign * nu;
      cplx g, gR;
      if (use_series(w)) {
        cplx E, Ep;
        entire_E(s, w, &E, &Ep);
        const double Rs = std::pow(R, s);
        g = Rs * E;
        gR = s * Rs / R * E + Rs * mu * Ep;
      } else {
        const cplx c = std::pow(2.0, s) * gamma_fn(1.0 + s) * std::pow(mu, -s);
        g = c * bessel_j(s, w);
        gR = c * mu * bessel_j_deriv(s, w);
      }
      const cplx val = robin ? kap * g + sR * gR : sR * g;
      (sign > 0 ? r.plus : r.minus)[l] = val;
    }
  }
  return r;
}

Rows imag_rows(const Operator& op, double x) {
  const double R = op.R(), sR = std::sqrt(R);
  const double kap = op.kappa();
  const bool robin = op.bc().is_robin();
  const double y = x * R;
  const int q = op.q();
  Rows r;
  r.plus.resize(q);
  r.minus.resize(q);
  for (int l = 0; l < q; ++l) {
    const double nu = op.nus()[l];
    if (nu == 0.0) {
      const double I0 = bessel_i(0.0, y), I1 = bessel_i(1.0, y);
      const double K0 = bessel_k(0.0, y), K1 = bessel_k(1.0, y);
      const double L = std::log(x) - kGammaTilde;
      if (robin) {
        r.plus[l] = kap * I0 + sR * x * I1;
        r.minus[l] = kap * (-L * I0 - K0) + sR * (-L * x * I1 + x * K1);
      } else {
        r.plus[l] = sR * I0;
        r.minus[l] = sR * (-L * I0 - K0);
      }
      continue;
    }
    for (int sign : {1, -1}) {
      const double s = sign * nu;
      const double c = std::pow(2.0, s) * gamma_fn(1.0 + s);
      double val;
      if (robin) {
        val = c * ((kap - s / sR) * std::pow(x, -s) * bessel_i(s, y) +
                   sR * std::pow(x, 1.0 - s) * bessel_i(s - 1.0, y));
      } else {
        val = c * sR * std::pow(x, -s) * bessel_i(s, y);
      }
      (sign > 0 ? r.plus : r.minus)[l] = val;
    }
  }
  return r;
}

std::vector<double> row_scales(const Rows& r) {
  std::vector<double> s(r.plus.size(), 1.0);
  for (size_t l = 0; l < s.size(); ++l) {
    const double m = std::max(std::abs(r.plus[l]), std::abs(r.minus[l]));
    if (m > 0.0 && std::isfinite(m)) s[l] = 1.0 / m;
  }
  return s;
}

cplx assemble(const Operator& op, const Rows& r, const std::vector<double>* scale) {
  const int q = op.q();
  CMatrix M = CMatrix::Zero(2 * q, 2 * q);
  M.topLeftCorner(q, q) = op.spec().A;
  M.topRightCorner(q, q) = op.spec().B;
  for (int l = 0; l < q; ++l) {
    const double s = scale ? (*scale)[l] : 1.0;
    M(q + l, l) = r.plus[l] * s;
    M(q + l, q + l) = r.minus[l] * s;
  }
  if (q == 1) return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  return M.partialPivLu().determinant();
}

double log_scale_sum(const std::vector<double>& s) {
  double acc = 0.0;
  for (double v : s) acc -= std::log(v);
  return acc;
}

// Five-point centred derivative of log of a determinant sampled with fixed
// row scales.
template <class RowFn>
cplx stencil_log_derivative(const Operator& op, RowFn rows_at, double h) {
  const Rows c = rows_at(0.0);
  const std::vector<double> sc = row_scales(c);
  const cplx f0 = assemble(op, c, &sc);
  const cplx fm2 = assemble(op, rows_at(-2.0 * h), &sc);
  const cplx fm1 = assemble(op, rows_at(-h), &sc);
  const cplx fp1 = assemble(op, rows_at(h), &sc);
  const cplx fp2 = assemble(op, rows_at(2.0 * h), &sc);
  if (f0 == cplx(0.0)) throw NumericalError("log-derivative at a zero of F");
  return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h * f0);
}

double signed_real(const Operator& op, cplx v) {
  return (v * std::conj(op.phase())).real();
}

struct AxisScan {
  std::vector<double> roots, suspect;
};

AxisScan scan_axis(const std::function<double(double)>& f, double lo, double hi,
                   double step) {
  AxisScan out;
  const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = lo + (hi - lo) * i / n;
    fs[i] = f(xs[i]);
  }
  const boost::math::tools::eps_tolerance<double> tol(50);
  auto refine = [&](double a, double b, double fa, double fb) {
    boost::uintmax_t it = 200;
    auto pr = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, it);
    return 0.5 * (pr.first + pr.second);
  };
  for (int i = 0; i < n; ++i) {
    if (fs[i] == 0.0) {
      out.roots.push_back(xs[i]);
      continue;
    }
    if (fs[i] * fs[i + 1] < 0.0) out.roots.push_back(refine(xs[i], xs[i + 1], fs[i], fs[i + 1]));
  }
  if (fs[n] == 0.0) out.roots.push_back(xs[n]);
  for (int i = 1; i < n; ++i) {
    const bool same = fs[i - 1] * fs[i] > 0.0 && fs[i] * fs[i + 1] > 0.0;
    if (!same || !(std::abs(fs[i]) < std::abs(fs[i - 1])) ||
        !(std::abs(fs[i]) <= std::abs(fs[i + 1])))
      continue;
    const double sg = fs[i] > 0.0 ? 1.0 : -1.0;
    auto g = [&](double x) { return sg * f(x); };
    const auto mn = boost::math::tools::brent_find_minima(g, xs[i - 1], xs[i + 1], 40);
    const double local = std::max(std::abs(fs[i - 1]), std::abs(fs[i + 1]));
    if (mn.second < 0.0) {
      out.roots.push_back(refine(xs[i - 1], mn.first, fs[i - 1], sg * mn.second));
      out.roots.push_back(refine(mn.first, xs[i + 1], sg * mn.second, fs[i + 1]));
    } else if (mn.second < 1e-6 * local) {
      out.suspect.push_back(mn.first);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace

AsymptoticModel asymptotic_model(const Operator& op) {
  AsymptoticModel m;
  const int q = op.q();
  for (int l = op.q0(); l < q; ++l) {
    const double nu = op.nus()[l];
    m.rho *= std::pow(2.0, -nu) * gamma_fn(1.0 - nu);
    m.abs_nu += nu;
  }
  const auto& cv = op.characteristic();
  m.C = cv.a0 * m.rho * std::pow(2.0 * kPi, -0.5 * q);
  const double half_q = 0.5 * q;
  m.exponent = m.abs_nu + (op.bc().is_robin() ? half_q : -half_q) - 2.0 * cv.alpha0;
  m.log_power = op.q0() - cv.j0;
  return m;
}

cplx eval_F(const Operator& op, cplx mu) {
  if (mu == cplx(0.0)) throw DomainError("eval_F: use eval_F_at_zero for mu = 0");
  return assemble(op, lower_rows(op, mu), nullptr);
}

cplx eval_F_imag(const Operator& op, double x) {
  if (!(x > 0.0)) throw DomainError("eval_F_imag: x must be positive");
  return assemble(op, imag_rows(op, x), nullptr);
}

double eval_F_real(const Operator& op, double mu) {
  return signed_real(op, eval_F(op, mu));
}

double eval_F_imag_real(const Operator& op, double x) {
  return signed_real(op, eval_F_imag(op, x));
}

double log_abs_F_imag(const Operator& op, double x) {
  if (!(x > 0.0)) throw DomainError("log_abs_F_imag: x must be positive");
  const Rows r = imag_rows(op, x);
  const auto sc = row_scales(r);
  return std::log(std::abs(assemble(op, r, &sc))) + log_scale_sum(sc);
}

cplx eval_F_at_zero(const Operator& op) {
  const double R = op.R(), sR = std::sqrt(R), logR = std::log(R);
  const double kap = op.kappa();
  const bool robin = op.bc().is_robin();
  const int q = op.q();
  Rows r;
  r.plus.resize(q);
  r.minus.resize(q);
  for (int l = 0; l < q; ++l) {
    const double nu = op.nus()[l];
    if (nu == 0.0) {
      r.plus[l] = robin ? kap : sR;
      r.minus[l] = robin ? kap * logR + 1.0 / sR : sR * logR;
    } else {
      const double rp = std::pow(R, nu), rm = std::pow(R, -nu);
      r.plus[l] = robin ? kap * rp + nu * rp / sR : sR * rp;
      r.minus[l] = robin ? kap * rm - nu * rm / sR : sR * rm;
    }
  }
  return assemble(op, r, nullptr);
}

// F grows like exp(q R |Im z|), so the stencil step follows 1/(qR) rather
// than |z|; the truncation error is then about (qR h)^4 / 30.
double stencil_step(const Operator& op) {
  return 1e-3 / std::max(1.0, op.q() * op.R());
}

cplx log_derivative_F(const Operator& op, cplx z) {
  const double h = std::min(stencil_step(op), 0.25 * std::abs(z));
  return stencil_log_derivative(op, [&](double d) { return lower_rows(op, z + d); }, h);
}

double log_derivative_F_imag(const Operator& op, double x) {
  if (!(x > 0.0)) throw DomainError("log_derivative_F_imag: x must be positive");
  const double h = std::min(stencil_step(op), 0.25 * x);
  return stencil_log_derivative(op, [&](double d) { return imag_rows(op, x + d); }, h)
      .real();
}

int kernel_order(const Operator& op) {
  const cplx f0 = eval_F_at_zero(op);
  // Scale for the zero test: the magnitude of F a little off the origin.
  const double ref = std::max({std::abs(eval_F(op, 1.0)), std::abs(eval_F(op, 0.5)), 1e-300});
  if (std::abs(f0) > 1e-10 * std::max(ref, std::abs(f0))) return 0;
  const double mus[3] = {1e-1, std::pow(10.0, -1.5), 1e-2};
  double f[3];
  for (int i = 0; i < 3; ++i) f[i] = std::abs(eval_F(op, mus[i]));
  if (f[2] == 0.0 || f[1] == 0.0)
    throw KernelError("kernel_order: F vanishes identically near 0");
  const double s1 = std::log(f[0] / f[1]) / std::log(mus[0] / mus[1]);
  const double s2 = std::log(f[1] / f[2]) / std::log(mus[1] / mus[2]);
  const int k = static_cast<int>(std::lround(s2 / 2.0));
  if (k < 1 || k > op.q() || std::abs(s2 - 2.0 * k) > 0.05 || std::abs(s1 - 2.0 * k) > 0.5) {
    std::ostringstream os;
    os << "kernel_order: ambiguous fit (slopes " << s1 << ", " << s2 << ")";
    throw KernelError(os.str());
  }
  return k;
}

cplx asymptotic_log_F_imag(const Operator& op, double x) {
  const AsymptoticModel m = asymptotic_model(op);
  cplx v = std::log(m.C) + m.exponent * std::log(x) + double(op.q()) * x * op.R();
  if (m.log_power != 0) v += double(m.log_power) * std::log(cplx(m.gamma_tilde - std::log(x)));
  return v;
}

double asymptotic_relative_error(const Operator& op, double x) {
  const double exact = log_abs_F_imag(op, x);
  return std::abs(asymptotic_log_F_imag(op, x).real() - exact) / std::abs(exact);
}

Spectrum find_spectrum(const Operator& op, double mu_max) {
  if (!(mu_max > 0.0)) throw DomainError("find_spectrum: mu_max must be positive");
  Spectrum sp;
  sp.mu_max = mu_max;
  const double step = kPi / (4.0 * op.q() * op.R());
  const double lo = 1e-6 * std::min(step, mu_max);
  AxisScan pos = scan_axis([&](double mu) { return eval_F_real(op, mu); }, lo, mu_max,
                           std::min(step, mu_max / 2.0));
  sp.positive = pos.roots;
  for (double s : pos.suspect) {
    sp.suspect.push_back(s);
    sp.certified = false;
    std::ostringstream os;
    os << "possible double root near mu = " << s;
    sp.notes.push_back(os.str());
  }

  find_negative_spectrum(op, &sp);
  return sp;
}

void find_negative_spectrum(const Operator& op, Spectrum* out) {
  Spectrum& sp = *out;
  const double step = kPi / (4.0 * op.q() * op.R());
  // Find where the large-x model has taken over.
  const AsymptoticModel m = asymptotic_model(op);
  const double want_sign = m.log_power % 2 ? -1.0 : 1.0;
  auto model_holds = [&](double x) {
    const Rows r = imag_rows(op, x);
    const auto sc = row_scales(r);
    const cplx d = assemble(op, r, &sc);
    const double lg = std::log(std::abs(d)) + log_scale_sum(sc);
    return signed_real(op, d) * want_sign > 0.0 &&
           std::abs(lg - asymptotic_log_F_imag(op, x).real()) < std::log(10.0);
  };
  const double cap = 600.0 / (op.q() * op.R());
  double xs = 5.0;
  bool found = false;
  for (; xs <= cap; xs *= 2.0) {
    bool ok = true;
    for (int i = 0; i <= 8 && ok; ++i) ok = model_holds(xs * (1.0 + i / 8.0));
    if (ok) {
      found = true;
      break;
    }
  }
  if (!found) {
    xs = cap / 2.0;
    sp.certified = false;
    sp.notes.push_back("imaginary-axis model never matched F(ix); scan truncated");
  }
  sp.x_star = xs;
  const double xstep = std::min(step, 0.05 / op.R());
  AxisScan neg = scan_axis([&](double x) { return eval_F_imag_real(op, x); }, 1e-6,
                           2.0 * xs, xstep);
  sp.negative = neg.roots;
  for (double s : neg.suspect) {
    sp.suspect.push_back(-s);
    sp.certified = false;
    std::ostringstream os;
    os << "possible double imaginary root near x = " << s;
    sp.notes.push_back(os.str());
  }
}

int zeros_inside(const Operator& op, double r) {
  constexpr int n = 512;
  double total = 0.0;
  cplx prev = eval_F(op, cplx(r, 0.0));
  for (int i = 1; i <= n; ++i) {
    const cplx cur = eval_F(op, std::polar(r, 2.0 * kPi * i / n));
    if (cur == cplx(0.0)) throw NumericalError("zeros_inside: F vanishes on the circle");
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

std::vector<ContourDecay> verify_contour_decay(const Operator& op, double s,
                                               const std::vector<double>& a_list,
                                               double theta) {
  if (!(s > 0.5)) throw DomainError("verify_contour_decay: s must exceed 1/2");
  if (!(theta > 0.0 && theta < kPi / 2.0))
    throw DomainError("verify_contour_decay: theta must lie in (0, pi/2)");
  std::vector<ContourDecay> out;
  for (double a0 : a_list) {
    if (!(a0 > 0.0)) throw DomainError("verify_contour_decay: a must be positive");
    double a = a0;
    for (int tries = 0;; ++tries) {
      double local = 0.0;
      for (int i = -3; i <= 3; ++i) local = std::max(local, std::abs(eval_F(op, a + 0.1 * i)));
      if (std::abs(eval_F(op, a)) > 1e-3 * local) break;
      if (tries == 5) throw NumericalError("verify_contour_decay: F vanishes on the contour");
      a += 0.05;
    }
    auto f = [&](cplx z) { return std::pow(z, -2.0 * s) * log_derivative_F(op, z); };
    const double r = a / std::cos(theta);
    const double ymax = a * std::tan(theta);
    const cplx I(0.0, 1.0);
    // Upper arc pi/2 -> theta, segment top -> bottom, lower arc -theta -> -pi/2.
    auto arc = [&](double ph) {
      const cplx z = std::polar(r, ph);
      return f(z) * I * z;
    };
    const cplx up = -detail::integrate(arc, theta, kPi / 2.0, 1e-9, 1e-14, "upper arc");
    const cplx lowr = -detail::integrate(arc, -kPi / 2.0, -theta, 1e-9, 1e-14, "lower arc");
    const cplx seg = -detail::integrate([&](double y) { return f(cplx(a, y)) * I; }, -ymax,
                                        ymax, 1e-9, 1e-14, "vertical segment");
    out.push_back({a, std::abs(up + seg + lowr), std::abs(seg), std::abs(up + lowr)});
  }
  return out;
}

}  // namespace conedet
