#include "conedet/specialfn.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "conedet/errors.hpp"

namespace conedet::specialfn {

namespace {

using lcplx = std::complex<long double>;

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_integer(double x) { return std::floor(x) == x; }

template <class F>
double boost_call(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw DomainError(std::string(name) + ": " + e.what());
  }
}

// Real positive arguments go through the library routines, which are
// accurate near the zeros of J where an alternating series is not.
bool real_positive(cplx z) { return z.imag() == 0.0 && z.real() > 0.0; }

cplx series_j(double nu, cplx z) {
  const lcplx h = lcplx(z) / 2.0L;
  const lcplx q = -h * h;
  lcplx term = static_cast<long double>(rgamma(nu + 1.0));
  lcplx sum = term;
  const long double az = std::abs(h);
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<long double>(k) * (k + nu));
    sum += term;
    if (k > az && std::abs(term) <= 1e-21L * std::abs(sum)) break;
  }
  if (nu == 0.0) return cplx(sum);
  return cplx(sum * std::pow(h, static_cast<long double>(nu)));
}

// Hankel large-argument expansion of J_nu and Y_nu; |arg z| < pi.
void hankel_jy(double nu, cplx z, cplx* j, cplx* y) {
  const double mu4 = 4.0 * nu * nu;
  cplx p = 1.0, q = 0.0, term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu4 - odd * odd) / (8.0 * k) / z;
    const double mag = std::abs(term);
    if (mag == 0.0) break;
    if (mag > prev && k > nu) break;
    prev = mag;
    const int quarter = (k / 2) % 2;
    if (k % 2 == 0) {
      p += quarter ? -term : term;
    } else {
      q += ((k - 1) / 2) % 2 ? -term : term;
    }
    if (mag < 1e-17 * std::abs(p)) break;
  }
  const cplx chi = z - (nu / 2.0 + 0.25) * kPi;
  const cplx pref = std::sqrt(2.0 / (kPi * z));
  const cplx c = std::cos(chi), s = std::sin(chi);
  if (j) *j = pref * (p * c - q * s);
  if (y) *y = pref * (p * s + q * c);
}

lcplx log_series_sum(cplx z) {
  const lcplx h = lcplx(z) / 2.0L;
  const lcplx q = -h * h;
  lcplx term = 1.0L, sum = 0.0L;
  long double hk = 0.0L;
  const long double az = std::abs(h);
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    hk += 1.0L / k;
    const lcplx add = hk * term;
    sum += add;
    if (k > az && std::abs(add) <= 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

// d/dz of log_series_sum.
lcplx log_series_sum_deriv(cplx z) {
  const lcplx h = lcplx(z) / 2.0L;
  const lcplx q = -h * h;
  // d/dz (-z^2/4)^k = k (-z^2/4)^{k-1} (-z/2)
  lcplx pw = 1.0L, sum = 0.0L;
  long double fact2 = 1.0L, hk = 0.0L;
  const long double az = std::abs(h);
  for (int k = 1; k < 400; ++k) {
    fact2 *= static_cast<long double>(k) * k;
    hk += 1.0L / k;
    const lcplx add = hk * static_cast<long double>(k) * pw * (-h) / fact2;
    sum += add;
    pw *= q;
    if (k > az && std::abs(add) <= 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0.0 && is_integer(x))
    throw DomainError("gamma_fn: pole at " + std::to_string(x));
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  x -= 1.0;
  double a = kLanczos[0];
  const double t = x + kLanczosG + 0.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double rgamma(double x) {
  if (x <= 0.0 && is_integer(x)) return 0.0;
  return 1.0 / gamma_fn(x);
}

double harmonic_number(int k) {
  if (k < 1) throw DomainError("harmonic_number: k must be >= 1");
  double h = 0.0;
  for (int i = k; i >= 1; --i) h += 1.0 / i;
  return h;
}

cplx bessel_j(double nu, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("bessel_j: non-finite argument");
  if (nu < 0.0 && is_integer(nu)) {
    const int n = static_cast<int>(-nu);
    const cplx v = bessel_j(-nu, z);
    return n % 2 ? -v : v;
  }
  if (real_positive(z)) return bessel_j(nu, z.real());
  if (z == cplx(0.0)) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw DomainError("bessel_j: negative order at z = 0");
  }
  if (z.imag() == 0.0 && z.real() < 0.0 && !is_integer(nu))
    throw DomainError("bessel_j: argument on the branch cut");
  if (std::abs(z) <= kSeriesRadius) return series_j(nu, z);
  if (z.real() < 0.0) {
    const double sgn = z.imag() >= 0.0 ? 1.0 : -1.0;
    return std::polar(1.0, sgn * kPi * nu) * bessel_j(nu, -z);
  }
  cplx j;
  hankel_jy(nu, z, &j, nullptr);
  return j;
}

cplx bessel_j_deriv(double nu, cplx z) {
  if (real_positive(z)) return bessel_j_deriv(nu, z.real());
  if (z == cplx(0.0)) {
    if (nu == 0.0 || nu > 1.0) return 0.0;
    if (nu == 1.0) return 0.5;
    throw DomainError("bessel_j_deriv: singular at z = 0");
  }
  return 0.5 * (bessel_j(nu - 1.0, z) - bessel_j(nu + 1.0, z));
}

double bessel_j(double nu, double x) {
  return boost_call("bessel_j", [&] { return boost::math::cyl_bessel_j(nu, x); });
}

double bessel_j_deriv(double nu, double x) {
  return boost_call("bessel_j_deriv",
                    [&] { return boost::math::cyl_bessel_j_prime(nu, x); });
}

double bessel_y(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_y: argument must be positive");
  return boost_call("bessel_y", [&] { return boost::math::cyl_neumann(nu, x); });
}

double bessel_y_deriv(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_y_deriv: argument must be positive");
  return boost_call("bessel_y_deriv",
                    [&] { return boost::math::cyl_neumann_prime(nu, x); });
}

double bessel_i(double nu, double x) {
  if (x < 0.0) throw DomainError("bessel_i: argument must be non-negative");
  return boost_call("bessel_i", [&] { return boost::math::cyl_bessel_i(nu, x); });
}

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  return boost_call("bessel_k", [&] { return boost::math::cyl_bessel_k(nu, x); });
}

cplx bessel_y01(int n, cplx z) {
  if (n != 0 && n != 1) throw DomainError("bessel_y01: order must be 0 or 1");
  if (z == cplx(0.0) || (z.imag() == 0.0 && z.real() < 0.0))
    throw DomainError("bessel_y01: argument on the branch cut");
  if (real_positive(z)) return bessel_y(n, z.real());
  if (std::abs(z) > kSeriesRadius && z.real() > 0.0) {
    cplx y;
    hankel_jy(n, z, nullptr, &y);
    return y;
  }
  const cplx lg = std::log(z / 2.0) + kEulerGamma;
  if (n == 0) return 2.0 / kPi * (lg * bessel_j(0.0, z) - log_series(z));
  return -2.0 / kPi *
         (bessel_j(0.0, z) / z - lg * bessel_j(1.0, z) - log_series_deriv(z));
}

cplx log_series(cplx z) {
  if (z.real() < 0.0) z = -z;
  const bool boost_route = real_positive(z) && z.real() > 8.0;
  if (!boost_route && std::abs(z) <= kSeriesRadius) return cplx(log_series_sum(z));
  const cplx lg = std::log(z / 2.0) + kEulerGamma;
  return lg * bessel_j(0.0, z) - kPi / 2.0 * bessel_y01(0, z);
}

cplx log_series_deriv(cplx z) {
  if (z.real() < 0.0) return -log_series_deriv(-z);
  const bool boost_route = real_positive(z) && z.real() > 8.0;
  if (!boost_route && std::abs(z) <= kSeriesRadius)
    return cplx(log_series_sum_deriv(z));
  const cplx lg = std::log(z / 2.0) + kEulerGamma;
  return bessel_j(0.0, z) / z - lg * bessel_j(1.0, z) +
         kPi / 2.0 * bessel_y01(1, z);
}

double j_minus0(double mu, double x) {
  if (!(mu > 0.0) || !(x > 0.0))
    throw DomainError("j_minus0: mu and x must be positive");
  const double w = mu * x;
  return kPi / 2.0 * bessel_y(0.0, w) -
         (std::log(mu) - std::log(2.0) + kEulerGamma) * bessel_j(0.0, w);
}

double j_minus0_series(double mu, double x) {
  if (!(mu > 0.0) || !(x > 0.0))
    throw DomainError("j_minus0_series: mu and x must be positive");
  const cplx w = mu * x;
  const double j0 = static_cast<double>(std::real(series_j(0.0, w)));
  return std::log(x) * j0 - static_cast<double>(std::real(log_series_sum(w)));
}

}  // namespace conedet::specialfn
