#pragma once

#include <complex>

namespace conedet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

namespace specialfn {

// Gamma via Lanczos (g = 7, n = 9) with reflection below 1/2.
// Throws DomainError at non-positive integers.
double gamma_fn(double x);

// 1/Gamma(x); zero at the poles instead of throwing.
double rgamma(double x);

// 1 + 1/2 + ... + 1/k.
double harmonic_number(int k);

// J_nu(z) for real order and complex argument, principal branch.
// Power series (extended precision) for |z| <= 20, Hankel expansion beyond.
// Non-integer order on the negative real axis throws DomainError.
cplx bessel_j(double nu, cplx z);
cplx bessel_j_deriv(double nu, cplx z);

// Real-argument companions, x > 0.
double bessel_j(double nu, double x);
double bessel_j_deriv(double nu, double x);
double bessel_y(double nu, double x);
double bessel_y_deriv(double nu, double x);
double bessel_i(double nu, double x);
double bessel_k(double nu, double x);

// Y_0 and Y_1 at complex argument with Re z > 0 (used for the log-type
// solution at large |z|).
cplx bessel_y01(int n, cplx z);

// S(z) = sum_{k>=1} H_k (-z^2/4)^k / (k!)^2 and its derivative.
// For |z| beyond the series radius the Y_0 identity
// S(z) = (log(z/2) + gamma) J_0(z) - (pi/2) Y_0(z) is used (Re z > 0 there).
cplx log_series(cplx z);
cplx log_series_deriv(cplx z);

// J_{-0}(mu x) = (pi/2) Y_0(mu x) - (log mu - log 2 + gamma) J_0(mu x).
double j_minus0(double mu, double x);
// The same function from log(x) J_0(mu x) - S(mu x), summed directly.
double j_minus0_series(double mu, double x);

// Largest |z| for which the complex power series is used.
inline constexpr double kSeriesRadius = 20.0;

}  // namespace specialfn
}  // namespace conedet
