#pragma once

#include <string>
#include <vector>

#include "conedet/boundary.hpp"

namespace conedet {

inline constexpr double kGammaTilde = 0.69314718055994530942 - kEulerGamma;

struct AsymptoticModel {
  double rho = 1.0;
  double gamma_tilde = kGammaTilde;
  double abs_nu = 0.0;
  cplx C;
  double exponent = 0.0;
  int log_power = 0;  // q0 - j0
};

// Large-x model of F(ix). For Dirichlet rows at R the exponent carries
// -q/2 instead of +q/2 (trace rows lose one power of x each).
AsymptoticModel asymptotic_model(const Operator& op);

// F(mu) for mu != 0; even in mu.
cplx eval_F(const Operator& op, cplx mu);
// F(ix), x > 0, assembled from modified Bessel functions.
cplx eval_F_imag(const Operator& op, double x);
// Phase-normalised real values on the two axes.
double eval_F_real(const Operator& op, double mu);
double eval_F_imag_real(const Operator& op, double x);
// log|F(ix)| with per-row rescaling, usable where F itself overflows.
double log_abs_F_imag(const Operator& op, double x);

cplx eval_F_at_zero(const Operator& op);

// F'(z)/F(z) by a five-point centred stencil.
cplx log_derivative_F(const Operator& op, cplx z);
// d/dx log|F(ix)|.
double log_derivative_F_imag(const Operator& op, double x);

// Order of vanishing of F at 0 in the variable mu^2.
int kernel_order(const Operator& op);

// log C + E log x + q x R + (q0 - j0) log(gamma~ - log x).
cplx asymptotic_log_F_imag(const Operator& op, double x);
// |Re model - log|F(ix)|| / |log|F(ix)||.
double asymptotic_relative_error(const Operator& op, double x);

struct Spectrum {
  std::vector<double> positive;  // mu > 0, eigenvalue mu^2
  std::vector<double> negative;  // x > 0, eigenvalue -x^2
  double mu_max = 0.0;
  double x_star = 0.0;  // imaginary-axis scan bound
  bool certified = true;
  std::vector<double> suspect;  // near-tangential minima of |F|
  std::vector<std::string> notes;
};

Spectrum find_spectrum(const Operator& op, double mu_max);

// Imaginary-axis part of the search alone: roots x of F(ix) = 0. Fills the
// negative/x_star/certified/suspect/notes fields of *sp.
void find_negative_spectrum(const Operator& op, Spectrum* sp);

// Number of zeros of F inside |mu| < r, by the argument principle.
int zeros_inside(const Operator& op, double r);

struct ContourDecay {
  double a = 0.0;  // abscissa actually used (may be shifted off a zero)
  double total = 0.0;
  double segment = 0.0;
  double arcs = 0.0;
};

std::vector<ContourDecay> verify_contour_decay(const Operator& op, double s,
                                               const std::vector<double>& a_list,
                                               double theta = kPi / 4.0);

}  // namespace conedet
