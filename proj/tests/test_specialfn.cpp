#include <cmath>

#include "conedet/errors.hpp"
#include "conedet/specialfn.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conedet;
namespace sf = conedet::specialfn;

namespace {
std::vector<double> grid() {
  std::vector<double> xs;
  for (double x = 0.1; x <= 50.0 + 1e-9; x += 0.35) xs.push_back(x);
  xs.push_back(50.0);
  return xs;
}
}  // namespace

TEST_CASE("gamma and harmonic numbers") {
  CHECK(sf::gamma_fn(1.5) == doctest::Approx(std::sqrt(oracle::pi) / 2).epsilon(1e-14));
  CHECK(sf::gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sf::harmonic_number(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  for (double x = 0.5; x <= 10.0; x += 0.137)
    CHECK(std::abs(sf::gamma_fn(x) / std::tgamma(x) - 1.0) < 1e-13);
  CHECK(sf::gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(oracle::pi)).epsilon(1e-13));
  CHECK_THROWS_AS(sf::gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(sf::gamma_fn(-3.0), DomainError);
  CHECK(sf::rgamma(-2.0) == 0.0);
}

TEST_CASE("bessel J at simple points") {
  CHECK(std::abs(sf::bessel_j(0.0, cplx(0.0)) - 1.0) < 1e-15);
  CHECK(std::abs(sf::bessel_j(1.0, cplx(0.0))) < 1e-15);
  const double z1 = oracle::j1_zero(1);
  CHECK(z1 == doctest::Approx(3.8317059702).epsilon(1e-9));
  CHECK(std::abs(sf::bessel_j(1.0, cplx(z1))) < 1e-9);
  // half-integer order in closed form, complex argument
  for (cplx z : {cplx(0.7, 0.4), cplx(3.0, -2.0), cplx(15.0, 6.0), cplx(30.0, 10.0), cplx(-4.0, 1.0)}) {
    const cplx ref = std::sqrt(2.0 / (oracle::pi * z)) * std::sin(z);
    CHECK(std::abs(sf::bessel_j(0.5, z) - ref) <= 1e-11 * std::abs(ref));
  }
}

TEST_CASE("complex J agrees with the real route on the axis") {
  for (double nu : {0.0, 0.3, 0.5, 0.9, 1.7})
    for (double x : {0.2, 4.0, 19.0, 21.0, 60.0}) {
      const double r = sf::bessel_j(nu, x);
      CHECK(std::abs(sf::bessel_j(nu, cplx(x, 1e-300)).real() - r) <= 1e-9 * std::max(1.0, std::abs(r)));
    }
}

TEST_CASE("wronskian J Y' - J' Y = 2/(pi x)") {
  for (double nu : {0.0, 0.3, 0.5, 0.9})
    for (double x : grid()) {
      const double w = sf::bessel_j(nu, x) * sf::bessel_y_deriv(nu, x) -
                       sf::bessel_j_deriv(nu, x) * sf::bessel_y(nu, x);
      const double ref = 2.0 / (oracle::pi * x);
      CHECK(std::abs(w - ref) <= 1e-12 * ref);
    }
}

TEST_CASE("derivative identity J' = J_{nu-1} - (nu/z) J") {
  for (double nu : {0.0, 0.3, 0.5, 0.9})
    for (double x : grid()) {
      const double lhs = sf::bessel_j_deriv(nu, x);
      const double rhs = sf::bessel_j(nu - 1.0, x) - nu / x * sf::bessel_j(nu, x);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
      const cplx lc = sf::bessel_j_deriv(nu, cplx(x, 0.3 * x));
      const cplx rc = sf::bessel_j(nu - 1.0, cplx(x, 0.3 * x)) -
                      nu / cplx(x, 0.3 * x) * sf::bessel_j(nu, cplx(x, 0.3 * x));
      CHECK(std::abs(lc - rc) <= 1e-10 * std::max(1.0, std::abs(lc)));
    }
}

TEST_CASE("turnover (iz)^-nu J(iz) = z^-nu I(z)") {
  for (double nu : {0.0, 0.3, 0.5, 0.9})
    for (double z = 0.25; z <= 30.0 + 1e-9; z += 0.25) {
      const cplx iz(0.0, z);
      const cplx lhs = std::pow(iz, -nu) * sf::bessel_j(nu, iz);
      const double rhs = std::pow(z, -nu) * sf::bessel_i(nu, z);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * rhs);
    }
}

TEST_CASE("complex J on the cut") {
  CHECK_THROWS_AS(sf::bessel_j(0.3, cplx(-2.0, 0.0)), DomainError);
  // integer order is entire
  CHECK(std::abs(sf::bessel_j(1.0, cplx(-2.0, 0.0)) + sf::bessel_j(1.0, 2.0)) < 1e-14);
}

TEST_CASE("j_minus0 dual representation") {
  const double j = (oracle::pi / 2) * sf::bessel_y(0.0, 1.0) + (std::log(2.0) - oracle::euler) * sf::bessel_j(0.0, 1.0);
  CHECK(sf::j_minus0(1.0, 1.0) == doctest::Approx(j).epsilon(1e-13));
  for (double mu : {0.5, 1.0, 2.0})
    for (double x : {0.3, 1.0}) {
      // series written out here, independent of the library's
      const double w = -(mu * x) * (mu * x) / 4.0;
      double term = 1.0, sum = 0.0;
      for (int k = 1; k < 60; ++k) {
        term *= w / (k * double(k));
        sum += sf::harmonic_number(k) * term;
      }
      const double series = std::log(x) * oracle::jn_series(0, mu * x) - sum;
      CHECK(std::abs(sf::j_minus0(mu, x) - series) <= 1e-10);
      CHECK(std::abs(sf::j_minus0(mu, x) - sf::j_minus0_series(mu, x)) <= 1e-10);
    }
  CHECK(sf::j_minus0(1e-9, 0.3) == doctest::Approx(std::log(0.3)).epsilon(1e-12));
  CHECK_THROWS_AS(sf::j_minus0(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(sf::j_minus0(1.0, -1.0), DomainError);
}
