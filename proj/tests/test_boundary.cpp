#include <algorithm>
#include <cmath>

#include "conedet/boundary.hpp"
#include "conedet/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conedet;

namespace {
bool has(const ValidationReport& r, const std::string& tag) {
  return std::find(r.violations.begin(), r.violations.end(), tag) != r.violations.end();
}
OperatorSpec two_by_two(CMatrix A, CMatrix B) {
  OperatorSpec s;
  s.lambdas = {-0.25, 0.1};
  s.q0 = 1;
  s.A = std::move(A);
  s.B = std::move(B);
  s.bc = RegularBC::dirichlet();
  return s;
}
}  // namespace

TEST_CASE("validate") {
  CHECK(validate(specs::dirichlet(0.3)).ok());
  const auto zero = validate(two_by_two(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)));
  CHECK(has(zero, "rank"));
  CMatrix B = CMatrix::Zero(2, 2);
  B(0, 0) = cplx(0.0, 1.0);
  const auto sa = validate(two_by_two(CMatrix::Identity(2, 2), B));
  CHECK(has(sa, "self-adjointness"));
  CHECK_FALSE(has(sa, "rank"));
  CHECK_THROWS_AS(Operator(two_by_two(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2))), SchemaError);

  OperatorSpec bad = specs::dirichlet(0.3);
  bad.lambdas = {0.75};
  CHECK(has(validate(bad), "lambdas"));
  bad = specs::dirichlet(0.3);
  bad.R = -1.0;
  CHECK(has(validate(bad), "R"));
  bad = specs::dirichlet(0.3);
  bad.q0 = 1;
  CHECK(has(validate(bad), "q0"));
  bad = specs::dirichlet(0.3);
  bad.A = CMatrix::Zero(2, 2);
  CHECK_THROWS_AS(validate(bad), SchemaError);
}

TEST_CASE("A'B* self-adjointness uses the sign flip on the first q0 columns") {
  // A = I, B = [[0,1],[1,0]]: A'B* = [[0,-1],[1,0]]
  CMatrix B(2, 2);
  B << 0.0, 1.0, 1.0, 0.0;
  CHECK(has(validate(two_by_two(CMatrix::Identity(2, 2), B)), "self-adjointness"));
  B << 0.0, -1.0, 1.0, 0.0;
  CHECK(validate(two_by_two(CMatrix::Identity(2, 2), B)).ok());
}

TEST_CASE("classify_scalar") {
  auto c = classify_scalar(-0.25);
  CHECK(c.regime == ScalarClass::Regime::LimitCircle);
  CHECK(c.p == doctest::Approx(-0.5));
  CHECK(c.nu == doctest::Approx(0.0));
  c = classify_scalar(0.75);
  CHECK(c.regime == ScalarClass::Regime::LimitPoint);
  CHECK(c.p == doctest::Approx(0.5));
  CHECK(c.nu == doctest::Approx(1.0));
  c = classify_scalar(0.0);
  CHECK(c.regime == ScalarClass::Regime::LimitCircle);
  CHECK(c.nu == doctest::Approx(0.5));
  CHECK(to_string(ScalarClass::Regime::LimitCircle) == "lcc");
  CHECK_THROWS_AS(classify_scalar(-0.3), DomainError);
}

TEST_CASE("extension_rows") {
  auto r = extension_rows(ExtensionKind::D, 0.0);
  CHECK(r.A_row == cplx(0.0));
  CHECK(r.B_row == cplx(1.0));
  CHECK_FALSE(r.bc.is_robin());
  r = extension_rows(ExtensionKind::N, 0.0);
  CHECK(r.A_row == cplx(1.0));
  CHECK(r.B_row == cplx(0.0));
  CHECK(r.bc.is_robin());
  CHECK(r.bc.alpha == doctest::Approx(0.0));
  r = extension_rows(ExtensionKind::N, -1.0);
  CHECK(r.A_row == cplx(0.0));
  CHECK(r.B_row == cplx(1.0));
  CHECK(r.bc.alpha == doctest::Approx(-1.0));
  r = extension_rows(ExtensionKind::N, -0.25, 2.0);
  CHECK(r.bc.alpha == doctest::Approx(-0.125));
  CHECK_THROWS_AS(extension_rows(ExtensionKind::N, 0.5), DomainError);
  CHECK_THROWS_AS(extension_rows(ExtensionKind::D, -1.5), DomainError);
}

TEST_CASE("characteristic values of scalar extensions") {
  auto cv = characteristic_values(specs::dirichlet(0.0));
  CHECK(cv.alpha0 == doctest::Approx(0.0));
  CHECK(cv.j0 == 1);
  CHECK(std::abs(cv.a0 - cplx(-1.0)) < 1e-14);
  for (double nu : {0.2, 0.5, 0.8}) {
    cv = characteristic_values(specs::dirichlet(nu));
    const double tau = std::tgamma(1 + nu) / std::tgamma(1 - nu) * std::pow(2.0, 2 * nu);
    CHECK(cv.alpha0 == doctest::Approx(nu));
    CHECK(cv.j0 == 0);
    CHECK(std::abs(cv.a0 + tau) < 1e-13 * tau);
  }
  cv = characteristic_values(specs::n_ext_half());
  CHECK(cv.alpha0 == doctest::Approx(0.0));
  CHECK(cv.j0 == 0);
  CHECK(std::abs(cv.a0 - cplx(1.0)) < 1e-14);
}

TEST_CASE("characteristic values are multiplicative over diagonal blocks") {
  const std::vector<double> nus{0.0, 0.3, 0.7};
  const std::vector<cplx> a{0.0, 1.0, 0.0}, b{1.0, 0.0, 1.0};
  const auto joint = characteristic_values(OperatorSpec::diagonal(nus, a, b, RegularBC::dirichlet()));
  double alpha = 0.0;
  int j = 0;
  cplx prod = 1.0;
  for (size_t l = 0; l < nus.size(); ++l) {
    const auto one = characteristic_values(OperatorSpec::scalar(nus[l], a[l], b[l], RegularBC::dirichlet()));
    alpha += one.alpha0;
    j += one.j0;
    prod *= one.a0;
  }
  CHECK(joint.alpha0 == doctest::Approx(alpha));
  CHECK(joint.j0 == j);
  CHECK(std::abs(joint.a0 - prod) < 1e-12 * std::abs(prod));
}

TEST_CASE("operator caches kappa") {
  const Operator op(OperatorSpec::scalar(0.3, 0.0, 1.0, RegularBC::robin(0.7), 4.0));
  CHECK(op.kappa() == doctest::Approx(1.0 / 4.0 + 0.7 * 2.0));
  CHECK(op.nus()[0] == doctest::Approx(0.3));
  CHECK(std::abs(std::abs(op.phase()) - 1.0) < 1e-15);
}
