#include <cmath>

#include "conedet/cone.hpp"
#include "conedet/detcalc.hpp"
#include "conedet/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conedet;

namespace {
// Unit circle: functions carry 0, 1, 1, 4, 4, ...; the only coclosed 1-form is dtheta.
ConeSpec circle() {
  ConeSpec c;
  c.m = 2;
  c.ccl_spectra[0] = {{0.0, 1}, {1.0, 2}, {4.0, 2}, {9.0, 2}};
  c.ccl_spectra[1] = {{0.0, 1}};
  c.harmonic_dims = {{0, 1}, {1, 1}};
  return c;
}

// Round S^2: l(l+1) with multiplicity 2l+1 on functions and on coexact 1-forms.
ConeSpec sphere() {
  ConeSpec c;
  c.m = 3;
  c.ccl_spectra[0] = {{0.0, 1}, {2.0, 3}, {6.0, 5}};
  c.ccl_spectra[1] = {{2.0, 3}, {6.0, 5}};
  c.ccl_spectra[2] = {{0.0, 1}};
  c.harmonic_dims = {{0, 1}, {1, 0}, {2, 1}};
  return c;
}

double product(const std::vector<ComponentFactor>& f) {
  double p = 1.0;
  for (const auto& c : f) p *= std::pow(c.factor, c.multiplicity);
  return p;
}
}  // namespace

TEST_CASE("circle: sets by hand") {
  const auto c = circle();
  auto d = contribution_sets(c, 1);
  CHECK(d.window_active);
  REQUIRE(d.B_k.size() == 1);
  CHECK(d.B_k[0].nu == doctest::Approx(1.0));
  CHECK(d.B_k[0].mult == 2);
  CHECK(d.A_k.empty());
  CHECK(d.A_tilde_km2.empty());

  d = contribution_sets(c, 0);
  REQUIRE(d.A_k.size() == 1);
  CHECK(d.A_k[0].nu == doctest::Approx(0.0));
  CHECK(d.A_k[0].mult == 1);
  CHECK(d.B_k.empty());

  d = contribution_sets(c, 2);
  CHECK(d.A_tilde_km2.empty());
  CHECK(d.B_k.empty());
  CHECK(d.P_k == doctest::Approx(std::sqrt(oracle::pi / 2)).epsilon(1e-15));
}

TEST_CASE("circle: determinants") {
  const auto c = circle();
  // k = 0: sqrt(2 pi) / (2^0 Gamma(1)); k = 1: (2 pi (1 - 1 + 1) / (4 Gamma(2)^2))^2; k = 2: P_2
  const double ref[3] = {std::sqrt(2 * oracle::pi), oracle::pi * oracle::pi / 4, std::sqrt(oracle::pi / 2)};
  for (int k = 0; k <= 2; ++k) {
    CHECK(std::abs(cone_determinant(c, k) - ref[k]) <= 1e-12 * ref[k]);
    CHECK(std::abs(product(component_report(c, k)) - ref[k]) <= 1e-12 * ref[k]);
  }
  const auto r1 = component_report(c, 1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].source == ComponentSource::Paired);
  CHECK(r1[0].multiplicity == 2);
  CHECK(r1[0].factor == doctest::Approx(oracle::pi / 2).epsilon(1e-15));
  const auto r0 = component_report(c, 0);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].source == ComponentSource::HarmonicK);
  CHECK(r0[0].factor == doctest::Approx(std::sqrt(2 * oracle::pi)).epsilon(1e-15));
}

TEST_CASE("outside the window") {
  const auto c = circle();
  for (int k : {-1, 3, 4}) {
    CHECK(cone_determinant(c, k) == 1.0);
    CHECK(component_report(c, k).empty());
  }
  // synthetic cross-section data, only the window logic matters here
  ConeSpec t;
  t.m = 6;
  for (int j = 0; j <= 5; ++j) {
    t.ccl_spectra[j] = {{0.0, 1}, {1.0, 4}};
    t.harmonic_dims[j] = 1;
  }
  for (int k : {0, 1, 5, 6}) {
    const auto d = contribution_sets(t, k);
    CHECK_FALSE(d.window_active);
    CHECK(d.A_k.empty());
    CHECK(d.B_k.empty());
    CHECK(cone_determinant(t, k) == 1.0);
  }
  CHECK(contribution_sets(t, 3).window_active);
}

TEST_CASE("product identity and window invariants on S^2") {
  const auto c = sphere();
  for (int k = 0; k <= c.m; ++k) {
    const double det = cone_determinant(c, k);
    CHECK(std::abs(product(component_report(c, k)) - det) <= 1e-12 * std::abs(det));
    const auto d = contribution_sets(c, k);
    const double s = k + 1 - c.m / 2.0, t = k - c.m / 2.0;
    for (const auto& e : d.A_k) {
      CHECK(e.nu == doctest::Approx(std::sqrt(e.lambda + s * s)));
      CHECK(e.lambda < 1 - s * s);
    }
    for (const auto& e : d.B_k) {
      CHECK(e.lambda > 0.0);
      CHECK(e.lambda < 4 - t * t);
    }
    for (const auto& e : d.A_tilde_km2) CHECK(e.lambda > 0.0);
  }
}

TEST_CASE("paired factor is a Dirichlet factor times a Robin factor") {
  for (const auto& c : {circle(), sphere()}) {
    const double n = c.m - 1;
    for (int k = 0; k <= c.m; ++k)
      for (const auto& f : component_report(c, k)) {
        if (f.source != ComponentSource::Paired) continue;
        const auto bc = relative_bc_at_R(k, c.m).paired_coexact;
        CHECK(bc.alpha == doctest::Approx(n / 2 - k));
        double split = det_wronskian_scalar(f.nu, RegularBC::dirichlet()) * det_wronskian_scalar(f.nu, bc);
        CHECK(std::abs(split - f.factor) <= 1e-12 * f.factor);
        if (f.nu < 1.0) {
          split = det_zeta_closed_form(Operator(specs::dirichlet(f.nu))).value *
                  det_zeta_closed_form(Operator(specs::robin(f.nu, bc.alpha))).value;
          CHECK(std::abs(split - f.factor) <= 1e-12 * f.factor);
        }
      }
  }
}

TEST_CASE("edge eigenvalues are excluded with a warning") {
  auto c = circle();
  c.m = 3;  // k = 1: B window is lambda < 4 - 1/4
  c.ccl_spectra[0] = {{0.0, 1}, {3.75, 2}};
  c.ccl_spectra[1] = {{0.0, 1}};
  c.ccl_spectra[2] = {{0.0, 1}};
  c.harmonic_dims = {{0, 1}, {1, 1}, {2, 1}};
  const auto d = contribution_sets(c, 1);
  CHECK(d.B_k.empty());
  CHECK_FALSE(d.warnings.empty());
}

TEST_CASE("cone input errors") {
  auto c = circle();
  c.spectral_cutoff = 2.0;
  CHECK_THROWS_AS(contribution_sets(c, 1), SchemaError);
  c = circle();
  c.R = 2.0;
  CHECK_THROWS_AS(cone_determinant(c, 1), UnsupportedError);
  c = circle();
  c.ccl_spectra[0][0].second = 3;  // harmonic multiplicity mismatch
  CHECK_THROWS_AS(validate_cone(c), SchemaError);
  c = circle();
  c.ccl_spectra[0].push_back({-1.0, 1});
  CHECK_THROWS_AS(validate_cone(c), SchemaError);
}

TEST_CASE("relative conditions at R") {
  auto r = relative_bc_at_R(1, 2);
  CHECK(r.paired_coexact.alpha == doctest::Approx(-0.5));
  CHECK_FALSE(r.tangential_k.is_robin());
  r = relative_bc_at_R(2, 3);
  CHECK(r.tangential_k_minus_1.alpha == doctest::Approx(0.0));
  for (int k = 0; k <= 4; ++k) CHECK_FALSE(relative_bc_at_R(k, 4).tangential_k.is_robin());
  CHECK(relative_bc_at_R(1, 2, 2.0).paired_coexact.alpha == doctest::Approx(-0.25));
  CHECK_THROWS_AS(relative_bc_at_R(5, 3), DomainError);
}
