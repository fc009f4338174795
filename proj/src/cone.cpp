#include "conedet/cone.hpp"

#include <cmath>
#include <sstream>

#include "conedet/errors.hpp"

namespace conedet {

namespace {

constexpr double kEdgeTol = 1e-12;

double sqrt2pi() { return std::sqrt(2.0 * kPi); }

double one_sided(double nu, double w) {
  return sqrt2pi() * w / (std::pow(2.0, nu) * specialfn::gamma_fn(1.0 + nu));
}

double paired(double nu, double shift) {
  const double g = specialfn::gamma_fn(1.0 + nu);
  return 2.0 * kPi * (nu + shift) / (std::pow(2.0, 2.0 * nu) * g * g);
}

bool is_zero(double lam) { return std::abs(lam) <= kEdgeTol; }

// Entries of degree j with lo <(=) lambda < hi, nu = sqrt(lambda + c^2).
std::vector<NuEntry> window(const ConeSpec& cone, int j, double c, bool include_zero,
                            double hi, std::vector<std::string>* warn) {
  std::vector<NuEntry> out;
  if (j < 0 || j > cone.m - 1 || hi <= 0.0) return out;
  if (hi > cone.spectral_cutoff + kEdgeTol) {
    std::ostringstream os;
    os << "degree " << j << " spectrum is only complete below " << cone.spectral_cutoff
       << " but the window reaches " << hi;
    throw SchemaError(os.str());
  }
  auto it = cone.ccl_spectra.find(j);
  if (it == cone.ccl_spectra.end())
    throw SchemaError("missing coclosed spectrum for degree " + std::to_string(j));
  for (const auto& [lam, mult] : it->second) {
    if (is_zero(lam) && !include_zero) continue;
    if (std::abs(lam - hi) <= kEdgeTol * std::max(1.0, hi)) {
      std::ostringstream os;
      os << "degree " << j << ": lambda = " << lam << " sits on the window edge " << hi
         << " and is excluded";
      warn->push_back(os.str());
      continue;
    }
    if (lam >= hi) continue;
    out.push_back({std::sqrt(std::max(lam, 0.0) + c * c), lam, mult});
  }
  return out;
}

int harmonic_dim(const ConeSpec& cone, int j) {
  auto it = cone.harmonic_dims.find(j);
  return it == cone.harmonic_dims.end() ? 0 : it->second;
}

double P_factor(const ConeSpec& cone, int k) {
  const int m = cone.m, n = m - 1;
  const int h = harmonic_dim(cone, k - 1);
  if (m % 2 == 0 && k == m / 2 + 1) return std::pow(std::sqrt(kPi / 2.0), h);
  if (m % 2 == 1 && k == n / 2 + 1) return std::pow(2.0, h);
  if (m % 2 == 1 && k == n / 2 + 2) return std::pow(2.0 / 3.0, h);
  return 1.0;
}

void require_unit_radius(const ConeSpec& cone) {
  if (cone.R != 1.0)
    throw UnsupportedError("cone assembly is only defined for R = 1");
}

}  // namespace

std::string to_string(ComponentSource s) {
  switch (s) {
    case ComponentSource::HarmonicK: return "harmonic_k";
    case ComponentSource::HarmonicKm1: return "harmonic_k_minus_1";
    case ComponentSource::Coclosed: return "coclosed";
    case ComponentSource::Exact: return "exact";
    case ComponentSource::Paired: return "paired";
  }
  return "unknown";
}

void validate_cone(const ConeSpec& cone) {
  if (cone.m < 2) throw SchemaError("cone: m must be at least 2");
  if (!(cone.R > 0.0)) throw SchemaError("cone: R must be positive");
  if (!(cone.spectral_cutoff > 0.0)) throw SchemaError("cone: spectral_cutoff must be positive");
  for (const auto& [j, list] : cone.ccl_spectra) {
    if (j < 0 || j > cone.m - 1)
      throw SchemaError("cone: spectrum degree " + std::to_string(j) + " outside [0, n]");
    int zero_mult = 0;
    double prev = -1.0;
    for (const auto& [lam, mult] : list) {
      if (!(lam >= -kEdgeTol) || !std::isfinite(lam))
        throw SchemaError("cone: eigenvalues must be non-negative");
      if (mult < 1) throw SchemaError("cone: multiplicities must be positive");
      if (lam < prev) throw SchemaError("cone: spectra must be sorted ascending");
      prev = lam;
      if (is_zero(lam)) zero_mult += mult;
    }
    if (zero_mult != harmonic_dim(cone, j))
      throw SchemaError("cone: degree " + std::to_string(j) +
                        " zero eigenvalue multiplicity differs from harmonic_dims");
  }
  for (const auto& [j, d] : cone.harmonic_dims)
    if (d < 0 || j < 0 || j > cone.m - 1) throw SchemaError("cone: bad harmonic_dims entry");
}

DegreeContribution contribution_sets(const ConeSpec& cone, int k) {
  validate_cone(cone);
  const int m = cone.m;
  if (k < 0 || k > m) throw DomainError("contribution_sets: degree outside [0, m]");
  DegreeContribution dc;
  dc.k = k;
  const double half = m / 2.0;
  dc.window_active = k > half - 2.0 && k < half + 2.0;
  if (!dc.window_active) return dc;

  const double cA = k + 1 - half;
  dc.A_k = window(cone, k, cA, true, 1.0 - cA * cA, &dc.warnings);
  const double cAt = (k - 2) + 1 - half;
  dc.A_tilde_km2 = window(cone, k - 2, cAt, false, 1.0 - cAt * cAt, &dc.warnings);
  const double cB = k - half;
  dc.B_k = window(cone, k - 1, cB, false, 4.0 - cB * cB, &dc.warnings);
  dc.P_k = P_factor(cone, k);
  dc.per_component = component_report(cone, k);
  return dc;
}

double cone_determinant(const ConeSpec& cone, int k) {
  require_unit_radius(cone);
  validate_cone(cone);
  const int m = cone.m;
  const double half = m / 2.0;
  if (!(k > half - 2.0 && k < half + 2.0)) return 1.0;
  std::vector<std::string> warn;
  double v = 1.0;
  const double cB = k - half;
  for (const auto& e : window(cone, k - 1, cB, false, 4.0 - cB * cB, &warn))
    v *= std::pow(2.0 * kPi * (e.nu - k + half) /
                      (std::pow(2.0, 2.0 * e.nu) * std::pow(specialfn::gamma_fn(1.0 + e.nu), 2)),
                  e.mult);
  if (k < half) {
    const double cA = k + 1 - half;
    for (const auto& e : window(cone, k, cA, true, 1.0 - cA * cA, &warn))
      v *= std::pow(sqrt2pi() / (std::pow(2.0, e.nu) * specialfn::gamma_fn(1.0 + e.nu)), e.mult);
  } else if (k > half) {
    const double c = (k - 2) + 1 - half;
    for (const auto& e : window(cone, k - 2, c, false, 1.0 - c * c, &warn))
      v *= std::pow(sqrt2pi() * (e.nu + half + 1 - k) /
                        (std::pow(2.0, e.nu) * specialfn::gamma_fn(1.0 + e.nu)),
                    e.mult);
    v *= P_factor(cone, k);
  }
  return v;
}

std::vector<ComponentFactor> component_report(const ConeSpec& cone, int k) {
  require_unit_radius(cone);
  validate_cone(cone);
  const int m = cone.m;
  const double half = m / 2.0;
  std::vector<ComponentFactor> out;
  if (!(k > half - 2.0 && k < half + 2.0)) return out;
  std::vector<std::string> warn;

  const double cA = k + 1 - half;
  for (const auto& e : window(cone, k, cA, true, 1.0 - cA * cA, &warn)) {
    const auto src = is_zero(e.lambda) ? ComponentSource::HarmonicK : ComponentSource::Coclosed;
    out.push_back({src, e.nu, e.lambda, e.mult, one_sided(e.nu, 1.0)});
  }
  const double P = P_factor(cone, k);
  if (P != 1.0) out.push_back({ComponentSource::HarmonicKm1, 0.0, 0.0, 1, P});
  const double cAt = (k - 2) + 1 - half;
  for (const auto& e : window(cone, k - 2, cAt, false, 1.0 - cAt * cAt, &warn))
    out.push_back({ComponentSource::Exact, e.nu, e.lambda, e.mult,
                   one_sided(e.nu, e.nu + half + 1 - k)});
  const double cB = k - half;
  for (const auto& e : window(cone, k - 1, cB, false, 4.0 - cB * cB, &warn))
    out.push_back({ComponentSource::Paired, e.nu, e.lambda, e.mult, paired(e.nu, half - k)});
  return out;
}

RelativeBC relative_bc_at_R(int k, int m, double R) {
  if (m < 2 || k < 0 || k > m) throw DomainError("relative_bc_at_R: need 0 <= k <= m, m >= 2");
  if (!(R > 0.0)) throw DomainError("relative_bc_at_R: R must be positive");
  const double n = m - 1;
  RelativeBC r;
  r.tangential_k = RegularBC::dirichlet();
  r.tangential_k_minus_1 = RegularBC::robin(-(k - 1 - n / 2.0) / R);
  r.paired_exact = RegularBC::dirichlet();
  r.paired_coexact = RegularBC::robin(-(k - n / 2.0) / R);
  return r;
}

}  // namespace conedet
