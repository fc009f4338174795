#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "conedet/boundary.hpp"

namespace conedet {

// Cross-section data of a bounded generalized cone (0, R] x N, dim N = m - 1.
struct ConeSpec {
  int m = 2;
  double R = 1.0;
  // degree -> (lambda, multiplicity) for the coclosed Laplacian on N
  std::map<int, std::vector<std::pair<double, int>>> ccl_spectra;
  std::map<int, int> harmonic_dims;
  // The supplied spectra are complete below this value.
  double spectral_cutoff = 4.0;
};

// Structural checks; throws SchemaError.
void validate_cone(const ConeSpec& cone);

struct NuEntry {
  double nu = 0.0;
  double lambda = 0.0;
  int mult = 1;
};

enum class ComponentSource { HarmonicK, HarmonicKm1, Coclosed, Exact, Paired };
std::string to_string(ComponentSource s);

struct ComponentFactor {
  ComponentSource source;
  double nu = 0.0;      // NaN-free; 0 for the harmonic (k-1)-form factor
  double lambda = 0.0;
  int multiplicity = 1;
  double factor = 1.0;  // per copy
};

struct DegreeContribution {
  int k = 0;
  bool window_active = false;
  std::vector<NuEntry> A_k, A_tilde_km2, B_k;
  double P_k = 1.0;
  std::vector<ComponentFactor> per_component;
  std::vector<std::string> warnings;
};

DegreeContribution contribution_sets(const ConeSpec& cone, int k);
double cone_determinant(const ConeSpec& cone, int k);
std::vector<ComponentFactor> component_report(const ConeSpec& cone, int k);

// Conditions at x = R induced by the relative boundary conditions.
struct RelativeBC {
  RegularBC tangential_k;          // degree-k tangential part
  RegularBC tangential_k_minus_1;  // degree-(k-1) tangential part
  RegularBC paired_exact;          // exact member of a paired block
  RegularBC paired_coexact;        // coexact member of a paired block
};

RelativeBC relative_bc_at_R(int k, int m, double R = 1.0);

}  // namespace conedet
