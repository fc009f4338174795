#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "conedet/specialfn.hpp"

namespace conedet {

using CMatrix = Eigen::MatrixXcd;

// Condition at the regular end x = R.
struct RegularBC {
  enum class Type { Dirichlet, Robin };
  Type type = Type::Dirichlet;
  double alpha = 0.0;  // phi'(R) + alpha phi(R) = 0

  static RegularBC dirichlet() { return {Type::Dirichlet, 0.0}; }
  static RegularBC robin(double a) { return {Type::Robin, a}; }
  bool is_robin() const { return type == Type::Robin; }
};

// Raw operator data as supplied by the user.
struct OperatorSpec {
  double R = 1.0;
  std::vector<double> lambdas;  // ascending; the first q0 equal -1/4
  int q0 = 0;
  CMatrix A, B;  // q x q, the boundary pair at the tip
  RegularBC bc;

  int q() const { return static_cast<int>(lambdas.size()); }

  // One tangential mode with nu = sqrt(lambda + 1/4).
  static OperatorSpec scalar(double nu, cplx a, cplx b, RegularBC bc,
                             double R = 1.0);
  // Block-diagonal pair (A, B) = (diag a, diag b); nus must be ascending.
  static OperatorSpec diagonal(const std::vector<double>& nus,
                               const std::vector<cplx>& a,
                               const std::vector<cplx>& b, RegularBC bc,
                               double R = 1.0);
};

struct ValidationReport {
  std::vector<std::string> violations;  // tags: "R", "lambdas", "q0", "rank", "self-adjointness"
  std::vector<std::string> messages;
  bool ok() const { return violations.empty(); }
};

// Checks every structural and self-adjointness condition. Throws SchemaError
// only on dimension mismatch, which makes the other checks meaningless.
ValidationReport validate(const OperatorSpec& spec);

inline constexpr double kSelfAdjointTol = 1e-10;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kExponentMergeTol = 1e-9;

struct Coefficient {
  int j = 0;
  double alpha = 0.0;  // half the y-exponent
  cplx a;
};

struct CharacteristicValues {
  std::vector<Coefficient> coefficients;  // sorted by (alpha, j)
  double alpha0 = 0.0;
  int j0 = 0;
  cplx a0;
};

// A validated operator with the derived quantities cached.
class Operator {
 public:
  explicit Operator(OperatorSpec spec);

  const OperatorSpec& spec() const { return spec_; }
  int q() const { return spec_.q(); }
  int q0() const { return spec_.q0; }
  double R() const { return spec_.R; }
  const RegularBC& bc() const { return spec_.bc; }
  const std::vector<double>& nus() const { return nus_; }
  double kappa() const { return kappa_; }  // Robin only
  const CharacteristicValues& characteristic() const { return chars_; }
  // Unit phase a0/|a0|; F divided by it is real on both axes.
  cplx phase() const { return phase_; }

 private:
  OperatorSpec spec_;
  std::vector<double> nus_;
  double kappa_ = 0.0;
  CharacteristicValues chars_;
  cplx phase_;
};

CharacteristicValues characteristic_values(const OperatorSpec& spec);

struct ScalarClass {
  enum class Regime { LimitPoint, LimitCircle };
  Regime regime;
  double p;
  double nu;
};

ScalarClass classify_scalar(double lambda);

enum class ExtensionKind { D, N };

struct ExtensionRows {
  cplx A_row, B_row;
  RegularBC bc;
};

// Tip rows and the condition at R for the D/N realizations of the model
// operator with exponent parameter p = nu - 1/2.
ExtensionRows extension_rows(ExtensionKind kind, double p, double R = 1.0);

std::string to_string(ScalarClass::Regime r);

}  // namespace conedet
