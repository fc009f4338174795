#include "conedet/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conedet/errors.hpp"

namespace conedet {

OperatorSpec OperatorSpec::scalar(double nu, cplx a, cplx b, RegularBC bc,
                                  double R) {
  return diagonal({nu}, {a}, {b}, bc, R);
}

OperatorSpec OperatorSpec::diagonal(const std::vector<double>& nus,
                                    const std::vector<cplx>& a,
                                    const std::vector<cplx>& b, RegularBC bc,
                                    double R) {
  if (a.size() != nus.size() || b.size() != nus.size())
    throw SchemaError("diagonal: length mismatch");
  OperatorSpec s;
  s.R = R;
  s.bc = bc;
  const int q = static_cast<int>(nus.size());
  s.A = CMatrix::Zero(q, q);
  s.B = CMatrix::Zero(q, q);
  for (int l = 0; l < q; ++l) {
    s.lambdas.push_back(nus[l] == 0.0 ? -0.25 : nus[l] * nus[l] - 0.25);
    if (nus[l] == 0.0) ++s.q0;
    s.A(l, l) = a[l];
    s.B(l, l) = b[l];
  }
  return s;
}

ValidationReport validate(const OperatorSpec& spec) {
  const int q = spec.q();
  if (q == 0) throw SchemaError("validate: no tangential modes");
  if (spec.A.rows() != q || spec.A.cols() != q || spec.B.rows() != q ||
      spec.B.cols() != q) {
    std::ostringstream os;
    os << "validate: boundary matrices must be " << q << "x" << q << ", got "
       << spec.A.rows() << "x" << spec.A.cols() << " and " << spec.B.rows()
       << "x" << spec.B.cols();
    throw SchemaError(os.str());
  }
  ValidationReport rep;
  auto fail = [&](const char* tag, std::string msg) {
    rep.violations.emplace_back(tag);
    rep.messages.push_back(std::move(msg));
  };
  if (!(spec.R > 0.0) || !std::isfinite(spec.R)) fail("R", "R must be positive");
  if (spec.bc.is_robin() && !std::isfinite(spec.bc.alpha))
    fail("R", "Robin coefficient must be finite");

  bool lam_ok = true;
  for (int l = 0; l < q; ++l) {
    const double lam = spec.lambdas[l];
    if (!(lam >= -0.25 && lam < 0.75)) lam_ok = false;
    if (l > 0 && lam < spec.lambdas[l - 1]) lam_ok = false;
  }
  if (!lam_ok)
    fail("lambdas", "lambdas must be ascending and lie in [-1/4, 3/4)");
  const int lead = static_cast<int>(
      std::count(spec.lambdas.begin(), spec.lambdas.end(), -0.25));
  if (spec.q0 != lead)
    fail("q0", "q0 must count the entries equal to -1/4 (found " +
                   std::to_string(lead) + ")");

  CMatrix block(q, 2 * q);
  block << spec.A, spec.B;
  Eigen::JacobiSVD<CMatrix> svd(block);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  if (!(smax > 0.0) || sv(q - 1) <= kRankTol * smax)
    fail("rank", "the block (A B) does not have full rank q");

  CMatrix Ap = spec.A;
  for (int l = 0; l < std::min(spec.q0, q); ++l) Ap.col(l) *= -1.0;
  const CMatrix M = Ap * spec.B.adjoint();
  const double dev = (M - M.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kSelfAdjointTol)
    fail("self-adjointness", "A' B* deviates from Hermitian by " +
                                 std::to_string(dev));
  return rep;
}

CharacteristicValues characteristic_values(const OperatorSpec& spec) {
  const int q = spec.q();
  const int q0 = spec.q0;
  if (q > 24) throw UnsupportedError("characteristic_values: q too large");
  std::vector<double> nus(q), tau(q, 1.0);
  for (int l = 0; l < q; ++l) {
    nus[l] = l < q0 ? 0.0 : std::sqrt(spec.lambdas[l] + 0.25);
    if (l >= q0)
      tau[l] = specialfn::gamma_fn(1.0 + nus[l]) /
               specialfn::gamma_fn(1.0 - nus[l]) * std::pow(2.0, 2.0 * nus[l]);
  }
  std::vector<Coefficient> raw;
  for (unsigned mask = 0; mask < (1u << q); ++mask) {
    CMatrix M = spec.A;
    int j = 0;
    double alpha = 0.0, weight = 1.0;
    for (int l = 0; l < q; ++l) {
      if (!(mask & (1u << l))) continue;
      M.col(l) = spec.B.col(l);
      weight = -weight * tau[l];
      if (l < q0) ++j; else alpha += nus[l];
    }
    const cplx d = q == 0 ? cplx(1.0) : M.determinant();
    raw.push_back({j, alpha, weight * d});
  }
  std::sort(raw.begin(), raw.end(), [](const Coefficient& a, const Coefficient& b) {
    return a.alpha != b.alpha ? a.alpha < b.alpha : a.j < b.j;
  });

  // Merge numerically equal exponents.
  std::vector<Coefficient> merged;
  for (const auto& c : raw) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Coefficient& m) {
      return m.j == c.j && std::abs(m.alpha - c.alpha) <= kExponentMergeTol;
    });
    if (it == merged.end()) merged.push_back(c); else it->a += c.a;
  }
  double amax = 0.0;
  for (const auto& c : merged) amax = std::max(amax, std::abs(c.a));
  CharacteristicValues cv;
  for (const auto& c : merged)
    if (amax > 0.0 && std::abs(c.a) > 1e-12 * amax) cv.coefficients.push_back(c);
  if (cv.coefficients.empty())
    throw SchemaError("characteristic_values: boundary polynomial vanishes");
  std::sort(cv.coefficients.begin(), cv.coefficients.end(),
            [](const Coefficient& a, const Coefficient& b) {
              return a.alpha != b.alpha ? a.alpha < b.alpha : a.j < b.j;
            });
  const double amin = cv.coefficients.front().alpha;
  const Coefficient* best = nullptr;
  for (const auto& c : cv.coefficients)
    if (std::abs(c.alpha - amin) <= kExponentMergeTol && (!best || c.j < best->j))
      best = &c;
  cv.alpha0 = best->alpha;
  cv.j0 = best->j;
  cv.a0 = best->a;
  return cv;
}

Operator::Operator(OperatorSpec spec) : spec_(std::move(spec)) {
  const ValidationReport rep = validate(spec_);
  if (!rep.ok()) {
    std::string msg = "invalid operator spec:";
    for (const auto& m : rep.messages) msg += " [" + m + "]";
    throw SchemaError(msg);
  }
  const int q = spec_.q();
  nus_.resize(q);
  for (int l = 0; l < q; ++l)
    nus_[l] = l < spec_.q0 ? 0.0 : std::sqrt(spec_.lambdas[l] + 0.25);
  const double sR = std::sqrt(spec_.R);
  kappa_ = 1.0 / (2.0 * sR) + spec_.bc.alpha * sR;
  chars_ = characteristic_values(spec_);
  phase_ = chars_.a0 / std::abs(chars_.a0);
}

ScalarClass classify_scalar(double lambda) {
  if (!(lambda >= -0.25)) throw DomainError("classify_scalar: lambda < -1/4");
  const double nu = std::sqrt(lambda + 0.25);
  return {lambda < 0.75 ? ScalarClass::Regime::LimitCircle
                        : ScalarClass::Regime::LimitPoint,
          nu - 0.5, nu};
}

ExtensionRows extension_rows(ExtensionKind kind, double p, double R) {
  if (!(p > -1.5 && p < 0.5))
    throw DomainError("extension_rows: p must lie in (-3/2, 1/2)");
  if (!(R > 0.0)) throw DomainError("extension_rows: R must be positive");
  if (kind == ExtensionKind::D) return {0.0, 1.0, RegularBC::dirichlet()};
  // N: d_p f(R) = f'(R) + (p/R) f(R) = 0; the tip condition is c_1 = 0 in
  // the two-sided regime and c_2 = 0 from p = -1/2 downward.
  const RegularBC bc = RegularBC::robin(p / R);
  if (p > -0.5) return {1.0, 0.0, bc};
  return {0.0, 1.0, bc};
}

std::string to_string(ScalarClass::Regime r) {
  return r == ScalarClass::Regime::LimitCircle ? "lcc" : "lpc";
}

}  // namespace conedet
