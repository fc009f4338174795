#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "conedet/cone.hpp"
#include "conedet/detcalc.hpp"
#include "conedet/errors.hpp"
#include "spec_io.hpp"

namespace conedet::cli {

namespace {

using io::json;

struct Input {
  std::string bytes;
  json doc;
};

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  Input inp;
  inp.bytes = ss.str();
  try {
    inp.doc = json::parse(inp.bytes);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("input is not valid JSON: ") + e.what());
  }
  return inp;
}

json header(const RunConfig& cfg, const Input& inp) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["command"] = cfg.command;
  j["spec_hash"] = io::spec_hash(inp.bytes);
  return j;
}

json list_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string csv_number(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void emit_csv_scalars(const json& j, std::ostream& out) {
  out << "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_number_float()) out << it.key() << "," << csv_number(v.get<double>()) << "\n";
    else if (v.is_primitive()) out << it.key() << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

void emit(const RunConfig& cfg, const json& j, std::ostream& out,
          const char* table_key = nullptr) {
  if (cfg.format == "json") {
    out << io::dump(j) << "\n";
    return;
  }
  if (!table_key || !j.contains(table_key)) {
    emit_csv_scalars(j, out);
    return;
  }
  const json& rows = j[table_key];
  if (rows.empty()) return;
  std::vector<std::string> cols;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
    if (it.value().is_primitive()) cols.push_back(it.key());
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < cols.size(); ++i) {
      const json& v = r[cols[i]];
      out << (i ? "," : "");
      if (v.is_number_float()) out << csv_number(v.get<double>());
      else if (v.is_string()) out << v.get<std::string>();
      else out << v.dump();
    }
    out << "\n";
  }
}

bool wronskian_applicable(const Operator& op) {
  const auto& s = op.spec();
  return op.q() == 1 && s.R == 1.0 && std::abs(s.A(0, 0)) == 0.0 && std::abs(s.B(0, 0)) != 0.0;
}

json report_json(const DeterminantReport& r) {
  json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["k0"] = r.k0;
  j["log_singular"] = r.log_singular;
  j["label"] = r.label;
  j["t_values"] = list_json(r.t_values);
  json d = json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = v;
  j["diagnostics"] = d;
  return j;
}

int cmd_validate(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const OperatorSpec spec = io::parse_operator_spec(inp.doc);
  const ValidationReport rep = validate(spec);
  json j = header(cfg, inp);
  j["ok"] = rep.ok();
  j["violations"] = rep.violations;
  j["messages"] = rep.messages;
  emit(cfg, j, out);
  return rep.ok() ? kOk : kSchema;
}

int cmd_eval_f(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  if (!cfg.mu) throw SchemaError("eval-f requires --mu");
  const Operator op(io::parse_operator_spec(inp.doc));
  const cplx mu = *cfg.mu;
  const cplx f = eval_F(op, mu);
  json j = header(cfg, inp);
  j["mu"] = io::cplx_json(mu);
  j["F"] = io::cplx_json(f);
  j["F_normalized"] = (f * std::conj(op.phase())).real();
  emit(cfg, j, out);
  return kOk;
}

int cmd_f_at_zero(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const Operator op(io::parse_operator_spec(inp.doc));
  const cplx f0 = eval_F_at_zero(op);
  json j = header(cfg, inp);
  j["F0"] = io::cplx_json(f0);
  j["F0_normalized"] = (f0 * std::conj(op.phase())).real();
  j["kernel_order"] = kernel_order(op);
  const auto& cv = op.characteristic();
  j["alpha0"] = cv.alpha0;
  j["j0"] = cv.j0;
  j["a0"] = io::cplx_json(cv.a0);
  emit(cfg, j, out);
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const Operator op(io::parse_operator_spec(inp.doc));
  const Spectrum sp = find_spectrum(op, cfg.mu_max);
  json j = header(cfg, inp);
  j["mu_max"] = sp.mu_max;
  j["x_star"] = sp.x_star;
  j["certified"] = sp.certified;
  j["positive"] = list_json(sp.positive);
  j["negative"] = list_json(sp.negative);
  j["suspect"] = list_json(sp.suspect);
  j["notes"] = sp.notes;
  json rows = json::array();
  for (size_t i = 0; i < sp.negative.size(); ++i)
    rows.push_back({{"kind", "negative"}, {"index", i + 1}, {"mu", sp.negative[i]},
                    {"eigenvalue", -sp.negative[i] * sp.negative[i]}});
  for (size_t i = 0; i < sp.positive.size(); ++i)
    rows.push_back({{"kind", "positive"}, {"index", i + 1}, {"mu", sp.positive[i]},
                    {"eigenvalue", sp.positive[i] * sp.positive[i]}});
  j["eigenvalues"] = rows;
  emit(cfg, j, out, "eigenvalues");
  return kOk;
}

int cmd_det(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const Operator op(io::parse_operator_spec(inp.doc));
  std::string method = cfg.method;
  if (method == "auto") method = kernel_order(op) == 0 ? "closed" : "regularized";
  DeterminantReport rep;
  json checks = json::object();
  bool concordant = true;
  if (method == "closed") {
    rep = det_zeta_closed_form(op);
    try {
      const DeterminantReport ft = det_zeta_finite_t(op, cfg.t_abs);
      const double d = rel_dev(ft.value, rep.value);
      checks["finite_t"] = {{"t", cfg.t_abs}, {"value", ft.value}, {"rel_dev", d}};
      concordant = concordant && d <= std::max(cfg.tol, 1e-6);
    } catch (const Error& e) {
      checks["finite_t"] = {{"t", cfg.t_abs}, {"skipped", e.what()}};
    }
    if (wronskian_applicable(op)) {
      const double w = det_wronskian_scalar(op.nus()[0], op.bc());
      const double d = rel_dev(w, rep.value);
      checks["wronskian"] = {{"value", w}, {"rel_dev", d}};
      concordant = concordant && d <= std::max(cfg.tol, 1e-10);
    }
  } else if (method == "finite-t") {
    rep = det_zeta_finite_t(op, cfg.t_abs);
  } else if (method == "regularized") {
    rep = det_zeta_regularized(op);
  } else if (method == "wronskian") {
    if (!wronskian_applicable(op))
      throw SchemaError("wronskian method needs a scalar spec with A = 0 and R = 1");
    rep.value = det_wronskian_scalar(op.nus()[0], op.bc());
    rep.method = DetMethod::Wronskian;
  } else {
    throw SchemaError("unknown --method '" + cfg.method + "'");
  }
  json j = header(cfg, inp);
  const json body = report_json(rep);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  j["cross_checks"] = checks;
  j["concordant"] = concordant;
  emit(cfg, j, out);
  return kOk;
}

json zeta_json(const ZetaEstimate& z) {
  return {{"re", z.value.real()}, {"im", z.value.imag()}, {"error", z.error},
          {"roots_used", z.roots_used}, {"t", z.t}, {"X", z.X}};
}

int cmd_zeta(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const Operator op(io::parse_operator_spec(inp.doc));
  double mu_max = cfg.mu_max;
  if (cfg.min_roots > 0)
    mu_max = std::max(mu_max, (cfg.min_roots + 20) * kPi / (op.q() * op.R()));
  const Spectrum sp = find_spectrum(op, mu_max);
  const ZetaEstimate direct = zeta_direct(sp, cfg.s);
  json j = header(cfg, inp);
  j["s"] = cfg.s;
  j["mu_max"] = mu_max;
  j["direct"] = zeta_json(direct);
  try {
    const ZetaEstimate contour = zeta_contour(op, cfg.s);
    j["contour"] = zeta_json(contour);
    j["rel_diff"] = std::abs(contour.value - direct.value) / std::abs(contour.value);
  } catch (const UnsupportedError& e) {
    j["contour"] = {{"skipped", e.what()}};
  }
  emit(cfg, j, out);
  return kOk;
}

int cmd_cone(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const ConeSpec cone = io::parse_cone_spec(inp.doc);
  if (cone.R != 1.0) throw SchemaError("cone assembly requires R = 1");
  validate_cone(cone);
  std::vector<int> degrees;
  if (cfg.k) degrees.push_back(*cfg.k);
  else for (int k = 0; k <= cone.m; ++k) degrees.push_back(k);
  auto nus = [](const std::vector<NuEntry>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back({{"nu", e.nu}, {"lambda", e.lambda}, {"mult", e.mult}});
    return a;
  };
  json rows = json::array();
  for (int k : degrees) {
    const DegreeContribution dc = contribution_sets(cone, k);
    const double value = cone_determinant(cone, k);
    double product = 1.0;
    json comps = json::array();
    for (const auto& c : dc.per_component) {
      product *= std::pow(c.factor, c.multiplicity);
      comps.push_back({{"source", to_string(c.source)}, {"nu", c.nu}, {"lambda", c.lambda},
                       {"multiplicity", c.multiplicity}, {"factor", c.factor}});
    }
    rows.push_back({{"k", k}, {"value", value}, {"window_active", dc.window_active},
                    {"component_product", product}, {"P_k", dc.P_k}, {"A_k", nus(dc.A_k)},
                    {"A_tilde_k_minus_2", nus(dc.A_tilde_km2)}, {"B_k", nus(dc.B_k)},
                    {"components", comps}, {"warnings", dc.warnings}});
  }
  json j = header(cfg, inp);
  j["m"] = cone.m;
  j["degrees"] = rows;
  emit(cfg, j, out, "degrees");
  return kOk;
}

int cmd_verify_asymptotics(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const Operator op(io::parse_operator_spec(inp.doc));
  json rows = json::array();
  std::vector<double> errs;
  for (double x : cfg.x_list) {
    if (!(x >= 10.0)) throw DomainError("verify-asymptotics: x values must be >= 10");
    const double exact = log_abs_F_imag(op, x);
    const double model = asymptotic_log_F_imag(op, x).real();
    errs.push_back(std::abs(model - exact) / std::abs(exact));
    rows.push_back({{"x", x}, {"log_abs_F", exact}, {"model", model}, {"rel_error", errs.back()}});
  }
  const AsymptoticModel m = asymptotic_model(op);
  json j = header(cfg, inp);
  j["C"] = io::cplx_json(m.C);
  j["exponent"] = m.exponent;
  j["log_power"] = m.log_power;
  j["rows"] = rows;
  j["strictly_decreasing"] = strictly_decreasing(errs);
  emit(cfg, j, out, "rows");
  return kOk;
}

int cmd_verify_contour(const RunConfig& cfg, const Input& inp, std::ostream& out) {
  const Operator op(io::parse_operator_spec(inp.doc));
  std::vector<double> a = cfg.a_list;
  if (a.empty()) {
    const double step = 2.0 * kPi / op.R();
    a = {10.2, 10.2 + step, 10.2 + 2.0 * step};
  }
  const auto res = verify_contour_decay(op, cfg.s, a, cfg.theta);
  json rows = json::array();
  std::vector<double> tot;
  for (const auto& r : res) {
    tot.push_back(r.total);
    rows.push_back({{"a", r.a}, {"total", r.total}, {"segment", r.segment}, {"arcs", r.arcs}});
  }
  json j = header(cfg, inp);
  j["s"] = cfg.s;
  j["theta"] = cfg.theta;
  j["rows"] = rows;
  j["strictly_decreasing"] = strictly_decreasing(tot);
  j["last_below_half_first"] = tot.size() >= 2 && tot.back() < 0.5 * tot.front();
  emit(cfg, j, out, "rows");
  return kOk;
}

void check_config(const RunConfig& cfg) {
  const auto& cmds = commands();
  if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end())
    throw SchemaError("unknown command '" + cfg.command + "'");
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-2)) throw SchemaError("--tol must lie in (0, 1e-2]");
  if (!(cfg.mu_max > 0.0)) throw SchemaError("--mu-max must be positive");
  if (!(cfg.t_abs > 0.0)) throw SchemaError("--t must be positive");
  if (cfg.format != "json" && cfg.format != "csv") throw SchemaError("--format must be json or csv");
}

void print_error(std::ostream& err, const char* kind, const std::string& what) {
  json e;
  e["error"] = kind;
  e["message"] = what;
  err << io::dump(e, -1) << "\n";
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "eval-f", "f-at-zero", "spectrum", "det",
                                          "zeta", "cone", "verify-asymptotics", "verify-contour"};
  return c;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_config(cfg);
    const Input inp = load(cfg.input_path);
    const std::string& c = cfg.command;
    if (c == "validate") return cmd_validate(cfg, inp, out);
    if (c == "eval-f") return cmd_eval_f(cfg, inp, out);
    if (c == "f-at-zero") return cmd_f_at_zero(cfg, inp, out);
    if (c == "spectrum") return cmd_spectrum(cfg, inp, out);
    if (c == "det") return cmd_det(cfg, inp, out);
    if (c == "zeta") return cmd_zeta(cfg, inp, out);
    if (c == "cone") return cmd_cone(cfg, inp, out);
    if (c == "verify-asymptotics") return cmd_verify_asymptotics(cfg, inp, out);
    return cmd_verify_contour(cfg, inp, out);
  } catch (const SchemaError& e) {
    print_error(err, "schema", e.what());
    return kSchema;
  } catch (const DomainError& e) {
    print_error(err, "domain", e.what());
    return kSchema;
  } catch (const NumericalError& e) {
    print_error(err, "numerical", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    print_error(err, "numerical", e.what());
    return kNumerical;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and zeta-regularized determinants of regular-singular operators"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  RunConfig cfg;
  std::string mu_text;
  app.add_option("command", cfg.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("input", cfg.input_path, "Operator or cone spec (JSON)")->required();
  app.add_option("--tol", cfg.tol, "Concordance tolerance for cross checks");
  app.add_option("--mu-max", cfg.mu_max, "Upper end of the real-axis root scan");
  app.add_option("--t", cfg.t_abs, "Radius of the small contour");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--theta", cfg.theta, "Opening angle of the decay contour");
  app.add_option("--a-list", cfg.a_list, "Abscissae for verify-contour")->delimiter(',');
  app.add_option("--x-list", cfg.x_list, "Abscissae for verify-asymptotics")->delimiter(',');
  app.add_option("--mu", mu_text, "Evaluation point re[,im] for eval-f");
  app.add_option("--s", cfg.s, "Zeta argument");
  app.add_option("--k", cfg.k, "Form degree for cone");
  app.add_option("--method", cfg.method, "det method")
      ->check(CLI::IsMember({"auto", "closed", "finite-t", "regularized", "wronskian"}));
  app.add_option("--min-roots", cfg.min_roots, "Roots required by the direct zeta sum");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  if (!mu_text.empty()) {
    double re = 0.0, im = 0.0;
    const auto comma = mu_text.find(',');
    try {
      size_t used = 0;
      const std::string a = mu_text.substr(0, comma);
      re = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      if (comma != std::string::npos) {
        const std::string b = mu_text.substr(comma + 1);
        im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
      }
    } catch (const std::exception&) {
      print_error(err, "schema", "--mu expects re or re,im");
      return kSchema;
    }
    cfg.mu = cplx(re, im);
  }
  return run(cfg, out, err);
}

}  // namespace conedet::cli
