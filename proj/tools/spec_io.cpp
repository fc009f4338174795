#include "spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "conedet/errors.hpp"

namespace conedet::io {

namespace {

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key + ": missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(path + ": must be finite");
  return d;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path + ": expected an integer");
  return v.get<int>();
}

cplx complex_entry(const json& v, const std::string& path) {
  if (v.is_number()) return number(v, path);
  if (!v.is_object()) throw SchemaError(path + ": expected a number or {re, im}");
  double re = 0.0, im = 0.0;
  if (v.contains("re")) re = number(v["re"], path + ".re");
  if (v.contains("im")) im = number(v["im"], path + ".im");
  return {re, im};
}

CMatrix matrix(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  CMatrix M(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = v[i];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
      throw SchemaError(rp + ": expected " + std::to_string(rows) + " entries");
    for (Eigen::Index j = 0; j < rows; ++j)
      M(i, j) = complex_entry(row[j], rp + "[" + std::to_string(j) + "]");
  }
  return M;
}

int degree_key(const std::string& key, const std::string& path) {
  try {
    size_t pos = 0;
    const int d = std::stoi(key, &pos);
    if (pos == key.size()) return d;
  } catch (const std::exception&) {
  }
  throw SchemaError(path + ": degree key '" + key + "' is not an integer");
}

void write(std::ostringstream& os, const json& j, int indent, int level) {
  const std::string pad(indent > 0 ? indent * (level + 1) : 0, ' ');
  const std::string close(indent > 0 ? indent * level : 0, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << json(it.key()).dump() << sep;
        write(os, it.value(), indent, level + 1);
      }
      os << nl << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      os << "[" << nl;
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << "," << nl;
        os << pad;
        write(os, j[i], indent, level + 1);
      }
      os << nl << close << "]";
      return;
    }
    case json::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) { os << "null"; return; }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

OperatorSpec parse_operator_spec(const json& doc) {
  OperatorSpec s;
  s.R = number(field(doc, "R", "$"), "$.R");
  const json& lam = field(doc, "lambdas", "$");
  if (!lam.is_array() || lam.empty()) throw SchemaError("$.lambdas: expected a non-empty array");
  for (size_t i = 0; i < lam.size(); ++i)
    s.lambdas.push_back(number(lam[i], "$.lambdas[" + std::to_string(i) + "]"));
  s.q0 = integer(field(doc, "q0", "$"), "$.q0");
  s.A = matrix(field(doc, "A", "$"), "$.A");
  s.B = matrix(field(doc, "B", "$"), "$.B");
  const json& bc = field(doc, "regular_bc", "$");
  const json& type = field(bc, "type", "$.regular_bc");
  if (!type.is_string()) throw SchemaError("$.regular_bc.type: expected a string");
  const std::string t = type.get<std::string>();
  if (t == "dirichlet") {
    s.bc = RegularBC::dirichlet();
  } else if (t == "robin") {
    s.bc = RegularBC::robin(number(field(bc, "alpha", "$.regular_bc"), "$.regular_bc.alpha"));
  } else {
    throw SchemaError("$.regular_bc.type: must be 'dirichlet' or 'robin'");
  }
  return s;
}

ConeSpec parse_cone_spec(const json& doc) {
  ConeSpec c;
  c.m = integer(field(doc, "m", "$"), "$.m");
  if (doc.contains("R")) c.R = number(doc["R"], "$.R");
  if (doc.contains("spectral_cutoff"))
    c.spectral_cutoff = number(doc["spectral_cutoff"], "$.spectral_cutoff");
  const json& spectra = field(doc, "ccl_spectra", "$");
  if (!spectra.is_object()) throw SchemaError("$.ccl_spectra: expected an object");
  for (auto it = spectra.begin(); it != spectra.end(); ++it) {
    const std::string path = "$.ccl_spectra." + it.key();
    const int deg = degree_key(it.key(), path);
    if (!it.value().is_array()) throw SchemaError(path + ": expected an array");
    auto& list = c.ccl_spectra[deg];
    for (size_t i = 0; i < it.value().size(); ++i) {
      const json& e = it.value()[i];
      const std::string ep = path + "[" + std::to_string(i) + "]";
      if (!e.is_array() || e.size() != 2) throw SchemaError(ep + ": expected [lambda, mult]");
      list.emplace_back(number(e[0], ep + "[0]"), integer(e[1], ep + "[1]"));
    }
  }
  const json& dims = field(doc, "harmonic_dims", "$");
  if (!dims.is_object()) throw SchemaError("$.harmonic_dims: expected an object");
  for (auto it = dims.begin(); it != dims.end(); ++it) {
    const std::string path = "$.harmonic_dims." + it.key();
    c.harmonic_dims[degree_key(it.key(), path)] = integer(it.value(), path);
  }
  return c;
}

std::string spec_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string dump(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace conedet::io
