#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conedet/specialfn.hpp"

namespace conedet::cli {

inline constexpr const char* kToolName = "conedet";
inline constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kUsage = 1, kSchema = 2, kNumerical = 3 };

struct RunConfig {
  std::string command;  // validate, eval-f, f-at-zero, spectrum, det, zeta, cone,
                        // verify-asymptotics, verify-contour
  std::string input_path;
  double tol = 1e-8;
  double mu_max = 100.0;
  double t_abs = 0.1;
  std::string format = "json";
  double theta = kPi / 4.0;
  std::vector<double> a_list;
  std::vector<double> x_list{20.0, 40.0, 80.0};
  std::optional<cplx> mu;
  double s = 2.0;
  std::optional<int> k;
  std::string method = "auto";
  int min_roots = 0;
};

const std::vector<std::string>& commands();

// Executes one command; the report goes to out, diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// argv front end used by the executable.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace conedet::cli
