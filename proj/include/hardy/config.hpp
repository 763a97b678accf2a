#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "hardy/inequalities.hpp"

namespace hardy {

/// One [case name] section before grid expansion.
struct CaseSpec {
  std::string name;
  int line = 0;
  Theorem theorem = Theorem::FractionalHardy;
  std::string space;
  std::vector<double> s, p, q;
  std::vector<std::string> functions;
  std::string v = "unit", z = "unit", g = "unit", h = "unit";
};

struct RunConfig {
  QuadratureConfig quad;
  std::vector<CaseSpec> cases;
  std::string output_json;
  std::string output_csv;

  /// Grid expansion, sorted by case id.
  std::vector<InequalityCase> expand() const;
  nlohmann::json to_json() const;
};

/// INI-style format: a [run] section with quadrature settings and outputs,
/// then one [case name] section per family of cases. Values may be lists
/// (comma separated at bracket depth 0) or ranges lo:hi:step. Errors name the
/// source and line.
RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig load_config(const std::string& path);

/// "0.55:0.95:0.1", "2", "2,3" -> values.
std::vector<double> parse_grid(const std::string& text);
/// Splits on commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& text);

/// Runs every case on up to worker_count(quad) threads; results in input order.
std::vector<VerificationReport> run_cases(const std::vector<InequalityCase>& cases, const QuadratureConfig& quad);

}  // namespace hardy
