#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "hardy/discrete_oracle.hpp"
#include "hardy/inequalities.hpp"

namespace hardy {

/// Rounds to 12 significant digits; non-finite values become null.
nlohmann::json number(double v);

nlohmann::json to_json(const IntegralResult& r);
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const BetaEstimate& b);
nlohmann::json to_json(const OracleSuiteResult& s);

/// Stable CSV layout shared by `verify` and `sweep`.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const VerificationReport& r);

struct RunSummary {
  int pass = 0, fail = 0, vacuous = 0, hypothesis_violated = 0, not_admissible = 0, lhs_divergent = 0, error = 0;
  int total() const;
  /// 0 when nothing failed, 2 on any failure, 1 when only errors occurred.
  int exit_code() const;
};
RunSummary summarize(const std::vector<VerificationReport>& reports);
nlohmann::json to_json(const RunSummary& s);

/// Full run document: {"tool", "config", "cases", "summary"}.
nlohmann::json run_document(const std::vector<VerificationReport>& reports, const nlohmann::json& config);

}  // namespace hardy
