#include "hardy/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hardy {
namespace {

std::string fmt12(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(fmt12(v));
}

nlohmann::json to_json(const IntegralResult& r) {
  return {{"value", number(r.value)},
          {"error_estimate", number(r.error_estimate)},
          {"truncation_bound", number(r.truncation_bound)},
          {"samples_used", r.samples_used}};
}

nlohmann::json to_json(const AdmissibilityReport& r) {
  return {{"D1", number(r.D1)},
          {"D1_err", number(r.D1_err)},
          {"smallness", number(r.smallness)},
          {"smallness_err", number(r.smallness_err)},
          {"admissible", r.admissible},
          {"finite", r.finite},
          {"method", r.method},
          {"argmax_radius", number(r.argmax_radius)},
          {"warnings", r.warnings}};
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j = {{"case_id", r.case_id},
                      {"theorem", to_string(r.theorem)},
                      {"space", r.space},
                      {"function", r.function},
                      {"s", number(r.s)},
                      {"p", number(r.p)},
                      {"q", number(r.q)},
                      {"status", to_string(r.status)},
                      {"pass", r.pass},
                      {"vacuous", r.vacuous},
                      {"message", r.message},
                      {"lhs", to_json(r.lhs)},
                      {"rhs", to_json(r.rhs)},
                      {"constant",
                       {{"value", number(r.constant.value)},
                        {"provenance", r.constant.provenance},
                        {"formula", r.constant.formula}}},
                      {"ratio", r.ratio ? number(*r.ratio) : nlohmann::json(nullptr)},
                      {"D1", r.d1 ? to_json(*r.d1) : nlohmann::json(nullptr)},
                      {"notes", r.notes}};
  if (r.beta > 0.0) j["beta"] = number(r.beta);
  nlohmann::json extras = nlohmann::json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number(v);
  j["extras"] = extras;
  return j;
}

nlohmann::json to_json(const BetaEstimate& b) {
  return {{"beta", number(b.beta)}, {"raw_max", number(b.raw_max)}, {"pairs", b.pairs}, {"note", b.note}};
}

nlohmann::json to_json(const OracleSuiteResult& s) {
  nlohmann::json spaces = nlohmann::json::array();
  for (const OracleSpaceResult& r : s.spaces)
    spaces.push_back({{"index", r.index},
                      {"points", r.points},
                      {"p", number(r.p)},
                      {"q", number(r.q)},
                      {"D1", number(r.D1)},
                      {"upper", number(r.upper)},
                      {"best_found", number(r.best_found)},
                      {"worst_ratio", number(r.worst_ratio)},
                      {"f_checked", r.f_checked},
                      {"violations", r.violations},
                      {"search_within_bound", r.search_within_bound},
                      {"pass", r.pass}});
  return {{"spaces", spaces},
          {"total_f", s.total_f},
          {"violations", s.violations},
          {"search_violations", s.search_violations},
          {"search_reaching_0.9_D1", s.search_reaching_09},
          {"pass", s.pass}};
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "case_id", "theorem", "space", "function", "s",     "p",     "q",   "D1",   "D1_err",
      "smallness", "constant", "lhs", "lhs_err", "rhs", "rhs_err", "ratio", "pass", "status"};
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const std::string& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string csv_row(const VerificationReport& r) {
  const bool d = r.d1.has_value();
  const std::vector<std::string> f = {csv_field(r.case_id),
                                      to_string(r.theorem),
                                      csv_field(r.space),
                                      csv_field(r.function),
                                      fmt12(r.s),
                                      fmt12(r.p),
                                      fmt12(r.q),
                                      d ? fmt12(r.d1->D1) : "",
                                      d ? fmt12(r.d1->D1_err) : "",
                                      d ? fmt12(r.d1->smallness) : "",
                                      fmt12(r.constant.value),
                                      fmt12(r.lhs.value),
                                      fmt12(r.lhs.error_estimate + r.lhs.truncation_bound),
                                      fmt12(r.rhs.value),
                                      fmt12(r.rhs.error_estimate + r.rhs.truncation_bound),
                                      r.ratio ? fmt12(*r.ratio) : "",
                                      r.pass ? "true" : "false",
                                      to_string(r.status)};
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
  return out;
}

int RunSummary::total() const {
  return pass + fail + vacuous + hypothesis_violated + not_admissible + lhs_divergent + error;
}

int RunSummary::exit_code() const {
  if (fail > 0) return 2;
  if (error > 0) return 1;
  return 0;
}

RunSummary summarize(const std::vector<VerificationReport>& reports) {
  RunSummary s;
  for (const VerificationReport& r : reports) {
    switch (r.status) {
      case Status::Pass: ++s.pass; break;
      case Status::Fail: ++s.fail; break;
      case Status::Vacuous: ++s.vacuous; break;
      case Status::HypothesisViolated: ++s.hypothesis_violated; break;
      case Status::NotAdmissible: ++s.not_admissible; break;
      case Status::LhsDivergent: ++s.lhs_divergent; break;
      case Status::Error: ++s.error; break;
    }
  }
  return s;
}

nlohmann::json to_json(const RunSummary& s) {
  return {{"total", s.total()},
          {"pass", s.pass},
          {"fail", s.fail},
          {"vacuous", s.vacuous},
          {"hypothesis_violated", s.hypothesis_violated},
          {"not_admissible", s.not_admissible},
          {"lhs_divergent", s.lhs_divergent},
          {"error", s.error},
          {"exit_code", s.exit_code()}};
}

nlohmann::json run_document(const std::vector<VerificationReport>& reports, const nlohmann::json& config) {
  nlohmann::json cases = nlohmann::json::array();
  for (const VerificationReport& r : reports) cases.push_back(to_json(r));
  return {{"tool", "hardy_verify"},
          {"format_version", 1},
          {"config", config},
          {"cases", cases},
          {"summary", to_json(summarize(reports))}};
}

}  // namespace hardy
