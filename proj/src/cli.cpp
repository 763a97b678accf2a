#include "hardy/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "hardy/config.hpp"
#include "hardy/discrete_oracle.hpp"
#include "hardy/error.hpp"
#include "hardy/report.hpp"

namespace hardy {
namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;
  std::optional<int> threads;
  bool json = false;

  void apply(QuadratureConfig& q) const {
    if (seed) q.seed = *seed;
    if (samples) q.mc_samples = *samples;
    if (threads) q.threads = *threads;
  }
};

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot write '" + path + "'");
  f << text;
  require(f.good(), "write to '" + path + "' failed");
}

std::string csv_text(const std::vector<VerificationReport>& reports) {
  std::string s = csv_header() + "\n";
  for (const VerificationReport& r : reports) s += csv_row(r) + "\n";
  return s;
}

void print_table(const std::vector<VerificationReport>& reports, std::ostream& out) {
  for (const VerificationReport& r : reports) {
    out << to_string(r.status) << "  " << r.case_id;
    if (r.ratio) out << "  ratio=" << g12(*r.ratio);
    if (!r.message.empty() && r.status != Status::Pass) out << "  (" << r.message << ")";
    out << "\n";
  }
}

void print_summary(const RunSummary& s, std::ostream& out) {
  out << "summary: " << s.total() << " cases, " << s.pass << " pass, " << s.fail << " fail, " << s.vacuous
      << " vacuous, " << s.hypothesis_violated << " hypothesis-violated, " << s.not_admissible
      << " not-admissible, " << s.lhs_divergent << " lhs-divergent, " << s.error << " error\n";
}

// Runs the expanded cases, writes the configured outputs, prints a summary.
int execute(const RunConfig& cfg, const Globals& g, bool csv_to_stdout, std::ostream& out) {
  QuadratureConfig quad = cfg.quad;
  g.apply(quad);
  quad.validate();
  RunConfig effective = cfg;
  effective.quad = quad;
  const std::vector<InequalityCase> cases = effective.expand();
  const std::vector<VerificationReport> reports = run_cases(cases, quad);
  const RunSummary summary = summarize(reports);
  const nlohmann::json doc = run_document(reports, effective.to_json());
  if (!cfg.output_json.empty()) write_file(cfg.output_json, doc.dump(2) + "\n");
  if (!cfg.output_csv.empty()) write_file(cfg.output_csv, csv_text(reports));
  if (g.json) {
    out << doc.dump(2) << "\n";
  } else if (csv_to_stdout) {
    out << csv_text(reports);
  } else {
    print_table(reports, out);
    print_summary(summary, out);
  }
  return summary.exit_code();
}

InequalityCase single_case(const std::string& space, const std::string& theorem, double s, double p,
                           std::optional<double> q, const std::string& v, const std::string& z) {
  InequalityCase c;
  c.space = parse_space(space);
  c.theorem = parse_theorem(theorem);
  c.s = s;
  c.p = p;
  c.q = q ? *q : p;
  c.weights.v = parse_weight(v);
  c.weights.z = parse_weight(z);
  return c;
}

std::string default_theorem(const std::string& space) {
  const SpacePtr sp = parse_space(space);
  return sp->kind() == SpaceKind::Heisenberg ? "HeisenbergHardy" : "GroupHardy";
}

}  // namespace

int run_config_file(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    return execute(load_config(path), Globals{}, false, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of fractional Hardy-type inequalities", "hardy_verify"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--samples", g.samples, "Monte Carlo sample budget");
  app.add_option("--threads", g.threads, "Worker budget (default: HARDY_VERIFY_THREADS or hardware)");
  app.add_flag("--json", g.json, "Machine-readable JSON on stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "Run every case of a config file");
  std::string config_path, json_out, csv_out;
  verify->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", json_out, "JSON report path (overrides the config)");
  verify->add_option("--csv", csv_out, "CSV table path (overrides the config)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over s/p/q grids, CSV on stdout");
  std::string sw_space, sw_theorem, sw_s, sw_p, sw_q, sw_functions = "gaussian(1,1)", sw_v = "unit", sw_z = "unit";
  sweep->add_option("--space", sw_space, "Space descriptor")->required();
  sweep->add_option("--theorem", sw_theorem, "Theorem (default by space)");
  sweep->add_option("--s", sw_s, "s grid: list or lo:hi:step")->required();
  sweep->add_option("--p", sw_p, "p grid")->required();
  sweep->add_option("--q", sw_q, "q grid");
  sweep->add_option("--functions", sw_functions, "Corpus ids, comma separated");
  sweep->add_option("--v", sw_v, "Weight v");
  sweep->add_option("--z", sw_z, "Weight z");
  sweep->add_option("--out", json_out, "JSON report path");
  sweep->add_option("--csv", csv_out, "CSV table path (default stdout)");

  // d1
  auto* d1 = app.add_subcommand("d1", "Admissibility report (D1 and smallness)");
  std::string d_space, d_theorem, d_v = "unit", d_z = "unit";
  double d_s = 0.0, d_p = 0.0, d_q_val = 0.0;
  d1->add_option("--space", d_space, "Space descriptor")->required();
  d1->add_option("--theorem", d_theorem, "Theorem (default by space)");
  d1->add_option("--s", d_s, "Smoothness s")->required();
  d1->add_option("--p", d_p, "Exponent p")->required();
  auto* d_q = d1->add_option("--q", d_q_val, "Exponent q (Sobolev forms)");
  d1->add_option("--v", d_v, "Weight v");
  d1->add_option("--z", d_z, "Weight z");

  // constants
  auto* constants = app.add_subcommand("constants", "Closed-form constants of the group theorems");
  std::string c_space, c_theorem;
  double c_s = 0.0, c_p = 0.0, c_q_val = 0.0;
  constants->add_option("--space", c_space, "Space descriptor")->required();
  constants->add_option("--theorem", c_theorem, "Theorem (default by space)");
  constants->add_option("--s", c_s, "Smoothness s")->required();
  constants->add_option("--p", c_p, "Exponent p")->required();
  auto* c_q = constants->add_option("--q", c_q_val, "Exponent q (Sobolev forms)");

  // beta
  auto* beta = app.add_subcommand("beta", "Estimate the quasi-triangle constant");
  std::string b_space = "heisenberg:1";
  beta->add_option("--space", b_space, "Space descriptor");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Discrete bracket suite or a single matrix file");
  int o_trials = 50, o_f = 200, o_search = 300;
  std::string o_matrix;
  double o_p = 2.0, o_q_val = 2.0;
  oracle->add_option("--trials", o_trials, "Number of random spaces")->check(CLI::PositiveNumber);
  oracle->add_option("--functions", o_f, "Random f per space")->check(CLI::PositiveNumber);
  oracle->add_option("--search", o_search, "Random starts of the best-constant search")->check(CLI::NonNegativeNumber);
  oracle->add_option("--matrix", o_matrix, "Discrete space file (N, masses, N x N distances)")
      ->check(CLI::ExistingFile);
  oracle->add_option("--p", o_p, "Exponent p (with --matrix)");
  oracle->add_option("--q", o_q_val, "Exponent q (with --matrix)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (verify->parsed()) {
      RunConfig cfg = load_config(config_path);
      if (!json_out.empty()) cfg.output_json = json_out;
      if (!csv_out.empty()) cfg.output_csv = csv_out;
      return execute(cfg, g, false, out);
    }
    if (sweep->parsed()) {
      RunConfig cfg;
      CaseSpec c;
      c.name = "sweep";
      c.space = parse_space(sw_space)->descriptor();
      c.theorem = parse_theorem(sw_theorem.empty() ? default_theorem(sw_space) : sw_theorem);
      c.s = parse_grid(sw_s);
      c.p = parse_grid(sw_p);
      c.q = sw_q.empty() ? c.p : parse_grid(sw_q);
      c.functions = split_top_level(sw_functions);
      for (const std::string& f : c.functions) builtin(f);
      c.v = sw_v;
      c.z = sw_z;
      parse_weight(c.v);
      parse_weight(c.z);
      cfg.cases.push_back(c);
      cfg.output_json = json_out;
      cfg.output_csv = csv_out;
      return execute(cfg, g, csv_out.empty(), out);
    }
    QuadratureConfig quad;
    g.apply(quad);
    quad.validate();
    if (d1->parsed()) {
      const InequalityCase c =
          single_case(d_space, d_theorem.empty() ? default_theorem(d_space) : d_theorem, d_s, d_p,
                      d_q->count() ? std::optional<double>(d_q_val) : std::nullopt, d_v, d_z);
      const AdmissibilityReport r = case_admissibility(c, quad);
      if (g.json) {
        nlohmann::json j = to_json(r);
        j["space"] = c.space->descriptor();
        j["theorem"] = to_string(c.theorem);
        out << j.dump(2) << "\n";
      } else {
        out << "space " << c.space->descriptor() << "  s=" << g12(c.s) << " p=" << g12(c.p) << " q=" << g12(c.q)
            << "\n"
            << "D1 = " << g12(r.D1) << " +- " << g12(r.D1_err) << "  [" << r.method << "]\n"
            << "smallness = " << g12(r.smallness) << " +- " << g12(r.smallness_err) << "\n"
            << "admissible: " << (r.admissible ? "yes" : "no") << "\n";
        for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
      }
      return 0;
    }
    if (constants->parsed()) {
      const InequalityCase c =
          single_case(c_space, c_theorem.empty() ? default_theorem(c_space) : c_theorem, c_s, c_p,
                      c_q->count() ? std::optional<double>(c_q_val) : std::nullopt, "unit", "unit");
      const ConstantInfo k = closed_form_constant(c);
      if (g.json) {
        out << nlohmann::json{{"space", c.space->descriptor()},
                              {"theorem", to_string(c.theorem)},
                              {"s", number(c.s)},
                              {"p", number(c.p)},
                              {"q", number(c.q)},
                              {"value", number(k.value)},
                              {"provenance", k.provenance},
                              {"formula", k.formula}}
                   .dump(2)
            << "\n";
      } else {
        out << to_string(c.theorem) << " on " << c.space->descriptor() << "  s=" << g12(c.s) << " p=" << g12(c.p)
            << "\n"
            << "C = " << g12(k.value) << "\n"
            << "formula: " << k.formula << "\n"
            << "provenance: " << k.provenance << "\n";
      }
      return 0;
    }
    if (beta->parsed()) {
      const SpacePtr sp = parse_space(b_space);
      const long n = g.samples ? *g.samples : 1000000;
      const BetaEstimate b = estimate_beta(*sp, n, quad.seed);
      if (g.json) {
        nlohmann::json j = to_json(b);
        j["space"] = sp->descriptor();
        out << j.dump(2) << "\n";
      } else {
        out << "beta = " << g12(b.beta) << "  (raw max " << g12(b.raw_max) << ", " << b.pairs << " pairs)\n";
        if (!b.note.empty()) out << b.note << "\n";
      }
      return 0;
    }
    if (oracle->parsed()) {
      if (!o_matrix.empty()) {
        const DiscreteSpace s = load_discrete_space(o_matrix);
        const std::vector<double> one(s.size(), 1.0);
        const double q = oracle->count("--q") ? o_q_val : o_p;
        require(o_p > 1.0 && q >= o_p, "need 1 < p <= q");
        const AdmissibilityReport d = brute_force_D1(s, one, one, o_p, q);
        const double upper = hardy_upper_constant(d.D1, o_p, q);
        const BestConstant best = best_constant_search(s, one, one, o_p, q, o_search, quad.seed);
        const bool ok = best.value <= upper * (1.0 + 1e-12);
        if (g.json) {
          out << nlohmann::json{{"points", s.size()},
                                {"p", number(o_p)},
                                {"q", number(q)},
                                {"D1", number(d.D1)},
                                {"upper", number(upper)},
                                {"best_found", number(best.value)},
                                {"pass", ok}}
                     .dump(2)
              << "\n";
        } else {
          out << "N=" << s.size() << "  D1 = " << g12(d.D1) << "  upper = " << g12(upper)
              << "  best found = " << g12(best.value) << "  " << (ok ? "pass" : "fail") << "\n";
        }
        return ok ? 0 : 2;
      }
      const OracleSuiteResult r = run_oracle_suite(o_trials, o_f, o_search, quad.seed);
      if (g.json) {
        out << to_json(r).dump(2) << "\n";
      } else {
        int ok = 0;
        for (const OracleSpaceResult& sr : r.spaces) ok += sr.pass ? 1 : 0;
        out << ok << "/" << r.spaces.size() << " bracket checks pass (" << r.total_f << " functions, "
            << r.violations << " violations, " << r.search_reaching_09 << " searches reach 0.9 D1)\n";
      }
      return r.pass ? 0 : 2;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 1;
}

}  // namespace hardy
