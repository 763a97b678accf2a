#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardy/cli.hpp"
#include "hardy/config.hpp"
#include "hardy/report.hpp"

using namespace hardy;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("hardy_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_config(in, "cfg.ini");
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("cli_report") {

TEST_CASE("grids and lists") {
  const std::vector<double> g = parse_grid("0.55:0.95:0.1");
  REQUIRE(g.size() == 5);
  CHECK(g[0] == 0.55);
  CHECK(g[3] == 0.85);
  CHECK(g[4] == 0.95);
  CHECK(parse_grid("2, 3,4.5") == std::vector<double>{2.0, 3.0, 4.5});
  const std::vector<std::string> f = split_top_level("gaussian(1,1), bump(1.5,1),zero");
  CHECK(f == std::vector<std::string>{"gaussian(1,1)", "bump(1.5,1)", "zero"});
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), InvalidInput);
  CHECK_THROWS_AS(parse_grid("a"), InvalidInput);
}

TEST_CASE("config diagnostics name the line and key") {
  CHECK(parse_error("[run]\nseed = 1\nsamples = many\n").find("cfg.ini:3: key 'samples'") != std::string::npos);
  CHECK(parse_error("[case a]\nspace = euclidean:1\ntheorem = Poincare\n").find("cfg.ini:3: key 'theorem'") !=
        std::string::npos);
  CHECK(parse_error("[case a]\nspace = torus:1\n").find("cfg.ini:2: key 'space'") != std::string::npos);
  CHECK(parse_error("[case a]\nfunctions = gaussian(1), nope\n").find("cfg.ini:2: key 'functions'") !=
        std::string::npos);
  CHECK(parse_error("[case a]\ncolour = red\n").find("key 'colour'") != std::string::npos);
  CHECK(parse_error("[case a]\ns = 1\ns = 2\n").find("repeated") != std::string::npos);
  CHECK(parse_error("[case a]\n[case a]\n").find("duplicate case") != std::string::npos);
  CHECK(parse_error("[bogus]\n").find("cfg.ini:1") != std::string::npos);
  CHECK(parse_error("seed = 1\n").find("outside") != std::string::npos);
  CHECK(parse_error("[case a]\ntheorem = GroupHardy\np = 2\n").find("needs a space") != std::string::npos);
}

TEST_CASE("expansion is a sorted cartesian product") {
  std::istringstream in(
      "[case b]\ntheorem = GroupHardySobolev\nspace = euclidean:1\ns = 0.7, 0.8\np = 2\nq = 2, 3\n"
      "functions = gaussian(1,1), bump(1.5,1)\n"
      "[case a]\ntheorem = GroupHardy\nspace = euclidean:1\ns = 0.8\np = 2\nq = 5\nfunctions = zero\n");
  const RunConfig cfg = parse_config(in, "x");
  const std::vector<InequalityCase> cases = cfg.expand();
  REQUIRE(cases.size() == 9);
  CHECK(cases[0].id == "a/s=0.8,p=2,u=zero");
  for (std::size_t i = 1; i < cases.size(); ++i) CHECK(cases[i - 1].id < cases[i].id);
}

TEST_CASE("zero case: one pass, exit 0") {
  const std::string path =
      write_temp("zero.ini", "[case zero]\ntheorem = GroupHardy\nspace = euclidean:1\ns = 0.8\np = 2\nfunctions = zero\n");
  const Run r = cli({"verify", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("1 cases, 1 pass") != std::string::npos);
}

TEST_CASE("hypothesis violations do not fail the run") {
  const std::string path = write_temp(
      "guard.ini",
      "[case below]\ntheorem = GroupHardy\nspace = group:Q=4\ns = 0.5\np = 2\nfunctions = gaussian(1,1)\n"
      "[case above]\ntheorem = GroupHardy\nspace = euclidean:1\ns = 0.8\np = 2\nfunctions = zero\n");
  const Run r = cli({"--json", "verify", path});
  CHECK(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["summary"]["hypothesis_violated"] == 1);
  CHECK(doc["summary"]["pass"] == 1);
  CHECK(doc["cases"][1]["status"] == "hypothesis-violated");
}

TEST_CASE("malformed config exits 1 with a diagnostic") {
  const std::string path = write_temp("bad.ini", "[case a]\nspace = euclidean:1\np = two\n");
  const Run r = cli({"verify", path});
  CHECK(r.code == 1);
  CHECK(r.err.find(":3: key 'p'") != std::string::npos);
}

TEST_CASE("exit codes follow the summary") {
  std::vector<VerificationReport> reps(3);
  reps[0].status = Status::Pass;
  reps[1].status = Status::Vacuous;
  reps[2].status = Status::HypothesisViolated;
  CHECK(summarize(reps).exit_code() == 0);
  reps[1].status = Status::Error;
  CHECK(summarize(reps).exit_code() == 1);
  reps[2].status = Status::Fail;
  CHECK(summarize(reps).exit_code() == 2);
}

TEST_CASE("unknown subcommand prints usage and exits 1") {
  const Run r = cli({"frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(cli({}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("constants subcommand") {
  const Run r = cli({"--json", "constants", "--space", "heisenberg:1", "--s", "0.9", "--p", "5"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == Approx(8499717606.63711180705).epsilon(1e-11));
  CHECK(j["provenance"] == "paper_closed_form");
  CHECK(j["formula"].get<std::string>().find("omega_n") != std::string::npos);
}

TEST_CASE("d1 subcommand") {
  const Run r = cli({"--json", "d1", "--space", "group:Q=4", "--s", "1.5", "--p", "3"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["D1"].get<double>() == Approx(0.50797).epsilon(1e-5));
  CHECK(j["smallness"].get<double>() == Approx(0.96).epsilon(1e-12));
  CHECK(j["admissible"] == true);
}

TEST_CASE("oracle subcommand") {
  const Run r = cli({"oracle", "--trials", "50", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("50/50 bracket checks pass") != std::string::npos);
}

TEST_CASE("oracle on a matrix file") {
  const std::string path = write_temp("m.txt", "3\n1 0.5 2\n0 1 2\n1 0 1.5\n2 1.5 0\n");
  const Run r = cli({"--json", "oracle", "--matrix", path, "--p", "2", "--q", "3"});
  CHECK(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["best_found"].get<double>() <= j["upper"].get<double>());
  CHECK(j["points"] == 3);
}

TEST_CASE("beta subcommand") {
  const Run r = cli({"--json", "--samples", "20000", "beta", "--space", "heisenberg:1"});
  REQUIRE(r.code == 0);
  const double b = nlohmann::json::parse(r.out)["beta"].get<double>();
  CHECK(b >= 1.0);
  CHECK(b <= 1.05);
}

TEST_CASE("sweep emits the documented columns and matches single runs") {
  const Run r = cli({"--samples", "40000", "sweep", "--space", "euclidean:1", "--s", "0.55:0.95:0.1", "--p", "2",
                     "--functions", "gaussian(1,1)"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == csv_header());
  for (const char* c : {"s", "D1", "smallness", "constant", "lhs", "rhs", "ratio", "pass"})
    CHECK(std::find(csv_columns().begin(), csv_columns().end(), c) != csv_columns().end());
  std::vector<std::string> rows;
  while (std::getline(lines, row)) rows.push_back(row);
  REQUIRE(rows.size() == 5);

  const std::string path = write_temp(
      "single.ini",
      "[run]\nsamples = 40000\n[case sweep]\ntheorem = GroupHardy\nspace = euclidean:1\ns = 0.75\np = 2\n"
      "functions = gaussian(1,1)\n");
  std::ostringstream out, err;
  const Run single = cli({"--samples", "40000", "sweep", "--space", "euclidean:1", "--s", "0.75", "--p", "2",
                          "--functions", "gaussian(1,1)"});
  std::string h2, r2;
  std::istringstream l2(single.out);
  std::getline(l2, h2);
  std::getline(l2, r2);
  CHECK(r2 == rows[2]);
  const Run viaconfig = cli({"--json", "verify", path});
  const nlohmann::json doc = nlohmann::json::parse(viaconfig.out);
  const std::string ratio = r2.substr(0, r2.rfind(",true"));
  CHECK(ratio.substr(ratio.rfind(',') + 1) ==
        [&] {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.12g", doc["cases"][0]["ratio"].get<double>());
          return std::string(buf);
        }());
}

TEST_CASE("reports are byte identical across runs and worker budgets") {
  const std::string path = write_temp(
      "det.ini",
      "[run]\nsamples = 30000\n[case d]\ntheorem = FractionalHardy\nspace = euclidean:1\ns = 0.7, 0.9\np = 2\n"
      "functions = gaussian(1,1), bump(1.5,1)\n");
  const Run a = cli({"--json", "--threads", "1", "verify", path});
  const Run b = cli({"--json", "--threads", "4", "verify", path});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("numbers carry 12 significant digits") {
  CHECK(number(1.0 / 3.0).get<double>() == 0.333333333333);
  CHECK(number(std::numeric_limits<double>::infinity()).is_null());
}

}
