#include "hardy/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "hardy/error.hpp"
#include "hardy/report.hpp"

namespace hardy {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& t, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(where + ": expected a number, got '" + t + "'");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  for (const std::string& s : out) require(!s.empty(), "empty list entry in '" + text + "'");
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_top_level(text)) {
    if (item.find(':') == std::string::npos) {
      out.push_back(to_number(item, "grid"));
      continue;
    }
    std::vector<std::string> parts;
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(trim(tok));
    require(parts.size() == 3, "range '" + item + "' must be lo:hi:step");
    const double lo = to_number(parts[0], "range"), hi = to_number(parts[1], "range"),
                 step = to_number(parts[2], "range");
    require(step > 0.0 && hi >= lo, "range '" + item + "' needs lo <= hi and step > 0");
    const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(std::stod(fmt(lo + i * step)));
  }
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  enum class Section { None, Run, Case } section = Section::None;
  std::set<std::string> names;
  std::map<std::string, int> seen;
  auto where = [&](int l) { return source + ":" + std::to_string(l); };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', where(lineno) + ": malformed section header");
      const std::string head = trim(line.substr(1, line.size() - 2));
      seen.clear();
      if (head == "run") {
        section = Section::Run;
      } else if (head.rfind("case", 0) == 0 && head.size() > 4 && std::isspace(static_cast<unsigned char>(head[4]))) {
        const std::string name = trim(head.substr(4));
        require(names.insert(name).second, where(lineno) + ": duplicate case '" + name + "'");
        section = Section::Case;
        CaseSpec c;
        c.name = name;
        c.line = lineno;
        cfg.cases.push_back(c);
      } else {
        throw InvalidInput(where(lineno) + ": unknown section [" + head + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, where(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!value.empty(), where(lineno) + ": key '" + key + "' has no value");
    require(seen.emplace(key, lineno).second, where(lineno) + ": key '" + key + "' repeated");
    const std::string at = where(lineno) + ": key '" + key + "'";
    try {
      if (section == Section::Run) {
        QuadratureConfig& q = cfg.quad;
        if (key == "seed") q.seed = std::stoull(value);
        else if (key == "samples" || key == "mc_samples") q.mc_samples = std::lround(to_number(value, at));
        else if (key == "threads") q.threads = static_cast<int>(to_number(value, at));
        else if (key == "rel_tolerance") q.rel_tolerance = to_number(value, at);
        else if (key == "truncation_radius") q.truncation_radius = to_number(value, at);
        else if (key == "diagonal_split") q.diagonal_split = to_number(value, at);
        else if (key == "radial_nodes") q.radial_nodes = static_cast<int>(to_number(value, at));
        else if (key == "sphere_nodes") q.sphere_nodes = static_cast<int>(to_number(value, at));
        else if (key == "output_json") cfg.output_json = value;
        else if (key == "output_csv") cfg.output_csv = value;
        else throw InvalidInput("unknown key");
      } else if (section == Section::Case) {
        CaseSpec& c = cfg.cases.back();
        if (key == "theorem") c.theorem = parse_theorem(value);
        else if (key == "space") c.space = parse_space(value)->descriptor();
        else if (key == "s") c.s = parse_grid(value);
        else if (key == "p") c.p = parse_grid(value);
        else if (key == "q") c.q = parse_grid(value);
        else if (key == "functions" || key == "function") {
          c.functions = split_top_level(value);
          for (const std::string& f : c.functions) builtin(f);
        } else if (key == "v" || key == "z" || key == "g" || key == "h") {
          parse_weight(value);
          (key == "v" ? c.v : key == "z" ? c.z : key == "g" ? c.g : c.h) = value;
        } else {
          throw InvalidInput("unknown key");
        }
      } else {
        throw InvalidInput("key outside of any section");
      }
    } catch (const InvalidInput& e) {
      throw InvalidInput(at + ": " + e.what());
    } catch (const std::invalid_argument&) {
      throw InvalidInput(at + ": malformed value '" + value + "'");
    } catch (const std::out_of_range&) {
      throw InvalidInput(at + ": value out of range '" + value + "'");
    }
  }
  cfg.quad.validate();
  for (CaseSpec& c : cfg.cases) {
    const std::string at = where(c.line) + ": case '" + c.name + "'";
    require(!c.space.empty(), at + " needs a space");
    require(!c.s.empty() || c.theorem == Theorem::LogHolder || c.theorem == Theorem::IntegralHardy,
            at + " needs s");
    if (c.s.empty()) c.s = {0.0};
    require(!c.p.empty(), at + " needs p");
    if (c.q.empty()) c.q = c.p;
    if (c.functions.empty()) c.functions = default_corpus_ids();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config '" + path + "'");
  return parse_config(in, path);
}

std::vector<InequalityCase> RunConfig::expand() const {
  std::vector<InequalityCase> out;
  for (const CaseSpec& c : cases) {
    const SpacePtr space = parse_space(c.space);
    WeightSpec w;
    w.v = parse_weight(c.v);
    w.z = parse_weight(c.z);
    const RadialWeight g = parse_weight(c.g), h = parse_weight(c.h);
    const bool uses_q = c.theorem != Theorem::FractionalHardy && c.theorem != Theorem::GroupHardy &&
                        c.theorem != Theorem::HeisenbergHardy;
    for (double s : c.s)
      for (double p : c.p)
        for (double q : uses_q ? c.q : std::vector<double>{p})
          for (const std::string& f : c.functions) {
            InequalityCase ic;
            ic.theorem = c.theorem;
            ic.space = space;
            ic.s = s;
            ic.p = p;
            ic.q = q;
            ic.weights = w;
            ic.hardy_g = g;
            ic.hardy_h = h;
            ic.function_id = f;
            ic.id = c.name + "/s=" + fmt(s) + ",p=" + fmt(p) + (uses_q ? ",q=" + fmt(q) : "") + ",u=" + f;
            out.push_back(ic);
          }
  }
  std::sort(out.begin(), out.end(), [](const InequalityCase& a, const InequalityCase& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < out.size(); ++i)
    require(out[i].id != out[i - 1].id, "duplicate case id '" + out[i].id + "'");
  return out;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const CaseSpec& c : cases) {
    nlohmann::json s = nlohmann::json::array(), p = nlohmann::json::array(), q = nlohmann::json::array();
    for (double v : c.s) s.push_back(number(v));
    for (double v : c.p) p.push_back(number(v));
    for (double v : c.q) q.push_back(number(v));
    cs.push_back({{"name", c.name},
                  {"theorem", hardy::to_string(c.theorem)},
                  {"space", c.space},
                  {"s", s},
                  {"p", p},
                  {"q", q},
                  {"functions", c.functions},
                  {"v", c.v},
                  {"z", c.z},
                  {"g", c.g},
                  {"h", c.h}});
  }
  return {{"seed", quad.seed},
          {"mc_samples", quad.mc_samples},
          {"rel_tolerance", number(quad.rel_tolerance)},
          {"truncation_radius", number(quad.truncation_radius)},
          {"diagonal_split", number(quad.diagonal_split)},
          {"radial_nodes", quad.radial_nodes},
          {"sphere_nodes", quad.sphere_nodes},
          {"cases", cs}};
}

std::vector<VerificationReport> run_cases(const std::vector<InequalityCase>& cases, const QuadratureConfig& quad) {
  std::vector<VerificationReport> out(cases.size());
  const int workers = worker_count(quad);
  QuadratureConfig inner = quad;
  // Cases already run in parallel; batches inside a case stay serial.
  if (workers > 1 && cases.size() > 1) inner.threads = 1;
  parallel_for(static_cast<int>(cases.size()), workers,
               [&](int i) { out[i] = verify_case(cases[i], inner); });
  return out;
}

}  // namespace hardy
