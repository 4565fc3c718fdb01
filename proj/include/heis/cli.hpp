#pragma once

// Command-line front end: flat key = value configs, flag overrides, suite
// dispatch and CSV/JSON emission.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heis/beta.hpp"
#include "heis/errors.hpp"
#include "heis/fields.hpp"
#include "heis/parallel.hpp"
#include "heis/quad.hpp"
#include "heis/squarefn.hpp"
#include "heis/verify.hpp"

namespace heis::cli {

inline constexpr const char* kVersion = "heis-beta 0.1.0";

enum class Format { csv, json };

struct RunConfig {
  std::string suite;
  int n = 1;
  std::string field = "gaussian";
  // Raw catalog parameters (omega, a, b, j, k) as given.
  FieldParams field_params;
  double p = 2.0;
  double q = 1.0;
  double alpha = 1.0;
  int d = 1;
  std::string square = "G";
  ScaleGrid r_grid{1e-3, 1e2, 16};
  ScaleGrid t_grid{1e-4, 1e2, 16};
  double box_radius = 8.0;
  double stretch = kDefaultStretch;
  QuadMode mode = QuadMode::grid;
  std::int64_t samples = 100000;
  int grid_per_axis = 16;
  std::uint64_t seed = 42;
  std::int64_t domain_samples = 0;  // 0: same as samples
  int domain_grid_per_axis = 16;
  std::int64_t fine_samples = 0;  // 0: same as samples
  int fine_grid_per_axis = 96;
  double omega = 4.0;  // vertical-wave frequency inside the check suites
  std::vector<double> scales{1.0};
  std::vector<Point> points;
  int workers = 0;
  std::string out;
  Format format = Format::csv;
  bool timestamp = true;

  QuadSpec ball_spec() const {
    QuadSpec s;
    s.mode = mode;
    s.samples = samples;
    s.seed = seed;
    s.grid_per_axis = grid_per_axis;
    return s;
  }
  QuadSpec domain_spec() const {
    QuadSpec s = ball_spec();
    s.samples = domain_samples > 0 ? domain_samples : samples;
    s.grid_per_axis = domain_grid_per_axis;
    return s;
  }
  QuadSpec fine_spec() const {
    QuadSpec s = ball_spec();
    s.samples = fine_samples > 0 ? fine_samples : samples;
    s.grid_per_axis = fine_grid_per_axis;
    return s;
  }
  SuiteConfig suite_config() const {
    SuiteConfig c;
    c.n = n;
    c.p = p;
    c.q = q;
    c.alpha = alpha;
    c.r_grid = r_grid;
    c.t_grid = t_grid;
    c.box_radius = box_radius;
    c.stretch = stretch;
    c.ball = ball_spec();
    c.domain = domain_spec();
    c.fine_domain = fine_spec();
    c.seed = seed;
    c.omega = omega;
    return c;
  }
  ScalarField make_field() const { return catalog(field, field_params, n); }
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Thrown for --help and --version; carries the text to print.
struct EarlyExit {
  std::string text;
};

inline const std::vector<std::string>& suites() {
  static const std::vector<std::string> s = {"beta",       "squarefn",   "identities",
                                             "lemmas",     "dorronsoro", "poincare"};
  return s;
}

// Shortest text that parses back to the same double.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string fmt_list(const std::vector<double>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + fmt(v[i]);
  return s;
}

inline std::string fmt_point(const Point& x) {
  std::vector<double> c(x.z.begin(), x.z.begin() + 2 * x.n);
  c.push_back(x.t);
  return fmt_list(c);
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw UsageError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

inline std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& part : split(v, ',')) {
    if (!part.empty()) out.push_back(to_double(key, part));
  }
  return out;
}

// Reads "key = value" lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

// String-valued options as they arrive from the file or the command line.
struct RawOptions {
  bool no_timestamp = false;
  std::string config;
  std::string emit_config;
};

inline const std::vector<std::string>& value_keys() {
  static const std::vector<std::string> k = {
      "suite",      "n",          "field",        "omega",
      "a",          "b",          "j",            "k",
      "p",          "q",          "alpha",        "d",
      "square",     "rmin",       "rmax",         "per-decade",
      "tmin",       "tmax",       "t-per-decade", "box-radius",
      "stretch",    "mode",       "samples",      "grid-per-axis",
      "seed",       "domain-samples", "domain-grid-per-axis", "fine-samples",
      "fine-grid-per-axis", "scales", "points", "workers",
      "out",        "format"};
  return k;
}

inline bool is_value_key(const std::string& k) {
  for (const auto& v : value_keys()) {
    if (v == k) return true;
  }
  return false;
}

}  // namespace detail

// Builds and validates a RunConfig from key/value strings.
inline RunConfig build_config(const std::map<std::string, std::string>& kv, bool timestamp) {
  RunConfig c;
  auto has = [&](const char* k) { return kv.count(k) > 0; };
  auto str = [&](const char* k) { return kv.at(k); };
  auto num = [&](const char* k) { return detail::to_double(k, kv.at(k)); };
  auto integer = [&](const char* k) -> std::int64_t {
    const double v = num(k);
    if (v != std::floor(v) || std::abs(v) > 9e15) {
      throw UsageError("key '" + std::string(k) + "': expected an integer");
    }
    return static_cast<std::int64_t>(v);
  };

  if (!has("suite")) throw UsageError("no suite given (one of beta, squarefn, identities, lemmas, dorronsoro, poincare)");
  c.suite = str("suite");
  if (std::find(suites().begin(), suites().end(), c.suite) == suites().end()) {
    throw UsageError("unknown suite '" + c.suite + "'");
  }
  if (has("n")) c.n = static_cast<int>(integer("n"));
  if (c.n < 1 || c.n > kMaxN) throw UsageError("n must lie in 1.." + std::to_string(kMaxN));
  if (has("field")) c.field = str("field");
  for (const char* k : {"omega", "a", "b", "j", "k"}) {
    if (has(k)) c.field_params[k] = str(k);
  }
  if (has("omega")) c.omega = num("omega");
  if (has("p")) c.p = num("p");
  if (has("q")) c.q = num("q");
  if (has("alpha")) c.alpha = num("alpha");
  if (has("d")) c.d = static_cast<int>(integer("d"));
  if (has("square")) c.square = str("square");
  if (has("rmin")) c.r_grid.r_min = num("rmin");
  if (has("rmax")) c.r_grid.r_max = num("rmax");
  if (has("per-decade")) c.r_grid.points_per_decade = static_cast<int>(integer("per-decade"));
  if (has("tmin")) c.t_grid.r_min = num("tmin");
  if (has("tmax")) c.t_grid.r_max = num("tmax");
  if (has("t-per-decade")) c.t_grid.points_per_decade = static_cast<int>(integer("t-per-decade"));
  if (has("box-radius")) c.box_radius = num("box-radius");
  if (has("stretch")) c.stretch = num("stretch");
  if (has("mode")) {
    const std::string m = str("mode");
    if (m == "grid") c.mode = QuadMode::grid;
    else if (m == "mc") c.mode = QuadMode::montecarlo;
    else throw UsageError("mode must be grid or mc, got '" + m + "'");
  }
  if (has("samples")) c.samples = integer("samples");
  if (has("grid-per-axis")) c.grid_per_axis = static_cast<int>(integer("grid-per-axis"));
  if (has("seed")) {
    const std::string s = str("seed");
    try {
      // stoull would wrap a leading minus.
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(s);
      c.seed = std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("seed must be a non-negative 64-bit integer, got '" + s + "'");
    }
  }
  if (has("domain-samples")) c.domain_samples = integer("domain-samples");
  if (has("domain-grid-per-axis")) c.domain_grid_per_axis = static_cast<int>(integer("domain-grid-per-axis"));
  if (has("fine-samples")) c.fine_samples = integer("fine-samples");
  if (has("fine-grid-per-axis")) c.fine_grid_per_axis = static_cast<int>(integer("fine-grid-per-axis"));
  if (has("scales")) c.scales = detail::to_list("scales", str("scales"));
  if (has("points")) {
    for (const auto& part : detail::split(str("points"), ';')) {
      if (part.empty()) continue;
      const auto coords = detail::to_list("points", part);
      if (static_cast<int>(coords.size()) != 2 * c.n + 1) {
        throw UsageError("each point needs " + std::to_string(2 * c.n + 1) + " coordinates, got '" +
                         part + "'");
      }
      c.points.emplace_back(std::span<const double>(coords.data(), 2 * c.n), coords.back());
    }
  }
  if (c.points.empty()) c.points.push_back(Point(c.n));
  if (has("workers")) c.workers = static_cast<int>(integer("workers"));
  if (has("out")) c.out = str("out");
  if (has("format")) {
    const std::string f = str("format");
    if (f == "csv") c.format = Format::csv;
    else if (f == "json") c.format = Format::json;
    else throw UsageError("format must be csv or json, got '" + f + "'");
  }
  c.timestamp = timestamp;

  // Ranges.
  if (!(c.p > 1.0) || !std::isfinite(c.p)) throw UsageError("p must be > 1");
  if (!(c.q >= 1.0) || !std::isfinite(c.q)) throw UsageError("q must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha < 2.0)) throw UsageError("alpha must lie in (0, 2)");
  if (c.d != 0 && c.d != 1) throw UsageError("d must be 0 or 1");
  if (c.square != "G" && c.square != "S") throw UsageError("square must be G or S");
  if (c.suite == "squarefn" && c.square == "S" && !(c.alpha < 1.0)) {
    throw UsageError("S_alpha needs alpha in (0, 1)");
  }
  if (c.samples < 1 || c.domain_samples < 0 || c.fine_samples < 0) {
    throw UsageError("sample budgets must be >= 1");
  }
  if (c.grid_per_axis < 1 || c.domain_grid_per_axis < 1 || c.fine_grid_per_axis < 1) {
    throw UsageError("grid sizes must be >= 1");
  }
  if (!(c.box_radius > 0.0)) throw UsageError("box-radius must be > 0");
  if (!(c.stretch >= 0.0)) throw UsageError("stretch must be >= 0");
  if (c.workers < 0) throw UsageError("workers must be >= 0");
  if (c.scales.empty()) throw UsageError("scales must not be empty");
  for (double s : c.scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw UsageError("scales must be positive");
  }
  try {
    c.r_grid.validate();
    c.t_grid.validate();
    c.make_field();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (c.suite == "dorronsoro") {
    const ExponentGate g = gate_exponents(c.p, c.q, c.n);
    if (!g.admissible) {
      throw UsageError("exponents p=" + fmt(c.p) + ", q=" + fmt(c.q) +
                       " are outside the admissible range for Q=" + std::to_string(g.Q));
    }
  }
  if (c.suite == "poincare" && !(c.p <= 2.0)) throw UsageError("poincare needs p in (1, 2]");
  return c;
}

// Effective configuration as ordered key/value pairs; re-reading these
// reproduces the run. workers, out and format do not affect results and are
// left out so that output bytes do not depend on them.
inline std::vector<std::pair<std::string, std::string>> effective_config(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("suite", c.suite);
  kv.emplace_back("n", std::to_string(c.n));
  kv.emplace_back("field", c.field);
  for (const auto& [k, v] : c.field_params) {
    if (k != "omega") kv.emplace_back(k, v);
  }
  kv.emplace_back("omega", c.field_params.count("omega") ? c.field_params.at("omega") : fmt(c.omega));
  kv.emplace_back("p", fmt(c.p));
  kv.emplace_back("q", fmt(c.q));
  kv.emplace_back("alpha", fmt(c.alpha));
  kv.emplace_back("d", std::to_string(c.d));
  kv.emplace_back("square", c.square);
  kv.emplace_back("rmin", fmt(c.r_grid.r_min));
  kv.emplace_back("rmax", fmt(c.r_grid.r_max));
  kv.emplace_back("per-decade", std::to_string(c.r_grid.points_per_decade));
  kv.emplace_back("tmin", fmt(c.t_grid.r_min));
  kv.emplace_back("tmax", fmt(c.t_grid.r_max));
  kv.emplace_back("t-per-decade", std::to_string(c.t_grid.points_per_decade));
  kv.emplace_back("box-radius", fmt(c.box_radius));
  kv.emplace_back("stretch", fmt(c.stretch));
  kv.emplace_back("mode", to_string(c.mode));
  kv.emplace_back("samples", std::to_string(c.samples));
  kv.emplace_back("grid-per-axis", std::to_string(c.grid_per_axis));
  kv.emplace_back("seed", std::to_string(c.seed));
  kv.emplace_back("domain-samples", std::to_string(c.domain_spec().samples));
  kv.emplace_back("domain-grid-per-axis", std::to_string(c.domain_grid_per_axis));
  kv.emplace_back("fine-samples", std::to_string(c.fine_spec().samples));
  kv.emplace_back("fine-grid-per-axis", std::to_string(c.fine_grid_per_axis));
  kv.emplace_back("scales", fmt_list(c.scales));
  std::string pts;
  for (std::size_t i = 0; i < c.points.size(); ++i) pts += (i ? "; " : "") + fmt_point(c.points[i]);
  kv.emplace_back("points", pts);
  return kv;
}

inline void write_config_file(const RunConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "# " << kVersion << "\n";
  for (const auto& [k, v] : effective_config(c)) out << k << " = " << v << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

struct ParseResult {
  RunConfig config;
  std::string emit_config;
};

// argv[1] may name the suite; `--config FILE` supplies defaults that the
// other flags override.
inline ParseResult parse_args(int argc, const char* const* argv) {
  CLI::App app{"Multiscale affine approximation on the Heisenberg group"};
  app.set_version_flag("--version", kVersion);
  detail::RawOptions raw;
  std::map<std::string, std::string> flags;
  std::string positional_suite;
  app.add_option("SUITE", positional_suite, "beta | squarefn | identities | lemmas | dorronsoro | poincare");
  app.add_option("--config", raw.config, "flat key = value config file");
  app.add_option("--emit-config", raw.emit_config, "write the effective config to this file");
  app.add_flag("--no-timestamp", raw.no_timestamp, "omit the run timestamp from the output");
  for (const auto& k : detail::value_keys()) {
    app.add_option_function<std::string>(
        "--" + k, [&flags, k](const std::string& v) { flags[k] = v; }, k);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw EarlyExit{app.help()};
  } catch (const CLI::CallForVersion&) {
    throw EarlyExit{std::string(kVersion) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::map<std::string, std::string> kv;
  if (!raw.config.empty()) {
    for (const auto& [k, v] : detail::read_config_file(raw.config)) {
      if (k == "no-timestamp") {
        raw.no_timestamp = raw.no_timestamp || v == "true" || v == "1";
        continue;
      }
      if (!detail::is_value_key(k)) throw UsageError("unknown config key '" + k + "' in " + raw.config);
      kv[k] = v;
    }
  }
  if (!positional_suite.empty()) kv["suite"] = positional_suite;
  for (const auto& [k, v] : flags) kv[k] = v;
  ParseResult r{build_config(kv, !raw.no_timestamp), raw.emit_config};
  return r;
}

// ---------------------------------------------------------------------------
// Running and emitting.

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  bool all_ok = true;
};

inline nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

inline nlohmann::ordered_json report_json(const RatioReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["lhs"] = json_number(r.lhs);
  j["rhs"] = json_number(r.rhs);
  j["ratio"] = json_number(r.ratio);
  j["truncation"] = {json_number(r.truncation_lhs), json_number(r.truncation_rhs)};
  j["degenerate"] = r.degenerate;
  j["ok"] = r.ok;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = json_number(v);
  j["params"] = params;
  return j;
}

inline void add_reports(Table& t, const std::vector<RatioReport>& reports) {
  t.columns = {"name", "lhs", "rhs", "ratio", "degenerate"};
  for (const auto& r : reports) {
    t.rows.push_back({r.name, fmt(r.lhs), fmt(r.rhs), fmt(r.ratio), r.degenerate ? "true" : "false"});
    t.results.push_back(report_json(r));
    t.all_ok = t.all_ok && r.ok;
  }
}

inline Table execute(const RunConfig& c) {
  Table t;
  const SuiteConfig sc = c.suite_config();
  if (c.suite == "beta") {
    const ScalarField f = c.make_field();
    t.columns = {"r", "beta", "stderr"};
    for (std::size_t id = 0; id < c.points.size(); ++id) {
      const BetaProfile prof = beta_profile(f, c.points[id], c.d, c.q, c.r_grid, c.ball_spec());
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < prof.radii.size(); ++i) {
        t.rows.push_back({fmt(prof.radii[i]), fmt(prof.values[i]), fmt(prof.stderrs[i])});
        rows.push_back({{"r", json_number(prof.radii[i])},
                        {"beta", json_number(prof.values[i])},
                        {"stderr", json_number(prof.stderrs[i])}});
      }
      t.results.push_back({{"x_id", id}, {"x", fmt_point(c.points[id])}, {"profile", rows}});
    }
  } else if (c.suite == "squarefn") {
    const ScalarField f = c.make_field();
    t.columns = {"x_id", "alpha", "value", "trunc_low", "trunc_high"};
    std::vector<SquareFnResult> res(c.points.size());
    ball_rule(c.n, c.ball_spec());
    parallel_for(c.points.size(), [&](std::size_t i) {
      res[i] = c.square == "G" ? g_alpha(f, c.points[i], c.alpha, c.r_grid, c.ball_spec(), c.q)
                               : s_alpha(f, c.points[i], c.alpha, c.r_grid, c.ball_spec());
    });
    for (std::size_t i = 0; i < res.size(); ++i) {
      t.rows.push_back({std::to_string(i), fmt(c.alpha), fmt(res[i].value),
                        fmt(res[i].truncation_low), fmt(res[i].truncation_high)});
      t.results.push_back({{"x_id", i},
                           {"x", fmt_point(c.points[i])},
                           {"alpha", c.alpha},
                           {"value", json_number(res[i].value)},
                           {"trunc_low", json_number(res[i].truncation_low)},
                           {"trunc_high", json_number(res[i].truncation_high)}});
    }
  } else if (c.suite == "identities") {
    add_reports(t, run_identity_suite(sc));
  } else if (c.suite == "lemmas") {
    add_reports(t, run_lemma_suite(sc));
  } else if (c.suite == "dorronsoro" || c.suite == "poincare") {
    const ScalarField f = c.make_field();
    std::vector<RatioReport> reps;
    for (double s : c.scales) {
      const ScalarField fs = s == 1.0 ? f : precompose_dilation(f, s);
      RatioReport r = c.suite == "dorronsoro" ? dorronsoro_ratio(fs, c.p, c.q, sc)
                                              : poincare_ratio(fs, c.p, sc);
      r.params["s"] = s;
      reps.push_back(std::move(r));
    }
    add_reports(t, reps);
  }
  return t;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string render(const RunConfig& c, const Table& t) {
  std::ostringstream out;
  const auto meta = effective_config(c);
  if (c.format == Format::csv) {
    out << "# version = " << kVersion << "\n";
    if (c.timestamp) out << "# timestamp = " << utc_timestamp() << "\n";
    for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
  } else {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json m;
    m["version"] = kVersion;
    if (c.timestamp) m["timestamp"] = utc_timestamp();
    for (const auto& [k, v] : meta) m[k] = v;
    doc["metadata"] = m;
    doc["results"] = t.results;
    out << doc.dump(2) << "\n";
  }
  return out.str();
}

// Runs a parsed configuration; returns the exit status (0 ok, 2 failed check).
inline int run(const RunConfig& c, std::ostream& console = std::cout) {
  set_workers(c.workers);
  const Table t = execute(c);
  const std::string text = render(c, t);
  if (c.out.empty()) {
    console << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + c.out + "'");
    f << text;
    f.close();
    if (!f) throw std::runtime_error("write failed for '" + c.out + "'");
  }
  return t.all_ok ? 0 : 2;
}

// Full entry point with exit codes: 0 ok, 1 usage or runtime error, 2 a
// check suite outside tolerance.
inline int main(int argc, const char* const* argv) {
  try {
    const ParseResult parsed = parse_args(argc, argv);
    if (!parsed.emit_config.empty()) write_config_file(parsed.config, parsed.emit_config);
    const int status = run(parsed.config);
    if (status == 2) std::cerr << "heis-beta: one or more checks failed their tolerance\n";
    return status;
  } catch (const EarlyExit& e) {
    std::cout << e.text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "heis-beta: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "heis-beta: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace heis::cli
