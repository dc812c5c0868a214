#pragma once

// Command-line frontend. Exit codes: 0 success or affirmative verdict,
// 1 negative verdict / failed suite / golden mismatch, 2 usage or config error.

#include <fprac/census.hpp>
#include <fprac/function_config.hpp>
#include <fprac/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace fprac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// "123", "1e6", "2e6".
inline u64 parse_count(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)(?:[eE](\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw std::invalid_argument("not a count: '" + text + "'");
  u128 v = parse_u128(m[1].str());
  if (m[2].matched) {
    const unsigned exp = static_cast<unsigned>(std::stoul(m[2].str()));
    v = checked_mul(v, checked_pow(10, exp));
  }
  if (v > ~u64{0}) throw std::out_of_range("count too large: '" + text + "'");
  return static_cast<u64>(v);
}

/// Comma-separated list of counts and ranges. "1e1..1e7" expands to the
/// powers of ten in between; "1e6..1e7:1e6" steps arithmetically.
inline std::vector<u64> parse_checkpoints(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_count(token));
      continue;
    }
    const u64 lo = parse_count(token.substr(0, dots));
    std::string rest = token.substr(dots + 2);
    std::optional<u64> step;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      step = parse_count(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const u64 hi = parse_count(rest);
    if (lo == 0 || lo > hi) throw std::invalid_argument("bad checkpoint range '" + token + "'");
    if (step) {
      if (*step == 0) throw std::invalid_argument("zero step in '" + token + "'");
      for (u64 x = lo; x <= hi; x += *step) out.push_back(x);
    } else {
      for (u64 x = lo; x <= hi; x *= 10) {
        out.push_back(x);
        if (x > hi / 10) break;
      }
    }
  }
  if (out.empty()) throw std::invalid_argument("no checkpoints given");
  if (!std::is_sorted(out.begin(), out.end())) throw std::invalid_argument("checkpoints must be ascending");
  return out;
}

/// Selector names accepted by --f.
inline const std::vector<std::string>& selector_names() {
  static const std::vector<std::string> kNames{"identity", "phi", "phi-star", "lambda-star", "lambda-def53",
                                               "tau",      "sigma", "omega",  "big-omega",   "vp",
                                               "h",        "s",   "a1",       "fn"};
  return kNames;
}

/// A resolved --f selection: a FunctionSpec, or the bounded-multiplicity
/// lambda-practical test which has no FunctionSpec.
struct Selection {
  std::optional<FunctionSpec> spec;
  bool lambda_def53 = false;
  std::vector<std::string> warnings;

  std::string name() const { return lambda_def53 ? "lambda-def53" : spec->name; }
};

inline Selection resolve(const std::string& name, std::optional<u64> param, const std::string& config) {
  Selection sel;
  if (!config.empty()) {
    auto loaded = load_function_spec_file(config);
    sel.spec = std::move(loaded.spec);
    sel.warnings = std::move(loaded.warnings);
    return sel;
  }
  if (name.empty()) throw std::invalid_argument("--f or --config is required");
  if (name == "lambda-def53") {
    sel.lambda_def53 = true;
    return sel;
  }
  if (std::find(selector_names().begin(), selector_names().end(), name) == selector_names().end())
    throw std::invalid_argument("unknown function '" + name + "'");
  sel.spec = catalog::by_name(name == "lambda-star" ? "lambda" : name, param);
  if (name == "lambda-star") sel.spec->name = "lambda-star";
  return sel;
}

inline nlohmann::json json_number(u128 v) {
  if (v <= ~u64{0}) return static_cast<u64>(v);
  return to_string(v);
}

inline u64 default_sieve_limit() {
  if (const char* env = std::getenv("FPRAC_SIEVE_LIMIT")) return parse_count(env);
  return kDefaultSieveLimit;
}

/// Output sink: a file when a path is given, the supplied stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct FunctionFlags {
  std::string name;
  std::optional<u64> param;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--f", name, "function: " + CLI::detail::join(selector_names(), ", "));
    cmd->add_option("--param", param, "parameter for vp (the prime) and fn (the modulus)");
    cmd->add_option("--config", config, "JSON file describing a user-defined function");
  }
  Selection resolve() const { return cli::resolve(name, param, config); }
};

inline int cmd_test(const std::string& n_text, const FunctionFlags& ff, const std::string& format,
                    std::ostream& out, std::ostream& err) {
  const u64 n = parse_count(n_text);
  if (n == 0) throw std::invalid_argument("n must be positive");
  const Selection sel = ff.resolve();
  for (const auto& w : sel.warnings) err << "warning: " << w << "\n";

  if (sel.lambda_def53) {
    const bool ok = is_lambda_practical(n);
    if (format == "json") {
      out << nlohmann::json{{"n", n}, {"function", "lambda-def53"}, {"practical", ok}}.dump() << "\n";
    } else {
      out << n << " is " << (ok ? "" : "not ") << "lambda-practical (bounded multiplicities)\n";
    }
    return ok ? kExitOk : kExitNegative;
  }

  const auto v = is_f_practical(n, *sel.spec);
  if (format == "json") {
    nlohmann::json weights = nlohmann::json::array();
    for (u128 w : v.weights) weights.push_back(json_number(w));
    nlohmann::json j{{"n", n},
                     {"function", sel.name()},
                     {"practical", v.is_practical},
                     {"total", json_number(v.total)},
                     {"weights", weights}};
    j["witness"] = v.witness ? json_number(*v.witness) : nlohmann::json(nullptr);
    out << j.dump() << "\n";
  } else {
    out << n << " is " << (v.is_practical ? "f-practical" : "not f-practical") << " for f = " << sel.name()
        << "\n  S_f(n) = " << to_string(v.total) << "\n  weights:";
    for (u128 w : v.weights) out << ' ' << to_string(w);
    out << "\n";
    if (v.witness) out << "  first unrepresentable: " << to_string(*v.witness) << "\n";
  }
  return v.is_practical ? kExitOk : kExitNegative;
}

struct CensusFlags {
  std::string checkpoints;
  std::string format = "text";
  std::string output;
  std::string members;
  std::string golden;
  unsigned threads = 0;
  u64 chunk_size = u64{1} << 16;
  std::string sieve_limit;
};

inline int cmd_census(const FunctionFlags& ff, const CensusFlags& cf, std::ostream& out, std::ostream& err) {
  const Selection sel = ff.resolve();
  for (const auto& w : sel.warnings) err << "warning: " << w << "\n";

  const std::vector<GoldenRow>* table = nullptr;
  if (cf.golden == "table1")
    table = &golden::lambda_star_decades();
  else if (cf.golden == "table2")
    table = &golden::lambda_star_millions();
  else if (!cf.golden.empty())
    throw std::invalid_argument("unknown golden table '" + cf.golden + "' (table1, table2)");

  std::vector<u64> cps;
  if (!cf.checkpoints.empty()) {
    cps = parse_checkpoints(cf.checkpoints);
  } else if (table) {
    for (const auto& row : *table) cps.push_back(row.x);
  } else {
    throw std::invalid_argument("--checkpoints is required");
  }

  const u64 guard = cf.sieve_limit.empty() ? default_sieve_limit() : parse_count(cf.sieve_limit);
  if (cps.back() > guard)
    throw std::invalid_argument("checkpoint " + std::to_string(cps.back()) + " exceeds sieve limit " +
                                std::to_string(guard));
  const SpfSieve sieve(cps.back(), guard);

  std::ofstream member_file;
  CensusOptions opts;
  opts.threads = cf.threads;
  opts.chunk_size = cf.chunk_size;
  if (!cf.members.empty()) {
    member_file.open(cf.members);
    if (!member_file) throw std::invalid_argument("cannot write '" + cf.members + "'");
    opts.members = &member_file;
  }

  CensusReport report = sel.lambda_def53 ? count_lambda_practicals(sieve, cps, opts)
                                         : count_practicals(*sel.spec, sieve, cps, opts);
  report.function = sel.name();

  Sink sink(cf.output, out);
  if (cf.format == "csv")
    write_csv(report, sink.stream());
  else if (cf.format == "json")
    sink.stream() << to_json(report).dump(2) << "\n";
  else
    write_text(report, sink.stream());

  if (table) {
    if (sel.lambda_def53 || sel.spec->name != "lambda-star")
      err << "warning: golden tables describe lambda-star; comparing anyway\n";
    const auto [bad, compared] = compare_golden(report, *table);
    if (compared == 0) throw std::invalid_argument("no checkpoint overlaps the golden table");
    for (const auto& b : bad)
      err << "golden mismatch at X=" << b.x << ": expected " << b.expected_count << " / " << b.expected_ratio
          << ", got " << b.actual_count << " / " << b.actual_ratio << "\n";
    err << "golden " << cf.golden << ": " << compared - bad.size() << "/" << compared << " rows match\n";
    if (!bad.empty()) return kExitNegative;
  }
  return kExitOk;
}

inline int cmd_verify(const std::string& which, std::optional<u64> bound, const std::string& format,
                      std::ostream& out) {
  std::vector<std::string> names;
  if (which == "all") {
    for (const auto& s : suites()) names.push_back(s.name);
  } else {
    find_suite(which);
    names.push_back(which);
  }
  bool all_passed = true;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& name : names) {
    const auto r = run_suite(name, bound);
    all_passed = all_passed && r.passed;
    if (format == "json")
      reports.push_back(to_json(r));
    else
      write_text(r, out);
  }
  if (format == "json")
    out << nlohmann::json{{"passed", all_passed}, {"suites", reports}}.dump(2) << "\n";
  else
    out << (all_passed ? "all suites passed\n" : "some suites FAILED\n");
  return all_passed ? kExitOk : kExitNegative;
}

struct DensityFlags {
  std::optional<double> target;
  double eps = 1e-2;
  std::string search_bound = "1e9";
  std::string limit;
  std::string format = "text";
};

inline int cmd_density(const FunctionFlags& ff, const DensityFlags& df, std::ostream& out, std::ostream& err) {
  if (df.target) {
    const u64 bound = parse_count(df.search_bound);
    const auto hit = density_target(*df.target, df.eps, bound);
    if (df.format == "json") {
      nlohmann::json j{{"alpha", *df.target}, {"epsilon", df.eps}, {"search_bound", bound}, {"found", hit.has_value()}};
      if (hit) {
        j["n"] = hit->n;
        j["density"] = hit->density;
      }
      out << j.dump() << "\n";
    } else if (hit) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12f", hit->density);
      out << "n = " << hit->n << " (1 - phi(n)/n = " << buf << ")\n";
    } else {
      out << "no n <= " << bound << " has 1 - phi(n)/n within " << df.eps << " of " << *df.target << "\n";
    }
    return hit ? kExitOk : kExitNegative;
  }

  if (df.limit.empty()) throw std::invalid_argument("density needs --target or --limit");
  const Selection sel = ff.resolve();
  if (sel.lambda_def53) throw std::invalid_argument("density supports FunctionSpec selectors only");
  for (const auto& w : sel.warnings) err << "warning: " << w << "\n";
  const u64 x = parse_count(df.limit);
  const SpfSieve sieve(x, default_sieve_limit());
  const auto d = density_estimate(*sel.spec, sieve, x);
  if (df.format == "json") {
    nlohmann::json j{{"function", sel.name()}, {"X", x}, {"count", d.count}, {"density", d.empirical}};
    j["exact"] = d.exact ? nlohmann::json(*d.exact) : nlohmann::json(nullptr);
    out << j.dump() << "\n";
  } else {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.9f", d.empirical);
    out << sel.name() << "-practical n <= " << x << ": " << d.count << " (density " << buf;
    if (d.exact) {
      std::snprintf(buf, sizeof buf, "%.9f", *d.exact);
      out << ", exact " << buf;
    }
    out << ")\n";
  }
  return kExitOk;
}

inline int cmd_scan(const std::string& kind, const FunctionFlags& ff, u64 p_max, unsigned k_max, u64 m_max,
                    const std::string& format, std::ostream& out) {
  const Selection sel = ff.resolve();
  if (sel.lambda_def53) throw std::invalid_argument("scan supports FunctionSpec selectors only");
  ScanReport r;
  if (kind == "every-integer")
    r = every_integer_scan(*sel.spec, p_max, k_max);
  else if (kind == "convenience")
    r = convenience_scan(*sel.spec, p_max, k_max, m_max);
  else
    throw std::invalid_argument("unknown scan '" + kind + "' (every-integer, convenience)");
  if (format == "json") {
    nlohmann::json j{{"scan", kind},         {"function", sel.name()}, {"holds", r.holds},
                     {"p_max", r.p_max},     {"k_max", r.k_max},       {"m_max", r.m_max},
                     {"checked", r.checked}, {"equality_everywhere", r.equality_everywhere},
                     {"truncated_primes", r.truncated_primes}};
    if (r.counterexample) {
      j["counterexample"] = {{"p", r.counterexample->prime}, {"k", r.counterexample->exponent}};
      if (r.counterexample->witness_m) j["counterexample"]["m"] = *r.counterexample->witness_m;
    } else {
      j["counterexample"] = nullptr;
    }
    out << j.dump() << "\n";
  } else {
    out << kind << " scan of " << sel.name() << " (p <= " << r.p_max << ", k <= " << r.k_max;
    if (kind == "convenience") out << ", m <= " << r.m_max;
    out << "): ";
    if (r.holds) {
      out << "holds up to bounds" << (r.equality_everywhere ? " (with equality everywhere)" : "");
    } else {
      out << "counterexample p=" << r.counterexample->prime << " k=" << r.counterexample->exponent;
      if (r.counterexample->witness_m) out << " m=" << *r.counterexample->witness_m;
    }
    out << ", " << r.checked << " inequalities checked";
    if (r.truncated_primes) out << ", " << r.truncated_primes << " primes truncated at 128 bits";
    out << "\n";
  }
  return r.holds ? kExitOk : kExitNegative;
}

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"fprac: decide, enumerate and count f-practical numbers"};
  app.require_subcommand(1);

  FunctionFlags test_f, census_f, density_f, scan_f;
  std::string format = "text";

  auto* test = app.add_subcommand("test", "decide whether n is f-practical");
  std::string n_text;
  test->add_option("n", n_text, "the integer to test")->required();
  test_f.attach(test);
  test->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* census = app.add_subcommand("census", "count f-practical numbers up to checkpoints");
  CensusFlags cf;
  census_f.attach(census);
  census->add_option("--checkpoints", cf.checkpoints, "e.g. 1e1..1e7, 1e6..1e7:1e6, 100,1000");
  census->add_option("--format", cf.format)->check(CLI::IsMember({"text", "csv", "json"}));
  census->add_option("--output", cf.output, "write the table here instead of stdout");
  census->add_option("--members", cf.members, "stream every member to this file, one per line");
  census->add_option("--golden", cf.golden, "compare against an embedded table: table1 or table2");
  census->add_option("--threads", cf.threads, "worker threads (default: all cores)");
  census->add_option("--chunk-size", cf.chunk_size)->check(CLI::PositiveNumber);
  census->add_option("--sieve-limit", cf.sieve_limit, "largest sieve allowed (env FPRAC_SIEVE_LIMIT)");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suite;
  std::string bound_text;
  bool list = false;
  verify->add_option("suite", suite, "suite name or 'all'");
  verify->add_option("--bound", bound_text, "override the suite bound");
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--list", list, "list suites");

  auto* density = app.add_subcommand("density", "density of the f_m family and empirical densities");
  DensityFlags df;
  density_f.attach(density);
  density->add_option("--target", df.target, "find n with 1 - phi(n)/n near this value");
  density->add_option("--eps", df.eps, "tolerance for --target");
  density->add_option("--search-bound", df.search_bound, "largest n considered for --target");
  density->add_option("--limit", df.limit, "X for the empirical density of --f");
  density->add_option("--format", df.format)->check(CLI::IsMember({"text", "json"}));

  auto* scan = app.add_subcommand("scan", "bounded scans: every-integer or convenience");
  std::string scan_kind;
  u64 p_max = 1000, m_max = 100;
  unsigned k_max = 20;
  scan->add_option("kind", scan_kind, "every-integer or convenience")->required();
  scan_f.attach(scan);
  scan->add_option("--p-max", p_max);
  scan->add_option("--k-max", k_max);
  scan->add_option("--m-max", m_max);
  scan->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  app.add_subcommand("functions", "list function selectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*test) return cmd_test(n_text, test_f, format, out, err);
    if (*census) return cmd_census(census_f, cf, out, err);
    if (*verify) {
      if (list) {
        for (const auto& s : suites()) out << s.name << " (default bound " << s.default_bound << "): " << s.statement << "\n";
        return kExitOk;
      }
      if (suite.empty()) throw std::invalid_argument("verify needs a suite name or 'all'");
      std::optional<u64> bound;
      if (!bound_text.empty()) bound = parse_count(bound_text);
      return cmd_verify(suite, bound, format, out);
    }
    if (*density) return cmd_density(density_f, df, out, err);
    if (*scan) return cmd_scan(scan_kind, scan_f, p_max, k_max, m_max, format, out);
    for (const auto& name : selector_names())
      out << name << (catalog::takes_parameter(name) ? " (needs --param)" : "") << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace fprac::cli
