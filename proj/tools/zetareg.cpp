// zetareg command-line tool.
//
// exit codes: 0 ok, 1 check failure or runtime error, 2 usage or domain error,
// 3 pole / missing root, 4 insufficient precision.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zetareg/acceptance.hpp"
#include "zetareg/zetareg.hpp"

using namespace zetareg;
using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kExtractCap = 25;

struct RunConfig {
  int digits = 30;
  std::uint64_t primes_limit = 1'000'000;
  long bracket_N = 1000;
  std::string output_path;
  std::string format = "csv";
  bool seedless = false;
  std::string cache_path;
  unsigned workers = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything goes through one sink: stdout, or the --output file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

PrecisionContext context_for(const RunConfig& cfg) {
  if (cfg.digits < 15) throw UsageError("--digits must be >= 15");
  return PrecisionContext(cfg.digits);
}

json config_json(const RunConfig& cfg) {
  return {{"precision_digits", cfg.digits}, {"primes_limit", cfg.primes_limit}, {"bracket_N", cfg.bracket_N},
          {"format", cfg.format}, {"seedless", cfg.seedless}};
}

PrimeTable load_primes(const RunConfig& cfg, std::uint64_t limit) {
  return cfg.cache_path.empty() ? sieve(limit) : sieve_cached(limit, cfg.cache_path);
}

// --- primes -------------------------------------------------------------------

int cmd_primes(const RunConfig& cfg, std::uint64_t limit, bool count_only) {
  if (limit < 2) throw UsageError("--limit must be >= 2");
  const PrimeTable table = load_primes(cfg, limit);
  Output out(cfg.output_path);
  if (cfg.format == "json") {
    json report{{"command", "primes"}, {"config", config_json(cfg)}};
    report["config"]["limit"] = limit;
    json result{{"limit", limit}, {"count", table.count()}};
    if (!count_only) result["primes"] = std::vector<std::uint64_t>(table.primes().begin(), table.primes().end());
    report["results"] = json::array({result});
    report["timings"] = nullptr;
    out.stream() << report.dump(2) << '\n';
    return 0;
  }
  if (count_only) {
    out.stream() << table.count() << '\n';
  } else {
    for (std::uint64_t p : table.primes()) out.stream() << p << '\n';
  }
  return 0;
}

// --- standard-form ------------------------------------------------------------

int cmd_standard_form(const RunConfig& cfg, double s, double t_min, double t_max, double step) {
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  if (!(t_max > t_min)) throw UsageError("--t-max must exceed --t-min");
  if (cfg.primes_limit < 100) throw UsageError("--limit must be >= 100");
  const PrimeTable table = load_primes(cfg, cfg.primes_limit);
  const auto samples = sweep(s, t_min, t_max, step, table, cfg.workers);
  Output out(cfg.output_path);
  auto& os = out.stream();
  os << "t,f,g,B,C\n";
  for (const auto& smp : samples)
    os << g12(smp.t) << ',' << g12(smp.f) << ',' << g12(smp.g) << ',' << g12(smp.B) << ',' << g12(smp.C) << '\n';
  return 0;
}

// --- zeta ---------------------------------------------------------------------

int cmd_zeta(const RunConfig& cfg, double re, double im, const std::string& method, long n_terms) {
  const PrecisionContext ctx = context_for(cfg);
  const Complex z(re, im);
  Output out(cfg.output_path);
  std::string re_text, im_text;
  if (method == "dipole") {
    if (n_terms < 2) throw UsageError("--n must be >= 2");
    const Complex v = zeta_dipole(z, n_terms, true);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    re_text = buf;
    std::snprintf(buf, sizeof buf, "%.17g", v.imag());
    im_text = buf;
  } else {
    const BigComplex v = eta_series_big(z, ctx);
    const int shown = std::max(15, std::max(cfg.digits / 2, 18) - 2);
    re_text = v.re.to_string(shown);
    im_text = v.im.to_string(shown);
  }
  for (std::string* text : {&re_text, &im_text})
    if (*text == "-0") *text = "0";
  if (cfg.format == "json") {
    json report{{"command", "zeta"}, {"config", config_json(cfg)}};
    report["config"]["method"] = method;
    report["results"] = json::array({{{"re", re}, {"im", im}, {"zeta_re", re_text}, {"zeta_im", im_text}}});
    report["timings"] = nullptr;
    out.stream() << report.dump(2) << '\n';
  } else {
    out.stream() << re_text << ' ' << im_text << '\n';
  }
  return 0;
}

// --- prime-extract ------------------------------------------------------------

int cmd_prime_extract(const RunConfig& cfg, long n_max, const std::string& schedule_text) {
  if (n_max < 1) throw UsageError("--n must be >= 1");
  if (static_cast<std::uint64_t>(n_max) > kExtractCap)
    throw UsageError("--n " + std::to_string(n_max) + " exceeds the cap of " + std::to_string(kExtractCap));
  Schedule schedule;
  try {
    schedule = parse_schedule(schedule_text);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  const auto start = std::chrono::steady_clock::now();
  const ExtractionRun run = run_schedule(static_cast<std::uint64_t>(n_max), schedule, context_for(cfg));
  const double total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Output out(cfg.output_path);
  if (cfg.format == "json") {
    json report{{"command", "prime-extract"}, {"config", config_json(cfg)}};
    report["config"]["n"] = n_max;
    report["config"]["schedule"] = schedule.name();
    if (schedule.artifact_defined()) report["config"]["schedule_note"] = "schedule: artifact-defined";
    json steps = json::array();
    for (const auto& s : run.steps)
      steps.push_back({{"n", s.n}, {"a_n", s.a}, {"digits", s.digits}, {"p_n", s.p},
                       {"sandwich_left", s.sandwich_left}, {"sandwich_mid", s.sandwich_mid},
                       {"sandwich_right", s.sandwich_right}, {"elapsed_ms", s.elapsed_ms}});
    report["results"] = std::move(steps);
    report["primes"] = run.primes;
    report["timings"] = {{"total_ms", total_ms}};
    out.stream() << report.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < run.primes.size(); ++i) out.stream() << (i ? " " : "") << run.primes[i];
    out.stream() << '\n';
  }
  return 0;
}

// --- numbers ------------------------------------------------------------------

int cmd_numbers(const RunConfig& cfg, const std::string& kind, long n) {
  if (n < 0) throw UsageError("--n must be >= 0");
  std::vector<std::pair<unsigned, ExactRational>> rows;
  if (kind == "bernoulli") {
    if (n > 0) {
      const BernoulliTable table = bernoulli_recurrence_oracle(static_cast<unsigned>(n));
      for (unsigned i = 1; i <= static_cast<unsigned>(n); ++i) rows.emplace_back(i, table.at(i));
    }
  } else {
    if (n > 0) {
      const HurwitzTable table = hurwitz_numbers(static_cast<unsigned>(n), context_for(cfg));
      for (const auto& [index, value] : table.values) rows.emplace_back(index, value);
    }
  }
  Output out(cfg.output_path);
  if (cfg.format == "json") {
    json report{{"command", "numbers"}, {"config", config_json(cfg)}};
    report["config"]["kind"] = kind;
    report["config"]["n"] = n;
    json results = json::array();
    for (const auto& [index, value] : rows)
      results.push_back({{"index", index}, {"numerator", value.numerator().get_str()},
                         {"denominator", value.denominator().get_str()}});
    report["results"] = std::move(results);
    report["timings"] = nullptr;
    out.stream() << report.dump(2) << '\n';
  } else {
    out.stream() << "index,numerator,denominator\n";
    for (const auto& [index, value] : rows)
      out.stream() << index << ',' << value.numerator().get_str() << ',' << value.denominator().get_str() << '\n';
  }
  return 0;
}

// --- check --------------------------------------------------------------------

int cmd_check(const RunConfig& cfg, const std::string& suite, bool timings) {
  acceptance::Config acfg;
  acfg.ctx = context_for(cfg);
  acfg.seedless = cfg.seedless;
  acfg.primes_limit = cfg.primes_limit;
  const auto report = acceptance::run_suite(suite, acfg, [](const acceptance::CriterionResult& r) {
    std::fprintf(stderr, "%s  criterion %2d  %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                 r.detail.c_str());
  });
  Output out(cfg.output_path);
  out.stream() << report.to_json(acfg, timings).dump(2) << '\n';
  return report.all_passed() ? 0 : 1;
}

int digits_from_env() {
  const char* env = std::getenv("ZF_DIGITS");
  if (!env || !*env) return 30;
  try {
    std::size_t used = 0;
    const int d = std::stoi(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw UsageError(std::string("ZF_DIGITS is not an integer: '") + env + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized zeta, Euler product and prime-extraction toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<int> digits_flag;
  app.add_option("--digits", digits_flag, "decimal working precision (default 30, or $ZF_DIGITS)");
  app.add_flag("--seedless", cfg.seedless, "use a fixed low-discrepancy sequence instead of the seeded generator");
  app.add_option("-o,--output", cfg.output_path, "write output to this file instead of stdout");

  std::uint64_t primes_limit = 0;
  bool count_only = false;
  auto* primes = app.add_subcommand("primes", "sieve primes up to a limit");
  primes->add_option("--limit", primes_limit, "upper limit")->required();
  primes->add_flag("--count-only", count_only, "print only the count");
  primes->add_option("--cache", cfg.cache_path, "sieve cache file");
  primes->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "csv", "json"}));

  double s = 2.0, t_min = 0.0, t_max = 0.0, step = 0.01;
  auto* standard = app.add_subcommand("standard-form", "sample f_n, g_n, B_n, C_n over t as CSV");
  standard->add_option("--s", s, "real scale s")->default_val(2.0);
  standard->add_option("--t-min", t_min, "first t")->default_val(0.0);
  standard->add_option("--t-max", t_max, "last t")->required();
  standard->add_option("--step", step, "t spacing")->default_val(0.01);
  standard->add_option("--limit", cfg.primes_limit, "primes up to this bound")->default_val(1'000'000);
  standard->add_option("--workers", cfg.workers, "threads (0 = hardware)")->default_val(0);
  standard->add_option("--cache", cfg.cache_path, "sieve cache file");

  double z_re = 0.0, z_im = 0.0;
  std::string method = "eta";
  long zeta_terms = 1'000'000;
  auto* zeta = app.add_subcommand("zeta", "evaluate zeta(z) for Re z > 0");
  zeta->add_option("--re", z_re, "real part")->required();
  zeta->add_option("--im", z_im, "imaginary part")->default_val(0.0);
  zeta->add_option("--method", method, "dipole or eta")->check(CLI::IsMember({"dipole", "eta"}))->default_val("eta");
  zeta->add_option("--n", zeta_terms, "terms for the dipole method")->default_val(1'000'000);
  zeta->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "csv", "json"}));

  long extract_n = 0;
  std::string schedule = "n(n+1)";
  auto* extract = app.add_subcommand("prime-extract", "recover p_1..p_n from zeta values");
  extract->add_option("--n", extract_n, "number of primes (at most 25)")->required();
  extract->add_option("--schedule", schedule, "n(n+1) or log")->default_val("n(n+1)");
  extract->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "csv", "json"}));

  std::string kind = "bernoulli";
  long numbers_n = 0;
  auto* numbers = app.add_subcommand("numbers", "exact Bernoulli or Hurwitz numbers as CSV");
  numbers->add_option("--kind", kind, "bernoulli or hurwitz")->check(CLI::IsMember({"bernoulli", "hurwitz"}))->required();
  numbers->add_option("--n", numbers_n, "table size")->required();
  numbers->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string suite = "all";
  bool timings = false;
  auto* check = app.add_subcommand("check", "run acceptance suites; JSON report on stdout");
  check->add_option("--suite", suite, "all, dipole, euler, continuation, primes or numbers")
      ->check(CLI::IsMember({"all", "dipole", "euler", "continuation", "primes", "numbers"}))
      ->default_val("all");
  check->add_option("--limit", cfg.primes_limit, "prime bound for the standard-form criterion")->default_val(1'000'000);
  check->add_flag("--timings", timings, "include per-criterion timings (breaks byte-identical reports)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.digits = digits_flag ? *digits_flag : digits_from_env();
    if (cfg.digits < 15) throw UsageError("precision must be at least 15 digits");
    if (*primes) return cmd_primes(cfg, primes_limit, count_only);
    if (*standard) return cmd_standard_form(cfg, s, t_min, t_max, step);
    if (*zeta) return cmd_zeta(cfg, z_re, z_im, method, zeta_terms);
    if (*extract) return cmd_prime_extract(cfg, extract_n, schedule);
    if (*numbers) return cmd_numbers(cfg, kind, numbers_n);
    if (*check) return cmd_check(cfg, suite, timings);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return 3;
  } catch (const NoRootError& e) {
    std::cerr << "no root: " << e.what() << '\n';
    return 3;
  } catch (const InsufficientPrecision& e) {
    std::cerr << "insufficient precision: " << e.what() << '\n';
    return 4;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
