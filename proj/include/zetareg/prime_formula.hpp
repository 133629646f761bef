#pragma once

// Prime extraction from zeta values:
//
//   p_n = floor({log zeta(a_n) + sum_{r<n} log(1 - p_r^{-a_n})}^{-1/a_n}) + 1
//
// valid once a_n is at least p_n, because the bracketed quantity is trapped
// between p_n^{-a_n} and (p_n - 1)^{-a_n}.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "zetareg/dipole.hpp"
#include "zetareg/errors.hpp"
#include "zetareg/precision.hpp"
#include "zetareg/primes.hpp"
#include "zetareg/rational.hpp"
#include "zetareg/special_numbers.hpp"

namespace zetareg {

constexpr long kDirectSumLimit = 10'000'000;

// zeta(s) for real s >= 2. Even integers up to 60 go through the Bernoulli
// closed form; otherwise a direct sum with tail N^{1-s}/(s-1) below
// 10^-(digits+5). When that N is unreasonably large (small odd s at high
// precision) the accelerated eta series is used instead.
inline BigReal zeta_real_high_precision(double s, const PrecisionContext& ctx) {
  if (!(s >= 2.0)) throw DomainError("zeta_real_high_precision: s must be >= 2");
  const bool integral = std::floor(s) == s;
  if (integral && s <= 60.0 && static_cast<long>(s) % 2 == 0) return zeta_even_exact(static_cast<unsigned>(s), ctx);

  const double need = (ctx.total_digits() + 5.0 - std::log10(s - 1.0)) / (s - 1.0);
  if (need > std::log10(static_cast<double>(kDirectSumLimit))) {
    const int depth = static_cast<int>(std::ceil((ctx.total_digits() + 2.0) * std::numbers::ln10 /
                                                 std::log(3.0 + std::sqrt(8.0)))) + 4;
    return eta_series_big(Complex(s, 0.0), ctx, depth).re.with_precision(ctx.bits());
  }
  const long n_terms = std::max(2L, static_cast<long>(std::ceil(std::pow(10.0, need))) + 1);
  const mpfr_prec_t bits = ctx.bits() + 16;
  BigReal sum(bits);
  BigReal term(bits);
  const BigReal exponent(-s, bits);
  // smallest terms first
  for (long k = n_terms; k >= 1; --k) {
    if (integral) {
      mpfr_set_si(term.get(), k, MPFR_RNDN);
      mpfr_pow_si(term.get(), term.get(), -static_cast<long>(s), MPFR_RNDN);
    } else {
      term = pow(BigReal(k, bits), exponent);
    }
    sum += term;
  }
  return sum.with_precision(ctx.bits());
}

// Upper estimate p^_n of p_n from the primes already known: Bertrand gives
// p_n <= 2 p_{n-1} - 1, and for n >= 6 Rosser's p_n < n(log n + log log n).
inline double pn_upper_bound(std::uint64_t n, const std::vector<std::uint64_t>& known) {
  if (n < 1) throw PreconditionError("pn_upper_bound: n must be >= 1");
  if (n == 1) return 2.0;
  if (known.size() < n - 1) throw PreconditionError("pn_upper_bound: need p_1 .. p_{n-1}");
  double bound = 2.0 * static_cast<double>(known[n - 2]) - 1.0;
  if (n >= 6) {
    const double ln = std::log(static_cast<double>(n));
    bound = std::min(bound, static_cast<double>(n) * (ln + std::log(ln)));
  }
  return bound;
}

enum class ScheduleKind { quadratic, log_even };

// a_n = n(n+1), or the log-based reading: n(n+1) below n = 6, then the
// smallest even integer at or above p^_n (even keeps the Bernoulli path open).
struct Schedule {
  ScheduleKind kind = ScheduleKind::quadratic;

  long a(std::uint64_t n, const std::vector<std::uint64_t>& known) const {
    const long quad = static_cast<long>(n) * static_cast<long>(n + 1);
    if (kind == ScheduleKind::quadratic || n < 6) return quad;
    const long c = static_cast<long>(std::ceil(pn_upper_bound(n, known)));
    return c % 2 == 0 ? c : c + 1;
  }

  std::string name() const { return kind == ScheduleKind::quadratic ? "n(n+1)" : "log"; }
  bool artifact_defined() const { return kind == ScheduleKind::log_even; }
};

inline Schedule parse_schedule(const std::string& text) {
  if (text == "n(n+1)" || text == "quadratic") return {ScheduleKind::quadratic};
  if (text == "log" || text == "log-even") return {ScheduleKind::log_even};
  throw PreconditionError("unknown schedule '" + text + "' (expected n(n+1) or log)");
}

struct ExtractionState {
  std::vector<std::uint64_t> known;  // p_1 .. p_{n-1}
  Schedule schedule;
  PrecisionContext ctx;  // floor for the per-step precision

  std::uint64_t n() const { return known.size() + 1; }
};

// Working digits ceil(a log10 p^) + 20.
inline int extraction_digits(long a, double p_hat) {
  return static_cast<int>(std::ceil(static_cast<double>(a) * std::log10(p_hat))) + 20;
}

// log zeta(a) + sum_{r<n} log(1 - p_r^{-a}) at `digits`.
inline BigReal extraction_mid(const std::vector<std::uint64_t>& known, long a, int digits) {
  const PrecisionContext ctx(std::max(digits, 15), 10);
  const mpfr_prec_t bits = ctx.bits();
  BigReal acc = log(zeta_real_high_precision(static_cast<double>(a), ctx));
  BigReal term(bits);
  for (std::uint64_t p : known) {
    mpfr_set_ui(term.get(), p, MPFR_RNDN);
    mpfr_pow_si(term.get(), term.get(), -a, MPFR_RNDN);
    acc += log1p(-term);
  }
  return acc;
}

namespace detail {

// floor(mid^{-1/a}) + 1 at one precision level. The result is rejected when
// mid^{-1/a} sits within the uncertainty of an integer.
inline std::uint64_t extract_at(const std::vector<std::uint64_t>& known, long a, int digits) {
  const BigReal mid = extraction_mid(known, a, digits);
  if (mid.sign() <= 0) throw InsufficientPrecision("prime extraction: bracket cancelled to a non-positive value");
  // mid carries an absolute error near 10^-digits.
  long exp2 = 0;
  const double mantissa = mpfr_get_d_2exp(&exp2, mid.get(), MPFR_RNDN);
  const double log10_mid = std::log10(mantissa) + static_cast<double>(exp2) * std::log10(2.0);
  const double effective = static_cast<double>(digits) + log10_mid;
  if (effective < 8.0) throw InsufficientPrecision("prime extraction: fewer than 8 significant digits survive");

  const BigReal x = exp(-(log(mid) / a));
  const BigReal fl = floor(x);
  const BigReal frac = x - fl;
  const BigReal one(1L, x.precision());
  // half-width of the exclusion zone around integers, relative to x
  const double zone_log10 = std::log10(std::max(1.0, x.to_double())) - (effective - 3.0);
  const BigReal zone = exp(BigReal(zone_log10 * std::numbers::ln10, x.precision()));
  if (frac < zone || (one - frac) < zone)
    throw InsufficientPrecision("prime extraction: value falls inside the floor exclusion zone");
  return static_cast<std::uint64_t>(fl.to_double()) + 1;
}

}  // namespace detail

// Extraction at a fixed exponent a (no schedule), checked at two precision
// levels and by trial division.
inline std::uint64_t extract_with_exponent(const std::vector<std::uint64_t>& known, long a, int min_digits = 30) {
  const std::uint64_t n = known.size() + 1;
  const double p_hat = pn_upper_bound(n, known);
  if (static_cast<double>(a) < p_hat)
    throw PreconditionError("prime extraction: a_" + std::to_string(n) + " = " + std::to_string(a) +
                            " is below the upper estimate " + std::to_string(p_hat));
  const int digits = std::max(min_digits, extraction_digits(a, p_hat));
  const std::uint64_t lo = detail::extract_at(known, a, digits);
  const std::uint64_t hi = detail::extract_at(known, a, digits + 10);
  if (lo != hi) throw InsufficientPrecision("prime extraction: results differ at D and D+10 digits");
  if (!is_prime_trial(lo)) throw Error("prime extraction: extracted value " + std::to_string(lo) + " is not prime");
  if (!known.empty() && lo <= known.back()) throw Error("prime extraction: extracted value does not advance");
  return lo;
}

inline std::uint64_t extract_next_prime(const ExtractionState& state) {
  const long a = state.schedule.a(state.n(), state.known);
  return extract_with_exponent(state.known, a, state.ctx.digits);
}

struct SandwichCheck {
  BigReal left;    // (p_n - 1)^{-a}
  BigReal mid;     // sum_{r>=n} -log(1 - p_r^{-a}), primes up to the cutoff
  BigReal right;   // p_n^{-a}
  BigReal tail;    // rigorous bound on what the cutoff leaves out
  std::uint64_t p_n = 0;
  std::uint64_t cutoff = 0;
  bool holds = false;
};

constexpr std::uint64_t kSandwichSieveCap = 2'000'000;

// The middle term through the primes themselves:
//   sum_k (1/k) sum_{r>=n} p_r^{-ka} = sum_{r>=n} -log(1 - p_r^{-a}),
// truncated at P with tail <= P^{1-a} / ((a-1)(1 - P^{-a})).
// holds requires left >= mid + tail and mid > right.
inline SandwichCheck inequality_check(const std::vector<std::uint64_t>& known, long a,
                                      const PrecisionContext& ctx = PrecisionContext(30)) {
  if (a < 2) throw PreconditionError("inequality_check: a must be >= 2");
  const std::uint64_t n = known.size() + 1;
  const double p_hat = pn_upper_bound(n, known);
  // cutoff so the tail is ~1e-10 relative to p_n^{-a}
  const double log_p = std::log(std::max(2.0, p_hat));
  const double ad = static_cast<double>(a);
  const double log_cut = (ad * log_p + 23.03 - std::log(ad - 1.0)) / (ad - 1.0);
  std::uint64_t cutoff = static_cast<std::uint64_t>(2.0 * p_hat) + 10;
  if (log_cut < std::log(static_cast<double>(kSandwichSieveCap)))
    cutoff = std::max<std::uint64_t>(cutoff, static_cast<std::uint64_t>(std::exp(log_cut)) + 1);
  else
    cutoff = std::max<std::uint64_t>(cutoff, kSandwichSieveCap);

  const PrimeTable table = sieve(cutoff);
  if (table.count() < n) throw ResourceError("inequality_check: sieve too short");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (table[i] != known[i]) throw PreconditionError("inequality_check: known is not the first n-1 primes");

  // exponents can push far below double range; digits follow a log10 p_n
  const int digits = std::max(ctx.digits, 20);
  const mpfr_prec_t bits = PrecisionContext(digits, ctx.guard_digits).bits();
  SandwichCheck out{BigReal(bits), BigReal(bits), BigReal(bits), BigReal(bits)};
  out.p_n = table[n - 1];
  out.cutoff = cutoff;
  BigReal term(bits);
  mpfr_set_ui(out.left.get(), out.p_n - 1, MPFR_RNDN);
  mpfr_pow_si(out.left.get(), out.left.get(), -a, MPFR_RNDN);
  mpfr_set_ui(out.right.get(), out.p_n, MPFR_RNDN);
  mpfr_pow_si(out.right.get(), out.right.get(), -a, MPFR_RNDN);

  // largest primes first
  for (std::size_t i = table.count(); i-- > n - 1;) {
    mpfr_set_ui(term.get(), table[i], MPFR_RNDN);
    mpfr_pow_si(term.get(), term.get(), -a, MPFR_RNDN);
    out.mid -= log1p(-term);
  }
  BigReal cut(bits);
  mpfr_set_ui(cut.get(), cutoff, MPFR_RNDN);
  BigReal cut_pow(bits);
  mpfr_pow_si(cut_pow.get(), cut.get(), -a, MPFR_RNDN);
  out.tail = cut * cut_pow / ((BigReal(1L, bits) - cut_pow) * (a - 1));
  out.holds = out.left >= out.mid + out.tail && out.mid > out.right;
  return out;
}

inline SandwichCheck inequality_check(const ExtractionState& state) {
  return inequality_check(state.known, state.schedule.a(state.n(), state.known), state.ctx);
}

struct ExtractionStep {
  std::uint64_t n = 0;
  long a = 0;
  int digits = 0;
  std::uint64_t p = 0;
  std::string sandwich_left, sandwich_mid, sandwich_right;
  bool sandwich_holds = false;
  double elapsed_ms = 0.0;
};

struct ExtractionRun {
  std::vector<std::uint64_t> primes;
  std::vector<ExtractionStep> steps;
  Schedule schedule;
};

namespace detail {

[[noreturn]] inline void rethrow_with_step(std::uint64_t n) {
  const std::string prefix = "step n=" + std::to_string(n) + ": ";
  try {
    throw;
  } catch (const InsufficientPrecision& e) {
    throw InsufficientPrecision(prefix + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(prefix + e.what());
  } catch (const DomainError& e) {
    throw DomainError(prefix + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

}  // namespace detail

// Sequential extraction of p_1 .. p_{n_max}; the sandwich is checked at every
// step and a failure stops the run.
inline ExtractionRun run_schedule(std::uint64_t n_max, const Schedule& schedule,
                                  const PrecisionContext& ctx = PrecisionContext(30)) {
  if (n_max < 1) throw PreconditionError("run_schedule: n_max must be >= 1");
  ExtractionRun run;
  run.schedule = schedule;
  ExtractionState state{{}, schedule, ctx};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto start = std::chrono::steady_clock::now();
    ExtractionStep step;
    step.n = n;
    try {
      step.a = schedule.a(n, state.known);
      step.digits = std::max(ctx.digits, extraction_digits(step.a, pn_upper_bound(n, state.known)));
      step.p = extract_next_prime(state);
      const SandwichCheck check = inequality_check(state);
      if (check.p_n != step.p) throw Error("extracted prime disagrees with the sieve");
      if (!check.holds) throw Error("sandwich inequality fails");
      step.sandwich_left = check.left.to_string(17);
      step.sandwich_mid = check.mid.to_string(17);
      step.sandwich_right = check.right.to_string(17);
      step.sandwich_holds = check.holds;
    } catch (const Error&) {
      detail::rethrow_with_step(n);
    }
    step.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    state.known.push_back(step.p);
    run.primes.push_back(step.p);
    run.steps.push_back(std::move(step));
  }
  return run;
}

// Extraction at a and 2a agree: a finite stand-in for the a -> infinity limit.
inline bool stability_in_s(const std::vector<std::uint64_t>& known, long a) {
  return extract_with_exponent(known, a) == extract_with_exponent(known, 2 * a);
}

}  // namespace zetareg
