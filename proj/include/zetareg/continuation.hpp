#pragma once

// Analytic continuation of the oscillatory prime sum B(s,t). After the change
// of variables r = s t log p the sum behaves like the integral of
// e^{ar} cos(r) / r with a = (1/s - 1/2)/t; the integral is split into
// pi-segments and regularized by the dipole equation.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "zetareg/dipole.hpp"
#include "zetareg/elementary.hpp"
#include "zetareg/errors.hpp"
#include "zetareg/numerics.hpp"
#include "zetareg/precision.hpp"

namespace zetareg {

struct OscillatorParams {
  double a = 0.0;  // growth rate of the envelope e^{ar}/r
  long M = 1;      // segment offset: segment k covers [(M+k)pi, (M+k+1)pi]
  double s = 0.0;  // 0 when built directly from a
  double t = 0.0;

  static OscillatorParams from_a(double a, long M) { return {a, M, 0.0, 0.0}; }
};

// a = (1/s - 1/2)/t; positive exactly when s < 2.
inline OscillatorParams oscillator_params(double s, double t, long M) {
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("oscillator_params: s must lie in (0, 2]");
  if (!(t > 0.0)) throw DomainError("oscillator_params: t must be positive");
  return {(1.0 / s - 0.5) / t, M, s, t};
}

inline double oscillator_integrand(double r, double a) { return std::exp(a * r) * std::cos(r) / r; }

constexpr double kSeriesRadius = 40.0;

namespace detail {

// log r + sum_{k>=1} Re((a+i)^k) r^k / (k! k). The partial terms reach
// exp(|a+i| r) before cancelling, so the sum runs with that many extra bits.
inline double exp_integral_series(double r, double a) {
  const double modulus = std::hypot(a, 1.0);
  const mpfr_prec_t bits = 80 + static_cast<mpfr_prec_t>(std::ceil(modulus * r * 1.4426950408889634));
  const BigReal rb(r, bits);
  const BigReal cr_re = BigReal(a, bits) * rb;  // Re(c r)
  const BigReal& cr_im = rb;                    // Im(c r)
  BigReal w_re(1L, bits), w_im(bits);           // (c r)^k / k!
  BigReal sum = log(rb);
  BigReal eps(1L, bits);
  mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(bits) + 8, MPFR_RNDN);
  const double k_min = modulus * r;
  for (long k = 1;; ++k) {
    BigReal next_re = (w_re * cr_re - w_im * cr_im) / k;
    BigReal next_im = (w_re * cr_im + w_im * cr_re) / k;
    w_re = std::move(next_re);
    w_im = std::move(next_im);
    sum += w_re / k;
    if (static_cast<double>(k) > k_min) {
      const double mag = std::hypot(w_re.to_double(), w_im.to_double()) / static_cast<double>(k);
      if (mag < 1e-30 * std::max(1.0, std::abs(sum.to_double()))) break;
    }
    if (k > 100000) throw Error("exp_integral_real: series failed to converge");
  }
  return sum.to_double();
}

}  // namespace detail

// Real part of the antiderivative of e^{(a+i)r}/r: an antiderivative of
// e^{ar} cos(r)/r. Power series up to r = 40, adaptive quadrature beyond.
inline double exp_integral_real(double r, double a) {
  if (!(r > 0.0)) throw DomainError("exp_integral_real: r must be positive");
  if (a * r > 700.0) throw OverflowError("exp_integral_real: a*r exceeds the exponential range");
  if (r <= kSeriesRadius) return detail::exp_integral_series(r, a);
  // one GK61 panel per half-period keeps every piece smooth and cheap
  CompensatedSum<double> acc;
  acc.add(detail::exp_integral_series(kSeriesRadius, a));
  auto f = [a](double x) { return oscillator_integrand(x, a); };
  const double width = 0.5 * std::numbers::pi;
  for (double lo = kSeriesRadius; lo < r; lo += width) {
    double err = 0.0;
    acc.add(boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, std::min(r, lo + width), 6, 1e-15, &err));
  }
  return acc.value();
}

// Integral of e^{ar} cos r / r over segment k, [(M+k)pi, (M+k+1)pi].
inline double segment_integral(long k, const OscillatorParams& p) {
  if (k < 0) throw PreconditionError("segment_integral: k must be >= 0");
  const double lo = static_cast<double>(p.M + k) * std::numbers::pi;
  const double hi = lo + std::numbers::pi;
  if (!(lo > 0.0)) throw DomainError("segment_integral: segment must lie in r > 0");
  return exp_integral_real(hi, p.a) - exp_integral_real(lo, p.a);
}

// beta_{k+1} in [0, pi) with E((M+k+1)pi + beta_{k+1}) = E((M+k)pi + beta_k).
// The integrand changes sign at the segment midpoint, so the two halves of the
// next segment are searched in turn for a sign change.
inline double solve_beta_next(double beta_k, long k, const OscillatorParams& p) {
  constexpr double pi = std::numbers::pi;
  if (!(beta_k >= 0.0 && beta_k < pi)) throw PreconditionError("solve_beta_next: beta_k must lie in [0, pi)");
  const double target = exp_integral_real(static_cast<double>(p.M + k) * pi + beta_k, p.a);
  const double base = static_cast<double>(p.M + k + 1) * pi;
  auto g = [&](double beta) { return exp_integral_real(base + beta, p.a) - target; };

  const double edges[3] = {0.0, 0.5 * pi, std::nextafter(pi, 0.0)};
  for (int half = 0; half < 2; ++half) {
    const double lo = edges[half], hi = edges[half + 1];
    const double g_lo = g(lo), g_hi = g(hi);
    if (g_lo == 0.0) return lo;
    if ((g_lo < 0.0) == (g_hi < 0.0)) continue;
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        g, lo, hi, g_lo, g_hi, [](double x, double y) { return std::abs(x - y) <= 1e-13; }, iters);
    return 0.5 * (bracket.first + bracket.second);
  }
  throw NoRootError("solve_beta_next: no sign change of the continuity equation on [0, pi)");
}

// (alpha_k, alpha_{k+1}) from the partition points via ratios of partial to
// full segment integrals.
inline std::pair<double, double> alpha_from_beta(double beta_k, double beta_k1, long k, const OscillatorParams& p) {
  constexpr double pi = std::numbers::pi;
  if (!(beta_k >= 0.0 && beta_k < pi && beta_k1 >= 0.0 && beta_k1 < pi))
    throw PreconditionError("alpha_from_beta: betas must lie in [0, pi)");
  const double start_k = static_cast<double>(p.M + k) * pi;
  const double start_k1 = start_k + pi;
  const double e_k = exp_integral_real(start_k, p.a);
  const double e_k1 = exp_integral_real(start_k1, p.a);
  const double e_k2 = exp_integral_real(start_k1 + pi, p.a);
  const double full_k = e_k1 - e_k;
  const double full_k1 = e_k2 - e_k1;
  if (full_k == 0.0 || full_k1 == 0.0) throw DivisionError("alpha_from_beta: vanishing segment integral");
  const double partial_k = beta_k == 0.0 ? full_k : e_k1 - exp_integral_real(start_k + beta_k, p.a);
  const double partial_k1 = beta_k1 == 0.0 ? 0.0 : exp_integral_real(start_k1 + beta_k1, p.a) - e_k1;
  return {1.0 - partial_k / full_k, partial_k1 / full_k1};
}

struct BetaPartition {
  long M = 0;
  std::vector<double> betas;  // beta_0, beta_1, ...
  bool complete = true;       // false when a later root did not exist
  std::string stop_reason;
};

// beta_0 .. beta_{steps}; stops early (complete = false) at the first step
// without a root instead of guessing one.
inline BetaPartition beta_chain(double beta0, long steps, const OscillatorParams& p) {
  BetaPartition out;
  out.M = p.M;
  out.betas.push_back(beta0);
  for (long k = 0; k < steps; ++k) {
    try {
      out.betas.push_back(solve_beta_next(out.betas.back(), k, p));
    } catch (const NoRootError& e) {
      out.complete = false;
      out.stop_reason = "k=" + std::to_string(k) + ": " + e.what();
      break;
    }
  }
  return out;
}

// (1 - alpha_k) segment(k) + alpha_{k+1} segment(k+1)
inline double beta_dipole_residual(double beta_k, double beta_k1, long k, const OscillatorParams& p) {
  const auto [alpha_k, alpha_k1] = alpha_from_beta(beta_k, beta_k1, k, p);
  return (1.0 - alpha_k) * segment_integral(k, p) + alpha_k1 * segment_integral(k + 1, p);
}

struct RegularizedB {
  double a = 0.0;
  double value = 0.0;  // -log(1 + e^a)
  double lower = 0.0;
  double upper = 0.0;
  std::string caveat;
};

// Dipole-regularized B(s,t) in the strip 1 < s < 2 with the bracket
// -(1/2)(1 - 4/N) L and -(1 + 4/N) L, L = log(1 + e^a), sorted numerically.
inline RegularizedB regularized_B(double s, double t, long bracket_N = 1000) {
  if (!(s > 1.0 && s < 2.0)) throw DomainError("regularized_B: s must lie in (1, 2)");
  if (!(t > 0.0)) throw DomainError("regularized_B: t must be positive");
  if (bracket_N <= 4) throw PreconditionError("regularized_B: bracket N must exceed 4");
  RegularizedB out;
  out.a = (1.0 / s - 0.5) / t;
  const double L = std::log1p(std::exp(out.a));
  const double eps = 4.0 / static_cast<double>(bracket_N);
  out.value = -L;
  const double e1 = -0.5 * (1.0 - eps) * L;
  const double e2 = -(1.0 + eps) * L;
  out.lower = std::min(e1, e2);
  out.upper = std::max(e1, e2);
  out.caveat = "bracket endpoints sorted numerically; additive O(1) terms suppressed";
  return out;
}

// |zeta(z) - pi^{z-1/2} Gamma((1-z)/2)/Gamma(z/2) zeta(1-z)| with both zeta
// values from the eta series.
inline double functional_equation_check(Complex z, const PrecisionContext& ctx = PrecisionContext(30)) {
  if (!(z.real() > 0.0 && z.real() < 1.0)) throw DomainError("functional_equation_check: need 0 < Re z < 1");
  const Complex lhs = eta_series(z, ctx);
  const Complex zeta_reflected = eta_series(1.0 - z, ctx);
  const Complex factor = std::exp((z - 0.5) * std::log(std::numbers::pi) + log_gamma((1.0 - z) / 2.0) -
                                  log_gamma(z / 2.0));
  return std::abs(lhs - factor * zeta_reflected);
}

}  // namespace zetareg
