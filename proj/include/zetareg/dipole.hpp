#pragma once

// Dipole cancellation limit: a series sum b_k is split term by term with weights
// alpha_k so that (1 - alpha_k) b_k + alpha_{k+1} b_{k+1} = 0 (the dipole
// equation). The surviving initial weight gives the regularized value.
//
// This header holds the worked series (geometric, harmonic, factorial bound,
// Dirichlet zeta, alternating exponential) plus the accelerated eta series
// used as the independent zeta oracle everywhere else in the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "zetareg/errors.hpp"
#include "zetareg/numerics.hpp"
#include "zetareg/precision.hpp"

namespace zetareg {

struct DipoleSeries {
  std::string label;
  std::function<Complex(long k, Complex z)> term;  // b_k(z), k >= 1
};

struct DipoleSolution {
  std::function<Complex(long k)> alpha;  // alpha_k at the solution's z
  Complex dipole_value{};
  double residual_bound = 0.0;  // measured max residual over the checked range
};

// max_{1<=k<=k_max} |(1 - alpha_k) b_k + alpha_{k+1} b_{k+1}|
inline double dipole_residual(const DipoleSeries& series, const DipoleSolution& sol, long k_max, Complex z) {
  if (k_max < 1) throw PreconditionError("dipole_residual: k_max must be >= 1");
  double worst = 0.0;
  Complex b_next = series.term(1, z);
  for (long k = 1; k <= k_max; ++k) {
    const Complex b = b_next;
    b_next = series.term(k + 1, z);
    const Complex r = (1.0 - sol.alpha(k)) * b + sol.alpha(k + 1) * b_next;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

// Same residual divided by max(|b_k|, |b_{k+1}|); the meaningful measure for
// series whose terms grow without bound.
inline double dipole_residual_relative(const DipoleSeries& series, const DipoleSolution& sol, long k_max,
                                       Complex z) {
  if (k_max < 1) throw PreconditionError("dipole_residual_relative: k_max must be >= 1");
  double worst = 0.0;
  Complex b_next = series.term(1, z);
  for (long k = 1; k <= k_max; ++k) {
    const Complex b = b_next;
    b_next = series.term(k + 1, z);
    const Complex r = (1.0 - sol.alpha(k)) * b + sol.alpha(k + 1) * b_next;
    const double scale = std::max(std::abs(b), std::abs(b_next));
    if (scale > 0.0) worst = std::max(worst, std::abs(r) / scale);
  }
  return worst;
}

// --- worked series ---------------------------------------------------------

inline DipoleSeries geometric_series() {
  return {"geometric", [](long k, Complex z) { return std::pow(z, static_cast<double>(k - 1)); }};
}

inline DipoleSeries harmonic_series() {
  return {"harmonic", [](long k, Complex) { return Complex(1.0 / static_cast<double>(k)); }};
}

inline DipoleSeries zeta_series() {
  return {"zeta", [](long k, Complex z) { return std::exp(-z * std::log(static_cast<double>(k))); }};
}

// b_k = (-e^a)^k / k, the alternating exponential series E_n.
inline DipoleSeries exp_alternating_series(double a) {
  return {"exp-alternating", [a](long k, Complex) {
            const double mag = std::exp(a * static_cast<double>(k)) / static_cast<double>(k);
            return Complex(k % 2 == 0 ? mag : -mag);
          }};
}

constexpr long kResidualCheckTerms = 100;

inline DipoleSolution geometric_dipole(Complex z) {
  if (z == Complex(1.0, 0.0)) throw PoleError("geometric_dipole: pole at z = 1");
  const Complex alpha = 1.0 / (1.0 - z);
  DipoleSolution sol{[alpha](long) { return alpha; }, alpha, 0.0};
  sol.residual_bound = dipole_residual(geometric_series(), sol, kResidualCheckTerms, z);
  return sol;
}

// alpha_k = -k psi(k) with psi(1) = -gamma and psi(k+1) = psi(k) + 1/k, carried
// at the context precision and rounded once per entry.
inline DipoleSolution harmonic_dipole(long k_max, const PrecisionContext& ctx) {
  if (k_max < 1) throw PreconditionError("harmonic_dipole: k_max must be >= 1");
  std::vector<double> alpha;
  alpha.reserve(static_cast<std::size_t>(k_max) + 1);
  BigReal psi = -euler_gamma(ctx);
  const BigReal gamma_value = -psi;
  BigReal one(1L, ctx);
  for (long k = 1; k <= k_max + 1; ++k) {
    alpha.push_back((-(psi * k)).to_double());
    psi += one / BigReal(k, ctx);
  }
  DipoleSolution sol;
  sol.alpha = [alpha = std::move(alpha)](long k) {
    if (k < 1 || static_cast<std::size_t>(k) > alpha.size())
      throw RangeError("harmonic_dipole: alpha index outside the solved range");
    return Complex(alpha[static_cast<std::size_t>(k) - 1]);
  };
  sol.dipole_value = Complex(gamma_value.to_double());
  sol.residual_bound = dipole_residual(harmonic_series(), sol, k_max, Complex(0.0));
  return sol;
}

// Closed-form upper bound 2 + (z log z - 2 - 2z) / e^z for the regularized
// factorial series sum (k-1)!/z^{k-1}. Only the bound is available; no exact
// dipole solution is claimed.
inline double factorial_series_bound(double z) {
  if (!(z > 0.0)) throw DomainError("factorial_series_bound: z must be positive");
  return 2.0 + (z * std::log(z) - 2.0 - 2.0 * z) * std::exp(-z);
}

// Regularized partial zeta: sum_{k<=n} k^{-z} - n^{1-z}/(1-z). With
// `correction`, the next Euler-Maclaurin term n^{-z}/2 is also removed
// (an accuracy extension beyond the leading term).
inline Complex zeta_dipole(Complex z, long n, bool correction = false) {
  if (z == Complex(1.0, 0.0)) throw PoleError("zeta_dipole: pole at z = 1");
  if (z.real() <= 0.0) throw DomainError("zeta_dipole: Re z must be positive");
  if (n < 2) throw PreconditionError("zeta_dipole: n must be >= 2");
  CompensatedSum<Complex> sum;
  for (long k = 1; k <= n; ++k) sum.add(std::exp(-z * std::log(static_cast<double>(k))));
  const double log_n = std::log(static_cast<double>(n));
  Complex result = sum.value() - std::exp((1.0 - z) * log_n) / (1.0 - z);
  if (correction) result -= 0.5 * std::exp(-z * log_n);
  return result;
}

// --- eta series oracle -----------------------------------------------------

namespace detail {

inline int eta_default_depth(Complex z, int target_digits) {
  const double extra = std::numbers::pi * std::abs(z.imag()) / (2.0 * std::numbers::ln10);
  return static_cast<int>(std::ceil((target_digits + extra + 1.0) * std::numbers::ln10 /
                                    std::log(3.0 + std::sqrt(8.0)))) + 4;
}

}  // namespace detail

// zeta(z) = (1 - 2^{1-z})^{-1} sum_{n>=1} (-1)^{n-1} n^{-z}, the alternating sum
// accelerated with the Cohen-Rodriguez Villegas-Zagier weights (an Euler-type
// transformation). `depth` = 0 picks the number of terms for ctx.digits/2
// correct digits (at least 18).
inline BigComplex eta_series_big(Complex z, const PrecisionContext& ctx, int depth = 0) {
  if (z.real() <= 0.0) throw DomainError("eta_series: Re z must be positive");
  if (z == Complex(1.0, 0.0)) throw PoleError("eta_series: pole at z = 1");
  // 2^{1-z} = 1 on Re z = 1, Im z = 2 pi k / log 2: the prefactor is 0/0 there
  if (std::abs(1.0 - std::exp((1.0 - z) * std::numbers::ln2)) < 1e-12)
    throw PoleError("eta_series: 1 - 2^{1-z} vanishes");
  const int target = std::max(ctx.digits / 2, 18);
  const int n = depth > 0 ? depth : detail::eta_default_depth(z, target);
  // CVZ weights reach (3+sqrt8)^n; carry that many extra bits.
  const mpfr_prec_t bits = ctx.bits() + static_cast<mpfr_prec_t>(2.55 * n) + 16;

  BigComplex zb(BigReal(z.real(), bits), BigReal(z.imag(), bits));
  BigReal d = pow(BigReal(3L, bits) + sqrt(BigReal(8L, bits)), static_cast<long>(n));
  d = (d + BigReal(1L, bits) / d) / 2L;
  BigReal b(-1L, bits);
  BigReal c = -d;
  BigComplex s(bits);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    BigComplex term = pow_neg(log(BigReal(k + 1, bits)), zb);
    s += term * c;
    // b <- (k+n)(k-n) b / ((k+1/2)(k+1))
    b *= (k + n) * (k - n) * 2L;
    b /= (2 * k + 1) * (k + 1);
  }
  BigComplex eta{s.re / d, s.im / d};
  // 1 - 2^{1-z}
  BigComplex one_minus_z{BigReal(1L, bits) - zb.re, -zb.im};
  BigComplex two_pow = pow_neg(log(BigReal(2L, bits)), BigComplex{-one_minus_z.re, -one_minus_z.im});
  BigComplex factor{BigReal(1L, bits) - two_pow.re, -two_pow.im};
  return eta / factor;
}

inline Complex eta_series(Complex z, const PrecisionContext& ctx = PrecisionContext(30), int depth = 0) {
  return eta_series_big(z, ctx, depth).to_complex();
}

// |(1 - 2^{1-z}) zeta_dipole(z, n) - sum_{k<=2n} (-1)^{k-1} k^{-z}|
inline double eta_consistency(Complex z, long n) {
  const Complex regularized = zeta_dipole(z, n, false);
  CompensatedSum<Complex> alt;
  for (long k = 1; k <= 2 * n; ++k) {
    const Complex t = std::exp(-z * std::log(static_cast<double>(k)));
    alt.add(k % 2 == 1 ? t : -t);
  }
  const Complex factor = 1.0 - std::exp((1.0 - z) * std::numbers::ln2);
  return std::abs(factor * regularized - alt.value());
}

// --- alternating exponential series ------------------------------------------

struct ExpAlternatingDipole {
  DipoleSolution solution;          // dipole_value = alpha_1 = e^{-a} log(1 + e^a)
  double regularized_sum = 0.0;     // E = -log(1 + e^a)
  std::vector<double> partial_sums; // E_1 .. E_{n_max}
};

// E_n = sum_{m<=n} (-e^a)^m / m. The dipole equation for this series solves to
// alpha_n = -n (-e^a)^{-n} (E_{n-1} - E), i.e. alpha_n b_n = E - E_{n-1}; the
// alphas are formed at a precision that absorbs the growth of (-e^a)^{+-n}.
inline ExpAlternatingDipole exp_alternating_dipole(double a, long n_max) {
  if (n_max < 1) throw PreconditionError("exp_alternating_dipole: n_max must be >= 1");
  const mpfr_prec_t bits = 96 + static_cast<mpfr_prec_t>(std::ceil(1.45 * std::abs(a) * (n_max + 2)));
  const BigReal ea = exp(BigReal(a, bits));
  const BigReal e_reg = -log1p(ea);
  const BigReal neg_ea = -ea;

  ExpAlternatingDipole out;
  out.regularized_sum = -std::log1p(std::exp(a));
  std::vector<double> alpha;
  alpha.reserve(static_cast<std::size_t>(n_max) + 1);
  BigReal partial(bits);          // E_{k-1}
  BigReal power(1L, bits);        // (-e^a)^{k-1}
  for (long k = 1; k <= n_max + 1; ++k) {
    BigReal next_power = power * neg_ea;  // (-e^a)^k
    alpha.push_back((-(partial - e_reg) * k / next_power).to_double());
    partial += next_power / BigReal(k, bits);
    if (k <= n_max) out.partial_sums.push_back(partial.to_double());
    power = std::move(next_power);
  }
  out.solution.alpha = [alpha = std::move(alpha)](long k) {
    if (k < 1 || static_cast<std::size_t>(k) > alpha.size())
      throw RangeError("exp_alternating_dipole: alpha index outside the solved range");
    return Complex(alpha[static_cast<std::size_t>(k) - 1]);
  };
  out.solution.dipole_value = Complex(std::exp(-a) * std::log1p(std::exp(a)));
  const long check = std::min<long>(n_max, kResidualCheckTerms);
  out.solution.residual_bound = dipole_residual(exp_alternating_series(a), out.solution, check, Complex(0.0));
  return out;
}

// --- (1 + A_n/n)^n versus e^{A_n} ----------------------------------------------

inline double exp_limit_error(double value, long n) {
  if (n < 1) throw PreconditionError("exp_limit_check: probes must be positive");
  const double x = value / static_cast<double>(n);
  if (x <= -1.0) throw DomainError("exp_limit_check: 1 + A_n/n must be positive");
  return std::abs(std::exp(static_cast<double>(n) * std::log1p(x)) - std::exp(value));
}

inline double exp_limit_check(const std::function<double(long)>& sequence, std::span<const long> probes) {
  double worst = 0.0;
  for (long n : probes) worst = std::max(worst, exp_limit_error(sequence(n), n));
  return worst;
}

}  // namespace zetareg
