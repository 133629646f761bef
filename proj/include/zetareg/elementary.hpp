#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>

#include "zetareg/errors.hpp"
#include "zetareg/precision.hpp"

namespace zetareg {

// log Gamma(z) for complex z by the Lanczos approximation (g = 7, 9 terms),
// with reflection for Re z < 1/2. Relative accuracy ~1e-15 away from poles.
// The branch of the logarithm is not the principal one of Gamma itself; only
// exp(log_gamma) and differences of log_gamma are meaningful.
inline std::complex<double> log_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  constexpr double kPi = std::numbers::pi;
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  const C w = z - 1.0;
  C x = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) x += kCoef[i] / (w + static_cast<double>(i));
  const C t = w + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(t) - t + std::log(x);
}

inline double log_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw PoleError("log_gamma: pole at non-positive integer");
  return std::lgamma(x);
}

enum class Elementary { exp, log, cos, pow, log_gamma };

// Dispatching front end over the individual functions; `args` holds one
// argument, or two for pow (base, exponent).
inline BigReal elementary(Elementary f, std::span<const BigReal> args, const PrecisionContext& ctx) {
  const std::size_t want = f == Elementary::pow ? 2 : 1;
  if (args.size() != want) throw PreconditionError("elementary: wrong number of arguments");
  const BigReal x = args[0].with_precision(ctx.bits());
  switch (f) {
    case Elementary::exp: return exp(x);
    case Elementary::log: return log(x);
    case Elementary::cos: return cos(x);
    case Elementary::pow: return pow(x, args[1].with_precision(ctx.bits()));
    case Elementary::log_gamma: {
      if (x.sign() <= 0 && is_integer(x)) throw PoleError("log_gamma: pole at non-positive integer");
      // log |Gamma(x)|
      BigReal r(ctx.bits());
      int sign = 0;
      mpfr_lgamma(r.get(), &sign, x.get(), MPFR_RNDN);
      return r;
    }
  }
  throw PreconditionError("elementary: unknown function");
}

}  // namespace zetareg
