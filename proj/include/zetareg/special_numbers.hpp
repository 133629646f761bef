#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>

#include "zetareg/errors.hpp"
#include "zetareg/numerics.hpp"
#include "zetareg/precision.hpp"
#include "zetareg/rational.hpp"

namespace zetareg {

struct BernoulliTable {
  std::map<unsigned, ExactRational> values;

  const ExactRational& at(unsigned n) const {
    auto it = values.find(n);
    if (it == values.end()) throw RangeError("BernoulliTable: index not tabulated");
    return it->second;
  }
};

// B_n = sum_{m=0}^{n} 1/(m+1) sum_{l=0}^{m} (-1)^l C(m,l) l^n, with 0^0 = 1.
// This convention gives B_1 = -1/2; every other value is sign-convention free.
inline ExactRational bernoulli_double_sum(unsigned n) {
  ExactRational total;
  BigInt power;
  for (unsigned m = 0; m <= n; ++m) {
    BigInt inner = 0;
    for (unsigned l = 0; l <= m; ++l) {
      mpz_ui_pow_ui(power.get_mpz_t(), l, n);
      BigInt term = binomial(m, l) * power;
      if (l % 2 == 0)
        inner += term;
      else
        inner -= term;
    }
    total += ExactRational(inner, BigInt(m + 1));
  }
  return total;
}

// sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1, B_0 = 1.
inline BernoulliTable bernoulli_recurrence_oracle(unsigned n_max) {
  BernoulliTable table;
  std::vector<ExactRational> b{ExactRational(1)};
  for (unsigned m = 1; m <= n_max; ++m) {
    ExactRational acc;
    for (unsigned k = 0; k < m; ++k) acc += ExactRational(binomial(m + 1, k)) * b[k];
    b.push_back(-acc / ExactRational(static_cast<long>(m) + 1));
  }
  for (unsigned i = 0; i <= n_max; ++i) table.values.emplace(i, b[i]);
  return table;
}

namespace detail {

// floor(2(2^{2n}-1)(2n)! / (2^{2n-1} pi^{2n}) * sum_{m=1}^{3n} m^{-2n}) at the
// given precision.
inline BigInt single_sum_floor_at(unsigned n, mpfr_prec_t bits) {
  const unsigned two_n = 2 * n;
  ExactRational partial;
  BigInt power;
  for (unsigned m = 1; m <= 3 * n; ++m) {
    mpz_ui_pow_ui(power.get_mpz_t(), m, two_n);
    partial += ExactRational(BigInt(1), power);
  }
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, two_n);
  BigInt half_pow;
  mpz_ui_pow_ui(half_pow.get_mpz_t(), 2, two_n - 1);
  const ExactRational rational_part =
      ExactRational(BigInt(2) * (two_pow - 1) * factorial(two_n), half_pow) * partial;
  const BigReal value = rational_part.to_big(bits) / pow(const_pi(bits), static_cast<long>(two_n));
  return floor_to_int(value);
}

}  // namespace detail

// The floored quantity in the single-sum formula. Its true value sits just
// below the integer 2(2^{2n}-1)|B_{2n}|, so the working precision covers the
// magnitude plus the truncation gap (3n)^{1-2n}, and the floor is confirmed at
// two precision levels.
inline BigInt bernoulli_single_sum_floor(unsigned n, const PrecisionContext& ctx) {
  if (n < 1) throw PreconditionError("bernoulli_single_sum: n must be >= 1");
  const double two_n = 2.0 * n;
  const double gap_digits = (two_n - 1.0) * std::log10(3.0 * n) + std::log10(two_n);
  const double magnitude_digits =
      (std::lgamma(two_n + 1.0) - two_n * std::log(2.0 * std::numbers::pi)) / std::numbers::ln10 +
      two_n * std::log10(2.0) + 2.0;
  const int digits = ctx.total_digits() + static_cast<int>(std::ceil(gap_digits + std::max(0.0, magnitude_digits)));
  const BigInt lo = detail::single_sum_floor_at(n, digits_to_bits(digits));
  const BigInt hi = detail::single_sum_floor_at(n, digits_to_bits(digits + 10));
  if (lo != hi) throw InsufficientPrecision("bernoulli_single_sum: floor differs between precision levels");
  return lo;
}

// B_{2n} = (-1)^{n+1} (1 + floor(...)) / (2(2^{2n}-1)).
inline ExactRational bernoulli_single_sum(unsigned n, const PrecisionContext& ctx) {
  const BigInt inner = bernoulli_single_sum_floor(n, ctx);
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, 2 * n);
  ExactRational magnitude(inner + 1, BigInt(2) * (two_pow - 1));
  return n % 2 == 1 ? magnitude : -magnitude;
}

// zeta(m) = (2 pi)^m |B_m| / (2 m!) for even 2 <= m <= 60.
inline BigReal zeta_even_exact(unsigned m, const PrecisionContext& ctx) {
  if (m == 0 || m % 2 != 0) throw DomainError("zeta_even_exact: m must be even and positive");
  if (m > 60) throw DomainError("zeta_even_exact: m must be <= 60");
  const ExactRational b = bernoulli_recurrence_oracle(m).at(m).abs();
  const mpfr_prec_t bits = ctx.bits() + 16;
  BigReal two_pi = const_pi(bits) * 2L;
  BigReal num = pow(two_pi, static_cast<long>(m)) * b.to_big(bits);
  return (num / (to_big(factorial(m), bits) * 2L)).with_precision(ctx.bits());
}

// --- Hurwitz pi and numbers ---------------------------------------------------

// 2 * integral_0^1 dx / sqrt(1 - x^k), k a power of two (k = 4 is varpi).
inline BigReal generalized_hurwitz_pi(unsigned k, const PrecisionContext& ctx) {
  if (k < 2 || (k & (k - 1)) != 0) throw DomainError("generalized_hurwitz_pi: k must be a power of two >= 2");
  const mpfr_prec_t bits = ctx.bits() + 16;
  // 1 - x^k = (1 - x)(1 + x + ... + x^{k-1})
  auto integrand = [k](const BigReal& x, const BigReal& one_minus_x) {
    BigReal poly(1L, x.precision());
    for (unsigned j = 1; j < k; ++j) {
      poly *= x;
      poly += 1L;
    }
    return BigReal(1L, x.precision()) / sqrt(one_minus_x * poly);
  };
  return (tanh_sinh_unit(integrand, bits) * 2L).with_precision(ctx.bits());
}

inline BigReal hurwitz_pi(const PrecisionContext& ctx) { return generalized_hurwitz_pi(4, ctx); }

// varpi = pi / AGM(1, sqrt 2)
inline BigReal hurwitz_pi_agm(const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits() + 16;
  BigReal one(1L, bits);
  BigReal root2 = sqrt(BigReal(2L, bits));
  BigReal agm(bits);
  mpfr_agm(agm.get(), one.get(), root2.get(), MPFR_RNDN);
  return (const_pi(bits) / agm).with_precision(ctx.bits());
}

struct HurwitzTable {
  std::map<unsigned, ExactRational> values;  // keyed by 4n
  BigReal pi_lemniscate;

  const ExactRational& at(unsigned index) const {
    auto it = values.find(index);
    if (it == values.end()) throw RangeError("HurwitzTable: index not tabulated");
    return it->second;
  }
};

// H_4 = 1/10 and
//   (2n-3)(4n-1)(4n+1) H_{4n} = 3 sum_{i=1}^{n-1} (4i-1)(4n-4i-1) C(4n,4i) H_{4i} H_{4(n-i)}.
// The sum starts at i = 1: there is no H_0 term.
inline HurwitzTable hurwitz_numbers(unsigned n_max, const PrecisionContext& ctx = PrecisionContext(30)) {
  if (n_max < 1) throw PreconditionError("hurwitz_numbers: n_max must be >= 1");
  HurwitzTable table{{}, hurwitz_pi(ctx)};
  std::vector<ExactRational> h(n_max + 1);
  h[1] = ExactRational(1, 10);
  for (unsigned n = 2; n <= n_max; ++n) {
    ExactRational acc;
    for (unsigned i = 1; i < n; ++i) {
      const long weight = static_cast<long>(4 * i - 1) * static_cast<long>(4 * n - 4 * i - 1);
      acc += ExactRational(BigInt(binomial(4 * n, 4 * i) * weight)) * h[i] * h[n - i];
    }
    const long lead = static_cast<long>(2 * n - 3) * static_cast<long>(4 * n - 1) * static_cast<long>(4 * n + 1);
    h[n] = acc * ExactRational(3) / ExactRational(lead);
  }
  for (unsigned n = 1; n <= n_max; ++n) table.values.emplace(4 * n, h[n]);
  return table;
}

struct LatticeSum {
  BigReal value;
  double tail_estimate = 0.0;  // |omega|^{-weight} integrated outside the disc
};

// sum over Gaussian integers 0 < |omega| <= radius of Re(omega^{-weight}),
// accumulated over the octant 0 <= n <= m with each point expanded to its
// orbit under rotation by i and conjugation (axis and diagonal points have
// orbits of four).
inline LatticeSum gaussian_lattice_sum(unsigned weight, long radius, const PrecisionContext& ctx) {
  if (weight < 3) throw PreconditionError("gaussian_lattice_sum: weight must be >= 3");
  if (radius < 10) throw PreconditionError("gaussian_lattice_sum: radius must be >= 10");
  const double w = static_cast<double>(weight);
  const long r2_max = radius * radius;
  // Re(i^{-j} v) for j mod 4
  auto rotated_re = [](Complex v, unsigned j) {
    switch (j % 4) {
      case 0: return v.real();
      case 1: return v.imag();
      case 2: return -v.real();
      default: return -v.imag();
    }
  };
  CompensatedSum<double> acc;
  for (long m = radius; m >= 1; --m) {
    for (long n = std::min(m, radius); n >= 0; --n) {
      const long r2 = m * m + n * n;
      if (r2 > r2_max) continue;
      const double theta = std::atan2(static_cast<double>(n), static_cast<double>(m));
      const double mag = std::pow(static_cast<double>(r2), -0.5 * w);
      const Complex v = std::polar(mag, -w * theta);  // omega^{-weight}
      double orbit = 0.0;
      for (unsigned j = 0; j < 4; ++j) orbit += rotated_re(v, j * weight);
      if (n != 0 && n != m)
        for (unsigned j = 0; j < 4; ++j) orbit += rotated_re(std::conj(v), j * weight);
      acc.add(orbit);
    }
  }
  LatticeSum out{BigReal(acc.value(), ctx), 0.0};
  out.tail_estimate = 2.0 * std::numbers::pi * std::pow(static_cast<double>(radius), 2.0 - w) / (w - 2.0);
  return out;
}

// |(2 varpi)^{4n} H_{4n} / (4n)! - G_{4n}(Z[i])|, the lattice side truncated
// at `radius`.
inline double hurwitz_relation_check(unsigned n, const PrecisionContext& ctx, long radius = 400) {
  if (n < 1) throw PreconditionError("hurwitz_relation_check: n must be >= 1");
  const HurwitzTable table = hurwitz_numbers(n, ctx);
  const mpfr_prec_t bits = ctx.bits();
  const BigReal two_varpi = table.pi_lemniscate * 2L;
  const BigReal closed = pow(two_varpi, static_cast<long>(4 * n)) * table.at(4 * n).to_big(bits) /
                         to_big(factorial(4 * n), bits);
  const LatticeSum lattice = gaussian_lattice_sum(4 * n, radius, ctx);
  return abs(closed - lattice.value).to_double();
}

}  // namespace zetareg
