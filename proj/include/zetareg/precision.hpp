#pragma once

// Arbitrary-precision reals on top of MPFR. There is no ambient precision:
// every value is created against an explicit PrecisionContext, and results of
// binary operations take the larger precision of the two operands.

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "zetareg/errors.hpp"

namespace zetareg {

struct PrecisionContext {
  int digits = 30;
  int guard_digits = 10;

  PrecisionContext() = default;
  explicit PrecisionContext(int digits_, int guard = 10) : digits(digits_), guard_digits(guard) {
    validate();
  }

  void validate() const {
    if (digits < 15) throw PreconditionError("PrecisionContext: digits must be >= 15");
    if (guard_digits < 5) throw PreconditionError("PrecisionContext: guard_digits must be >= 5");
  }

  int total_digits() const { return digits + guard_digits; }

  // Binary precision carrying total_digits() decimal digits.
  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>(std::ceil(total_digits() * 3.3219280948873623)) + 4;
  }

  PrecisionContext with_extra_digits(int extra) const {
    return PrecisionContext(digits + extra, guard_digits);
  }
};

inline mpfr_prec_t digits_to_bits(int decimal_digits) {
  return static_cast<mpfr_prec_t>(std::ceil(decimal_digits * 3.3219280948873623)) + 4;
}

class BigReal {
 public:
  explicit BigReal(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  explicit BigReal(const PrecisionContext& ctx) : BigReal(ctx.bits()) {}

  BigReal(double x, const PrecisionContext& ctx) : BigReal(ctx.bits()) { mpfr_set_d(v_, x, MPFR_RNDN); }
  BigReal(double x, mpfr_prec_t bits) : BigReal(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
  BigReal(long x, mpfr_prec_t bits) : BigReal(bits) { mpfr_set_si(v_, x, MPFR_RNDN); }
  BigReal(long x, const PrecisionContext& ctx) : BigReal(x, ctx.bits()) {}
  BigReal(int x, const PrecisionContext& ctx) : BigReal(static_cast<long>(x), ctx.bits()) {}

  static BigReal from_string(std::string_view text, mpfr_prec_t bits) {
    BigReal r(bits);
    std::string s(text);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw DomainError("BigReal: cannot parse '" + s + "'");
    return r;
  }

  BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigReal(BigReal&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~BigReal() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  // Same value, rounded (or padded) to a new precision.
  BigReal with_precision(mpfr_prec_t bits) const {
    BigReal r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Decimal rendering with `significant` digits, exponent notation when needed.
  std::string to_string(int significant) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", significant, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  // Fixed notation with `decimals` digits after the point.
  std::string to_fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  BigReal operator-() const {
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) { grow(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator-=(const BigReal& o) { grow(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator*=(const BigReal& o) { grow(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator/=(const BigReal& o) {
    if (o.is_zero()) throw DivisionError("BigReal: division by zero");
    grow(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator/=(long x) {
    if (x == 0) throw DivisionError("BigReal: division by zero");
    mpfr_div_si(v_, v_, x, MPFR_RNDN);
    return *this;
  }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }

  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  void grow(const BigReal& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

// --- elementary functions -------------------------------------------------

namespace detail {
template <typename F>
BigReal unary(const BigReal& x, F f) {
  BigReal r(x.precision());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline BigReal abs(const BigReal& x) { return detail::unary(x, mpfr_abs); }
inline BigReal exp(const BigReal& x) { return detail::unary(x, mpfr_exp); }
inline BigReal cos(const BigReal& x) { return detail::unary(x, mpfr_cos); }
inline BigReal sin(const BigReal& x) { return detail::unary(x, mpfr_sin); }
inline BigReal expm1(const BigReal& x) { return detail::unary(x, mpfr_expm1); }

inline BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("log: argument must be positive");
  return detail::unary(x, mpfr_log);
}

inline BigReal log1p(const BigReal& x) {
  BigReal minus_one(-1L, x.precision());
  if (x <= minus_one) throw DomainError("log1p: argument must exceed -1");
  return detail::unary(x, mpfr_log1p);
}

inline BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt: negative argument");
  return detail::unary(x, mpfr_sqrt);
}

inline bool is_integer(const BigReal& x) { return mpfr_integer_p(x.get()) != 0; }

inline BigReal pow(const BigReal& x, const BigReal& y) {
  if (x.sign() < 0 && !is_integer(y)) throw DomainError("pow: negative base with non-integer exponent");
  if (x.is_zero() && y.sign() <= 0) throw DomainError("pow: zero base with non-positive exponent");
  BigReal r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

inline BigReal pow(const BigReal& x, long n) {
  if (x.is_zero() && n <= 0) throw DomainError("pow: zero base with non-positive exponent");
  BigReal r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

// Largest integer <= x, as a BigReal at the same precision.
inline BigReal floor(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

inline BigReal const_pi(const PrecisionContext& ctx) {
  BigReal r(ctx);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

inline BigReal const_pi(mpfr_prec_t bits) {
  BigReal r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

// Euler-Mascheroni constant by the Brent-McMillan Bessel-function series:
// gamma = U/V - log n with U = sum (n^k/k!)^2 (H_k - log n), V = sum (n^k/k!)^2,
// truncation error O(exp(-4n)).
inline BigReal euler_gamma(mpfr_prec_t bits) {
  const long n = static_cast<long>(std::ceil(bits * 0.6931471805599453 / 4.0)) + 2;
  // Terms peak near exp(2n) before cancelling in U/V.
  const mpfr_prec_t work = bits + static_cast<mpfr_prec_t>(3 * n) + 32;
  BigReal log_n(n, work);
  log_n = log(log_n);
  BigReal a = -log_n;
  BigReal b(1L, work);
  BigReal u = a;
  BigReal v = b;
  const long n2 = n * n;
  BigReal eps(1L, work);
  mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(work), MPFR_RNDN);
  for (long k = 1;; ++k) {
    b *= n2;
    b /= k * k;
    a *= n2;
    a /= k;
    a += b;
    a /= k;
    u += a;
    v += b;
    if (k > n && abs(a) < eps * abs(u) && b < eps * v) break;
  }
  BigReal g = u / v;
  return g.with_precision(bits);
}

inline BigReal euler_gamma(const PrecisionContext& ctx) { return euler_gamma(ctx.bits()); }

// Minimal complex type over BigReal; only what the eta series needs.
struct BigComplex {
  BigReal re;
  BigReal im;

  explicit BigComplex(mpfr_prec_t bits) : re(bits), im(bits) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }

  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigComplex& a, const BigReal& s) { return {a.re * s, a.im * s}; }

  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigReal den = b.re * b.re + b.im * b.im;
    if (den.is_zero()) throw DivisionError("BigComplex: division by zero");
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }

  BigReal norm() const { return sqrt(re * re + im * im); }
};

// exp(-z * log(base)) for real positive base, i.e. base^(-z).
inline BigComplex pow_neg(const BigReal& log_base, const BigComplex& z) {
  BigReal mag = exp(-(z.re * log_base));
  BigReal phase = z.im * log_base;
  BigReal c(phase.precision()), s(phase.precision());
  mpfr_sin_cos(s.get(), c.get(), phase.get(), MPFR_RNDN);
  return {mag * c, -(mag * s)};
}

}  // namespace zetareg
