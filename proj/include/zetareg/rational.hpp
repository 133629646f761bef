#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

#include "zetareg/errors.hpp"
#include "zetareg/precision.hpp"

namespace zetareg {

using BigInt = mpz_class;

// Exact rational kept in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() : q_(0) {}
  ExactRational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  explicit ExactRational(const BigInt& n) : q_(n) {}
  ExactRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionError("ExactRational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  ExactRational(long num, long den) : ExactRational(BigInt(num), BigInt(den)) {}

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  int sign() const { return sgn(q_); }

  std::string to_string() const { return q_.get_str(); }
  double to_double() const { return q_.get_d(); }

  BigReal to_big(mpfr_prec_t bits) const {
    BigReal r(bits);
    mpfr_set_q(r.get(), q_.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  BigReal to_big(const PrecisionContext& ctx) const { return to_big(ctx.bits()); }

  ExactRational operator-() const { return ExactRational(mpq_class(-q_)); }
  ExactRational abs() const { return ExactRational(mpq_class(::abs(q_))); }

  ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
  ExactRational& operator/=(const ExactRational& o) {
    if (o.is_zero()) throw DivisionError("ExactRational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const ExactRational& a, const ExactRational& b) { return a.q_ != b.q_; }
  friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.q_ < b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) { return os << r.to_string(); }

 private:
  explicit ExactRational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

inline BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) throw DomainError("binomial: k > n");
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigReal to_big(const BigInt& n, mpfr_prec_t bits) {
  BigReal r(bits);
  mpfr_set_z(r.get(), n.get_mpz_t(), MPFR_RNDN);
  return r;
}

// floor(x) as an exact integer.
inline BigInt floor_to_int(const BigReal& x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDD);
  return r;
}

}  // namespace zetareg
