#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>

#include "zetareg/special_numbers.hpp"

using namespace zetareg;

namespace {

// von Staudt-Clausen: denominator of B_{2n} is the product of primes p with
// (p - 1) | 2n.
BigInt staudt_clausen_denominator(unsigned two_n) {
  BigInt d = 1;
  for (unsigned p = 2; p <= two_n + 1; ++p) {
    bool prime = true;
    for (unsigned q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (prime && two_n % (p - 1) == 0) d *= p;
  }
  return d;
}

}  // namespace

TEST(Bernoulli, DoubleSumSmallValues) {
  EXPECT_EQ(bernoulli_double_sum(0), ExactRational(1));
  EXPECT_EQ(bernoulli_double_sum(1), ExactRational(-1, 2));
  EXPECT_EQ(bernoulli_double_sum(2), ExactRational(1, 6));
  EXPECT_EQ(bernoulli_double_sum(12), ExactRational(-691, 2730));
}

TEST(Bernoulli, RecurrenceOracle) {
  const BernoulliTable t = bernoulli_recurrence_oracle(30);
  EXPECT_EQ(t.at(0), ExactRational(1));
  EXPECT_EQ(t.at(1), ExactRational(-1, 2));
  EXPECT_EQ(t.at(3), ExactRational(0));
  EXPECT_EQ(t.at(4), ExactRational(-1, 30));
  EXPECT_THROW(t.at(31), RangeError);
  for (unsigned m = 1; m < 15; ++m) EXPECT_TRUE(t.at(2 * m + 1).is_zero());
  for (unsigned m = 1; m <= 15; ++m) EXPECT_EQ(t.at(2 * m).sign(), m % 2 == 1 ? 1 : -1) << m;
}

TEST(Bernoulli, DoubleSumEqualsRecurrenceTo30) {
  const BernoulliTable t = bernoulli_recurrence_oracle(30);
  for (unsigned n = 0; n <= 30; ++n) EXPECT_EQ(bernoulli_double_sum(n), t.at(n)) << n;
}

TEST(Bernoulli, SingleSumEqualsRecurrenceTo15) {
  const BernoulliTable t = bernoulli_recurrence_oracle(30);
  const PrecisionContext ctx(20);
  for (unsigned n = 1; n <= 15; ++n) EXPECT_EQ(bernoulli_single_sum(n, ctx), t.at(2 * n)) << n;
  EXPECT_THROW(bernoulli_single_sum(0, ctx), PreconditionError);
}

TEST(Bernoulli, SingleSumInnerFloors) {
  const PrecisionContext ctx(20);
  EXPECT_EQ(bernoulli_single_sum_floor(1, ctx), 0);
  EXPECT_EQ(bernoulli_single_sum_floor(2, ctx), 0);
  EXPECT_EQ(bernoulli_single_sum_floor(3, ctx), 2);
  EXPECT_EQ(bernoulli_single_sum(1, ctx), ExactRational(1, 6));
  EXPECT_EQ(bernoulli_single_sum(2, ctx), ExactRational(-1, 30));
  EXPECT_EQ(bernoulli_single_sum(3, ctx), ExactRational(1, 42));
}

TEST(Bernoulli, DenominatorsFollowVonStaudtClausen) {
  const BernoulliTable t = bernoulli_recurrence_oracle(30);
  for (unsigned two_n = 2; two_n <= 30; two_n += 2) EXPECT_EQ(t.at(two_n).denominator(), staudt_clausen_denominator(two_n)) << two_n;
}

TEST(ZetaEvenExact, ClosedForms) {
  const PrecisionContext ctx(40);
  const BigReal pi = const_pi(ctx);
  EXPECT_LT(abs(zeta_even_exact(2, ctx) - pi * pi / 6L).to_double(), 1e-45);
  EXPECT_LT(abs(zeta_even_exact(4, ctx) - pow(pi, 4L) / 90L).to_double(), 1e-45);
  EXPECT_LT(abs(zeta_even_exact(6, ctx) - pow(pi, 6L) / 945L).to_double(), 1e-45);
  EXPECT_THROW(zeta_even_exact(3, ctx), DomainError);
  EXPECT_THROW(zeta_even_exact(0, ctx), DomainError);
  EXPECT_THROW(zeta_even_exact(62, ctx), DomainError);
}

TEST(ZetaEvenExact, MatchesDirectSum) {
  // sum_{k<=N} k^{-m} plus the tail integral and half-term corrections
  const PrecisionContext ctx(25);
  for (unsigned m : {4u, 6u, 10u}) {
    long double s = 0.0L;
    const int n = 2000;
    for (int k = n; k >= 1; --k) s += std::pow(static_cast<long double>(k), -static_cast<long double>(m));
    s += std::pow(static_cast<long double>(n), 1.0L - m) / (m - 1) - 0.5L * std::pow(static_cast<long double>(n), -static_cast<long double>(m));
    EXPECT_NEAR(zeta_even_exact(m, ctx).to_double(), static_cast<double>(s), 1e-15) << m;
  }
}

TEST(HurwitzPi, QuadratureMatchesAgm) {
  const PrecisionContext ctx(30);
  const BigReal q = hurwitz_pi(ctx), g = hurwitz_pi_agm(ctx);
  EXPECT_LT(abs(q - g).to_double(), 1e-28);
  EXPECT_NEAR(q.to_double(), 2.6220575542921198, 1e-15);
  EXPECT_GT(q.to_double() / 2, 1.31);
  EXPECT_LT(q.to_double() / 2, 1.32);
}

TEST(HurwitzPi, GeneralizedAgreesWithBetaFunction) {
  // 2 integral_0^1 (1 - x^k)^{-1/2} dx = (2/k) B(1/k, 1/2)
  const PrecisionContext ctx(20);
  EXPECT_LT(abs(generalized_hurwitz_pi(2, ctx) - const_pi(ctx)).to_double(), 1e-18);
  EXPECT_LT(abs(generalized_hurwitz_pi(4, ctx) - hurwitz_pi(ctx)).to_double(), 1e-18);
  double previous = 4.0;
  for (unsigned k : {2u, 4u, 8u, 16u, 32u}) {
    const double v = generalized_hurwitz_pi(k, ctx).to_double();
    EXPECT_NEAR(v, 2.0 / k * boost::math::beta(1.0 / k, 0.5), 1e-13) << k;
    EXPECT_LT(v, previous);
    EXPECT_GT(v, 2.0);
    previous = v;
  }
  EXPECT_NEAR(generalized_hurwitz_pi(8, ctx).to_double(), 2.32719, 1e-5);
  EXPECT_THROW(generalized_hurwitz_pi(6, ctx), DomainError);
  EXPECT_THROW(generalized_hurwitz_pi(1, ctx), DomainError);
}

TEST(HurwitzNumbers, RecurrenceValues) {
  const HurwitzTable h = hurwitz_numbers(5);
  EXPECT_EQ(h.at(4), ExactRational(1, 10));
  EXPECT_EQ(h.at(8), ExactRational(3, 10));
  EXPECT_EQ(h.at(12), ExactRational(567, 130));
  EXPECT_THROW(h.at(6), RangeError);
  for (const auto& [index, value] : h.values) {
    EXPECT_EQ(index % 4, 0u);
    EXPECT_EQ(value.sign(), 1);
  }
  EXPECT_THROW(hurwitz_numbers(0), PreconditionError);
}

TEST(LatticeSum, WeightFour) {
  const PrecisionContext ctx(20);
  const double varpi = hurwitz_pi_agm(ctx).to_double();
  const LatticeSum g4 = gaussian_lattice_sum(4, 400, ctx);
  EXPECT_NEAR(g4.value.to_double(), std::pow(varpi, 4) / 15.0, 1e-6);
  EXPECT_NEAR(g4.value.to_double(), 3.15121, 1e-5);
  EXPECT_GT(g4.tail_estimate, 0.0);
}

TEST(LatticeSum, NonMultiplesOfFourVanish) {
  const PrecisionContext ctx(20);
  for (unsigned w : {5u, 6u, 7u, 10u}) EXPECT_NEAR(gaussian_lattice_sum(w, 50, ctx).value.to_double(), 0.0, 1e-13) << w;
  EXPECT_THROW(gaussian_lattice_sum(2, 50, ctx), PreconditionError);
  EXPECT_THROW(gaussian_lattice_sum(8, 5, ctx), PreconditionError);
}

TEST(LatticeSum, OctantMatchesBruteForce) {
  const PrecisionContext ctx(20);
  for (unsigned w : {4u, 8u}) {
    const long R = 30;
    double brute = 0.0;
    for (long m = -R; m <= R; ++m)
      for (long n = -R; n <= R; ++n) {
        if ((m == 0 && n == 0) || m * m + n * n > R * R) continue;
        brute += std::pow(std::complex<double>(static_cast<double>(m), static_cast<double>(n)), -static_cast<double>(w)).real();
      }
    EXPECT_NEAR(gaussian_lattice_sum(w, R, ctx).value.to_double(), brute, 1e-12) << w;
  }
}

TEST(HurwitzRelation, LatticeIdentity) {
  const PrecisionContext ctx(30);
  EXPECT_LE(hurwitz_relation_check(1, ctx, 400), 1e-6);
  EXPECT_LE(hurwitz_relation_check(2, ctx, 400), 1e-9);
  EXPECT_LE(hurwitz_relation_check(3, ctx, 400), 1e-9);
  EXPECT_LE(hurwitz_relation_check(2, ctx, 200), 1e-9);
}
