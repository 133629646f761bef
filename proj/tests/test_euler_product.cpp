#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "zetareg/euler_product.hpp"

using namespace zetareg;

namespace {

const PrimeTable& million() {
  static const PrimeTable t = sieve(1'000'000);
  return t;
}

double inverse_abs_zeta_sq(Complex z) { return 1.0 / std::norm(eta_series(z, PrecisionContext(30))); }

}  // namespace

TEST(StandardForm, ZeroTCollapsesToSquares) {
  const PrimeTable t = sieve(1000);
  double expected = 1.0;
  for (std::uint64_t p : t.primes()) expected *= (1.0 - 1.0 / p) * (1.0 - 1.0 / p);
  EXPECT_NEAR(standard_form_f(2.0, 0.0, t), expected, 1e-14 * expected);
}

TEST(StandardForm, ApproachesInverseZetaSquared) {
  // Re z = 1: the product converges only conditionally and the truncation
  // error swings with the phase of P^{-i}, about 1/log P in size. Primes up to
  // 10^6 land 12% low; 5e-3 is out of reach at this n.
  const double at_one = standard_form_f(2.0, 0.5, million());
  EXPECT_NEAR(at_one, inverse_abs_zeta_sq({1.0, 1.0}), 0.15);
  EXPECT_NEAR(at_one, 0.731017, 1e-6);
  EXPECT_NEAR(standard_form_f(4.0, 0.0, million()), 36.0 / std::pow(std::numbers::pi, 4), 1e-4);
  // Re z > 1: the tail shrinks like P^{1 - Re z}
  const std::vector<std::pair<double, double>> tolerance{{2.5, 3e-3}, {3.0, 2e-4}, {4.0, 5e-8}};
  for (const auto& [s, tol] : tolerance)
    for (double t : {0.3, 2.0, 7.5}) {
      const Complex z = s * Complex(0.5, t);
      EXPECT_NEAR(standard_form_f(s, t, million()), inverse_abs_zeta_sq(z), tol) << s << " " << t;
    }
  EXPECT_NEAR(standard_form_f(2.0, 12.0, million()), inverse_abs_zeta_sq({1.0, 24.0}), 1e-2);
}

TEST(StandardForm, SingleFactor) {
  const PrimeTable t = sieve(2);
  const double f = 1.0 - std::cos(2.0 * std::log(2.0)) + 0.25;
  EXPECT_NEAR(standard_form_f(2.0, 1.0, t), f, 1e-15);
  EXPECT_NEAR(normalized_g(2.0, 1.0, t), f / 1.25, 1e-15);
  const PrimeSums ps = prime_sums(2.0, 1.0, t);
  EXPECT_NEAR(ps.B, std::cos(2.0 * std::log(2.0)) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(ps.C, 0.25);
}

TEST(StandardForm, NormalizationAtZeroT) {
  const PrimeTable t = sieve(10000);
  for (double s : {1.0, 2.0, 3.5}) {
    double norm = 1.0;
    for (std::uint64_t p : t.primes()) norm *= 1.0 + std::pow(static_cast<double>(p), -s);
    EXPECT_NEAR(normalized_g(s, 0.0, t), standard_form_f(s, 0.0, t) / norm, 1e-12);
  }
}

TEST(StandardForm, Errors) {
  EXPECT_THROW(standard_form_f(0.0, 1.0, sieve(10)), DomainError);
  EXPECT_THROW(standard_form_f(2.0, 1.0, PrimeTable()), PreconditionError);
}

TEST(StandardForm, PositiveAndConjugateSymmetric) {
  const PrimeTable t = sieve(100000);
  const StandardFormEvaluator eval(1.0, t);
  for (double x = 0.05; x < 30.0; x += 0.731) {
    const StandardFormSample a = eval.sample(x), b = eval.sample(-x);
    EXPECT_GT(a.f, 0.0);
    EXPECT_GT(a.g, 0.0);
    EXPECT_EQ(a.f, b.f);
    EXPECT_EQ(a.B, b.B);
    for (std::size_t k = 0; k < 50; ++k) EXPECT_GE(eval.factor(k, x), 0.0);
  }
}

TEST(PrimeSums, PrimeZetaAtFour) {
  EXPECT_NEAR(prime_sums(4.0, 0.0, million()).C, 0.0769931397642, 1e-9);
}

TEST(PrimeSums, MertensTrend) {
  const PrimeTable& t = million();
  ASSERT_EQ(t.count(), 78498u);
  const double c1 = prime_sums(1.0, 0.0, t).C;  // sum 1/p
  EXPECT_NEAR(c1 - std::log(std::log(static_cast<double>(t[t.count() - 1]))), 0.26149, 0.02);
  EXPECT_DOUBLE_EQ(prime_sums(2.0, 0.0, t).B, c1);
}

TEST(AmGm, SingleFactorIsEquality) {
  const PrimeTable t = sieve(2);
  const StandardFormEvaluator eval(2.0, t);
  const StandardFormSample smp = eval.sample(3.0);
  EXPECT_NEAR(smp.f, 1.0 + (-2.0 * smp.B + smp.C), 1e-15);
  EXPECT_TRUE(am_gm_bound_check(eval, 3.0));
}

TEST(AmGm, Examples) {
  const PrimeTable t = sieve(1'400'000);
  EXPECT_TRUE(am_gm_bound_check(2.0, 5.0, t.prefix(10000)));
  EXPECT_TRUE(am_gm_bound_check(3.0, 1.7, t.prefix(100000)));
}

TEST(PredictedMaxima, Values) {
  const ZeroList z{{14.134725}};
  EXPECT_NEAR(predicted_maxima(2.0, z)[0], 0.5 * std::sqrt(14.134725 * 14.134725 + 0.25), 1e-12);
  EXPECT_NEAR(predicted_maxima(2.0, z)[0], 7.0718, 1e-4);
  EXPECT_DOUBLE_EQ(predicted_maxima(2.0, ZeroList{{0.0}})[0], 0.25);
  EXPECT_NEAR(predicted_maxima(1.0, z)[0], 14.134725, 1e-12);
  // the radicand is lambda^2 + (1 - s)^2 / 4, never negative
  EXPECT_EQ(predicted_maxima(1.0, ZeroList{{0.0}})[0], 0.0);
  EXPECT_THROW(predicted_maxima(0.0, z), DomainError);
}

TEST(ZeroScan, FirstThreeZeros) {
  const ZeroList z = find_zeros_on_critical_line(30.0, 0.05);
  ASSERT_EQ(z.lambdas.size(), 3u);
  EXPECT_NEAR(z.lambdas[0], 14.134725, 1e-4);
  EXPECT_NEAR(z.lambdas[1], 21.022040, 1e-4);
  EXPECT_NEAR(z.lambdas[2], 25.010858, 1e-4);
  // a finer scan finds the same zeros
  const ZeroList fine = find_zeros_on_critical_line(30.0, 0.02);
  ASSERT_EQ(fine.lambdas.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(fine.lambdas[i], z.lambdas[i], 1e-6);
  for (std::size_t i = 1; i < 3; ++i) EXPECT_LT(z.lambdas[i - 1], z.lambdas[i]);
  EXPECT_TRUE(find_zeros_on_critical_line(10.0, 0.05).lambdas.empty());
  EXPECT_THROW(find_zeros_on_critical_line(10.0, 0.1), PreconditionError);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  const PrimeTable t = sieve(100000);
  const auto one = sweep(1.5, 0.0, 20.0, 0.013, t, 1);
  const auto many = sweep(1.5, 0.0, 20.0, 0.013, t, 5);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t j = 0; j < one.size(); ++j) {
    EXPECT_EQ(one[j].t, many[j].t);
    EXPECT_EQ(one[j].f, many[j].f);
    EXPECT_EQ(one[j].g, many[j].g);
  }
  EXPECT_EQ(one.front().t, 0.0);
  EXPECT_THROW(sweep(2.0, 0.0, 1.0, 0.1, PrimeTable()), PreconditionError);
  EXPECT_THROW(sweep(2.0, 1.0, 0.0, 0.1, t), PreconditionError);
  EXPECT_THROW(sweep(2.0, 0.0, 1.0, 0.0, t), PreconditionError);
}

TEST(Sweep, EveryPredictedMaximumIsDetected) {
  // The converse direction holds cleanly. The other direction does not: the
  // truncated product also wiggles around 1/|zeta|^2 with ~2% amplitude, which
  // adds a local maximum near t = 5.19 with no zero behind it.
  const auto samples = sweep(2.0, 0.0, 15.0, 0.01, million());
  const auto maxima = local_maxima(samples, [](const StandardFormSample& s) { return s.f; });
  const auto predicted = predicted_maxima(2.0, ZeroList{{14.134725, 21.022040, 25.010858}});
  for (double p : predicted) {
    double best = 1e9;
    for (double m : maxima) best = std::min(best, std::abs(m - p));
    EXPECT_LE(best, 0.05) << p;
  }
}

TEST(Sweep, CriticalLineSpikesNearZeros) {
  // s = 1 puts z on the critical line, where the product diverges: g carries
  // ripples with period about 2 pi / log P on top of the spike at the zero,
  // so only the tallest peak is tied to lambda_1 and only to ~0.2.
  const auto samples = sweep(1.0, 13.0, 15.5, 0.01, million());
  const auto tallest = std::max_element(samples.begin(), samples.end(),
                                        [](const auto& a, const auto& b) { return a.g < b.g; });
  EXPECT_LE(std::abs(tallest->t - 14.134725), 0.2);
  const auto maxima = local_maxima(samples, [](const StandardFormSample& s) { return s.g; });
  ASSERT_GE(maxima.size(), 3u);
  const double period = 2.0 * std::numbers::pi / std::log(1e6);
  for (std::size_t i = 1; i < maxima.size(); ++i) EXPECT_NEAR(maxima[i] - maxima[i - 1], period, 0.05);
}
