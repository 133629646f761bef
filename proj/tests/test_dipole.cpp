#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "zetareg/dipole.hpp"
#include "zetareg/euler_product.hpp"

using namespace zetareg;

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// gamma from H_n - log n with Richardson extrapolation in long double
long double gamma_richardson() {
  std::vector<long double> d;
  long double h = 0.0L;
  long done = 0;
  for (long n = 16; n <= 1024; n *= 2) {
    for (long k = done + 1; k <= n; ++k) h += 1.0L / k;
    done = n;
    d.push_back(h - std::log(static_cast<long double>(n)) - 1.0L / (2 * n));
  }
  for (std::size_t level = 1; level < d.size(); ++level) {
    const long double f = std::pow(4.0L, static_cast<long double>(level));
    for (std::size_t i = d.size() - 1; i >= level; --i) d[i] = (f * d[i] - d[i - 1]) / (f - 1.0L);
  }
  return d.back();
}

// log-log slope through the first and last point
double slope(const std::vector<double>& n, const std::vector<double>& err) {
  return (std::log(err.back()) - std::log(err.front())) / (std::log(n.back()) - std::log(n.front()));
}

}  // namespace

TEST(DipoleResidual, GeometricIsExactAtTwo) {
  const Complex z(2.0, 0.0);
  EXPECT_EQ(dipole_residual(geometric_series(), geometric_dipole(z), 50, z), 0.0);
}

TEST(DipoleResidual, ZeroWeightsReturnLargestTerm) {
  DipoleSolution zero{[](long) { return Complex(0.0); }, Complex(0.0), 0.0};
  EXPECT_DOUBLE_EQ(dipole_residual(harmonic_series(), zero, 10, Complex(0.0)), 1.0);
  EXPECT_THROW(dipole_residual(harmonic_series(), zero, 0, Complex(0.0)), PreconditionError);
}

TEST(GeometricDipole, ClosedFormValues) {
  EXPECT_EQ(geometric_dipole(Complex(0.5, 0.0)).dipole_value, Complex(2.0, 0.0));
  EXPECT_EQ(geometric_dipole(Complex(2.0, 0.0)).dipole_value, Complex(-1.0, 0.0));
  EXPECT_EQ(geometric_dipole(Complex(-1.0, 0.0)).dipole_value, Complex(0.5, 0.0));
  EXPECT_THROW(geometric_dipole(Complex(1.0, 0.0)), PoleError);
}

TEST(GeometricDipole, AgreesWithConvergentSumsInsideUnitDisc) {
  for (double r : {0.1, 0.4, 0.7, 0.9})
    for (double theta = 0.0; theta < 6.28; theta += 0.7) {
      const Complex z = std::polar(r, theta);
      Complex sum(0.0), term(1.0);
      for (int k = 0; k < 2000; ++k) {
        sum += term;
        term *= z;
      }
      EXPECT_LT(std::abs(geometric_dipole(z).dipole_value - sum), 1e-12) << r << " " << theta;
    }
}

TEST(HarmonicDipole, ValueIsEulerGamma) {
  const DipoleSolution sol = harmonic_dipole(200, PrecisionContext(30));
  EXPECT_NEAR(sol.dipole_value.real(), static_cast<double>(gamma_richardson()), 1e-14);
  EXPECT_DOUBLE_EQ(sol.alpha(1).real(), sol.dipole_value.real());  // alpha_1 = -psi(1)
  EXPECT_LE(sol.residual_bound, 1e-12);
  EXPECT_LE(dipole_residual(harmonic_series(), sol, 50, Complex(0.0)), 1e-12);
  EXPECT_THROW(sol.alpha(500), RangeError);
  EXPECT_THROW(harmonic_dipole(0, PrecisionContext(30)), PreconditionError);
}

TEST(FactorialSeriesBound, Values) {
  EXPECT_NEAR(factorial_series_bound(1.0), 2.0 - 4.0 / std::numbers::e, 1e-15);
  EXPECT_NEAR(factorial_series_bound(1.0), 0.5285, 1e-4);
  EXPECT_NEAR(factorial_series_bound(700.0), 2.0, 1e-12);
  // below 2 while z log z < 2 + 2z (z up to about 9.2); past that the
  // correction is positive but below 1e-3 and decays like z log z / e^z
  for (double z = 0.1; z <= 9.0; z *= 1.3) EXPECT_LT(factorial_series_bound(z), 2.0) << z;
  for (double z = 9.5; z <= 100.0; z *= 1.3) {
    EXPECT_GT(factorial_series_bound(z), 2.0 - 1e-15) << z;
    EXPECT_LT(factorial_series_bound(z), 2.0 + 1e-3) << z;
  }
  EXPECT_THROW(factorial_series_bound(0.0), DomainError);
}

TEST(EtaSeries, KnownValues) {
  const PrecisionContext ctx(30);
  EXPECT_NEAR(eta_series(Complex(2.0, 0.0), ctx).real(), kPi2Over6, 1e-14);
  EXPECT_NEAR(eta_series(Complex(0.5, 0.0), ctx).real(), -1.4603545088095868, 1e-14);
  const Complex v = eta_series(Complex(1.0, 1.0), ctx);
  EXPECT_NEAR(v.real(), 0.5821580597520036, 1e-12);
  EXPECT_NEAR(v.imag(), -0.9268485643308071, 1e-12);
}

TEST(EtaSeries, TwoDepthsAgree) {
  const PrecisionContext ctx(40);
  for (Complex z : {Complex(0.5, 0.0), Complex(1.0, 1.0), Complex(0.25, 14.134725), Complex(0.8, 30.0)}) {
    const Complex a = eta_series(z, ctx, 0);
    const Complex b = eta_series(z, ctx, 2 * detail::eta_default_depth(z, 20));
    EXPECT_LT(std::abs(a - b), 1e-15 * std::max(1.0, std::abs(b)));
  }
}

TEST(EtaSeries, Errors) {
  EXPECT_THROW(eta_series(Complex(1.0, 0.0)), PoleError);
  EXPECT_THROW(eta_series(Complex(0.0, 3.0)), DomainError);
  // 2^{1-z} = 1 at z = 1 + 2 pi i k / log 2: a removable zero of the factor
  EXPECT_THROW(eta_series(Complex(1.0, 2.0 * std::numbers::pi / std::numbers::ln2)), PoleError);
}

TEST(ZetaDipole, Values) {
  EXPECT_NEAR(zeta_dipole(Complex(2.0, 0.0), 1'000'000).real(), kPi2Over6, 1e-6);
  EXPECT_NEAR(zeta_dipole(Complex(0.5, 0.0), 1'000'000, true).real(), -1.4603545088, 1e-6);
  EXPECT_LT(std::abs(zeta_dipole(Complex(0.5, 14.134725), 1'000'000, true)), 1e-3);
  EXPECT_THROW(zeta_dipole(Complex(1.0, 0.0), 10), PoleError);
  EXPECT_THROW(zeta_dipole(Complex(-0.5, 0.0), 10), DomainError);
  EXPECT_THROW(zeta_dipole(Complex(0.5, 0.0), 1), PreconditionError);
}

TEST(ZetaDipole, CorrectedErrorScalesAsNToMinusReZMinusOne) {
  for (double re : {0.5, 1.5}) {
    const Complex z(re, 3.0);
    const Complex exact = eta_series(z, PrecisionContext(30));
    std::vector<double> n{1000, 10000, 100000}, err;
    for (double k : n) err.push_back(std::abs(zeta_dipole(z, static_cast<long>(k), true) - exact));
    EXPECT_NEAR(slope(n, err), -(re + 1.0), 0.3) << re;
  }
}

TEST(EtaConsistency, ShrinksWithN) {
  const Complex z(0.75, 0.0);
  const double e3 = eta_consistency(z, 1000), e4 = eta_consistency(z, 10000), e5 = eta_consistency(z, 100000);
  EXPECT_GT(e3, e4);
  EXPECT_GT(e4, e5);
  EXPECT_LE(eta_consistency(Complex(2.0, 0.0), 10000), 1e-4);
}

TEST(EtaConsistency, MatchesLeadingTerm) {
  // The gap is n^{-z}(1 - 2^{-z})/2 to leading order; at z = 0.3 + 2i and
  // n = 10^5 that is about 0.018.
  const Complex z(0.3, 2.0);
  const long n = 100000;
  const double leading = std::abs(std::exp(-z * std::log(static_cast<double>(n))) * (1.0 - std::exp(-z * std::numbers::ln2))) / 2.0;
  EXPECT_NEAR(eta_consistency(z, n), leading, 1e-3 * leading);
}

TEST(ExpAlternatingDipole, ZeroExponent) {
  const auto d = exp_alternating_dipole(0.0, 20);
  EXPECT_NEAR(d.regularized_sum, -std::numbers::ln2, 1e-15);
  EXPECT_NEAR(d.solution.dipole_value.real(), std::numbers::ln2, 1e-15);
}

TEST(ExpAlternatingDipole, ConvergentRegimeMatchesClassicalSum) {
  const double a = -1.0;
  const auto d = exp_alternating_dipole(a, 80);
  long double classical = 0.0L, power = 1.0L;
  for (int m = 1; m < 200; ++m) {
    power *= -std::exp(static_cast<long double>(a));
    classical += power / m;
  }
  EXPECT_NEAR(d.partial_sums.back(), static_cast<double>(classical), 1e-14);
  EXPECT_NEAR(d.regularized_sum, -0.31326168751822286, 1e-15);
  EXPECT_NEAR(d.solution.alpha(1).real(), static_cast<double>(-classical / std::exp(static_cast<long double>(a))), 1e-10);
  EXPECT_LE(d.solution.residual_bound, 1e-10);
}

TEST(ExpAlternatingDipole, DivergentRegime) {
  const double a = 0.5;
  const auto d = exp_alternating_dipole(a, 60);
  EXPECT_NEAR(d.solution.dipole_value.real(), std::exp(-0.5) * std::log1p(std::exp(0.5)), 1e-15);
  // partial sums alternate in sign with growing magnitude
  for (std::size_t i = 20; i + 1 < d.partial_sums.size(); ++i) {
    EXPECT_LT(d.partial_sums[i] * d.partial_sums[i + 1], 0.0);
    EXPECT_GT(std::abs(d.partial_sums[i + 1]), std::abs(d.partial_sums[i]));
  }
  EXPECT_LE(dipole_residual_relative(exp_alternating_series(a), d.solution, 60, Complex(0.0)), 1e-10);
}

TEST(ExpAlternatingDipole, ReflectionIdentity) {
  for (double a = -4.0; a <= 4.0; a += 0.25) {
    const double e_plus = exp_alternating_dipole(a, 2).regularized_sum;
    const double e_minus = exp_alternating_dipole(-a, 2).regularized_sum;
    EXPECT_NEAR(e_plus - e_minus, -a, 1e-12);
  }
}

TEST(ExpLimit, ConstantSequences) {
  EXPECT_EQ(exp_limit_error(0.0, 1000), 0.0);
  EXPECT_NEAR(exp_limit_error(1.0, 1'000'000), std::numbers::e / 2e6, 1e-9);
  std::vector<double> n{10, 100, 1000, 10000, 100000}, err;
  for (double k : n) err.push_back(exp_limit_error(1.0, static_cast<long>(k)));
  EXPECT_NEAR(slope(n, err), -1.0, 0.2);
  const std::vector<long> probes{100, 1000};
  EXPECT_DOUBLE_EQ(exp_limit_check([](long) { return 1.0; }, probes), exp_limit_error(1.0, 100));
  EXPECT_THROW(exp_limit_error(-5.0, 2), DomainError);
}

TEST(ExpLimit, PrimeSumSequenceDecreases) {
  const PrimeTable table = sieve(1'400'000);
  auto err = [&](std::size_t n) {
    const PrimeSums ps = prime_sums(2.0, 5.0, table.prefix(n));
    return exp_limit_error(-2.0 * ps.B + ps.C, static_cast<long>(n));
  };
  EXPECT_LT(err(100000), err(1000));
}
