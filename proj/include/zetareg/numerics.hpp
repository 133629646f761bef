#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <type_traits>

#include "zetareg/errors.hpp"
#include "zetareg/precision.hpp"

namespace zetareg {

using Complex = std::complex<double>;

// Neumaier compensated summation; works for double and std::complex<double>.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, double>) {
      add_real(sum_, comp_, x);
    } else {
      double sr = sum_.real(), cr = comp_.real(), si = sum_.imag(), ci = comp_.imag();
      add_real(sr, cr, x.real());
      add_real(si, ci, x.imag());
      sum_ = {sr, si};
      comp_ = {cr, ci};
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  T sum_{};
  T comp_{};
};

// Adaptive Gauss-Kronrod (15 point) integral of a double-valued integrand.
inline double integrate_gk(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-13, unsigned max_depth = 20) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, tol, &err);
}

// Tanh-sinh quadrature over [0, 1] at arbitrary precision. The integrand gets
// both x and 1 - x, each computed without cancellation, so endpoint
// singularities such as (1 - x)^(-1/2) are handled accurately.
using EndpointIntegrand = std::function<BigReal(const BigReal& x, const BigReal& one_minus_x)>;

inline BigReal tanh_sinh_unit(const EndpointIntegrand& f, mpfr_prec_t bits, int max_levels = 14) {
  const mpfr_prec_t work = bits + 32;
  const BigReal half_pi = const_pi(work) / 2L;
  BigReal tol(1L, bits);
  mpfr_mul_2si(tol.get(), tol.get(), -static_cast<long>(bits), MPFR_RNDN);

  // Beyond t_max the weight times any integrable endpoint singularity of the
  // form (1 - x)^(-1/2) is below 2^-bits.
  const double t_max = std::asinh(2.0 * (static_cast<double>(bits) * 0.6931471805599453 + 20.0) / std::numbers::pi);

  auto node_contribution = [&](double t_double) {
    BigReal t(t_double, work);
    BigReal sh(work), ch(work);
    mpfr_sinh_cosh(sh.get(), ch.get(), t.get(), MPFR_RNDN);
    BigReal u = half_pi * sh;
    BigReal two_u = u * 2L;
    // 1 - x = 1 / (1 + e^{2u}),  x = 1 / (1 + e^{-2u})
    BigReal one(1L, work);
    BigReal one_minus_x = one / (exp(two_u) + 1L);
    BigReal x = one / (exp(-two_u) + 1L);
    BigReal chu(work);
    mpfr_cosh(chu.get(), u.get(), MPFR_RNDN);
    BigReal weight = half_pi * ch / (chu * chu * 2L);
    if (x.is_zero() || one_minus_x.is_zero()) return BigReal(work);
    return f(x, one_minus_x) * weight;
  };

  double h = 1.0;
  BigReal sum = node_contribution(0.0);
  for (long k = 1; k * h <= t_max; ++k) {
    sum += node_contribution(k * h);
    sum += node_contribution(-k * h);
  }
  BigReal estimate = sum * BigReal(h, work);
  for (int level = 1; level <= max_levels; ++level) {
    h /= 2.0;
    for (long k = 1; k * h <= t_max; k += 2) {
      sum += node_contribution(k * h);
      sum += node_contribution(-k * h);
    }
    BigReal next = sum * BigReal(h, work);
    BigReal diff = abs(next - estimate);
    estimate = std::move(next);
    // Tanh-sinh error roughly squares per level; a difference below sqrt(tol)
    // means the new estimate is already at tol.
    if (level >= 3 && diff * diff < tol * abs(estimate) * abs(estimate)) break;
    if (level >= 3 && diff.is_zero()) break;
  }
  return estimate.with_precision(bits);
}

}  // namespace zetareg
