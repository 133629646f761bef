#pragma once

// Truncated Euler product of the standard form |zeta(z)|^{-2}, z = s(1/2 + it):
//
//   f_n(s,t) = prod_{k<=n} (1 - 2 p_k^{-s/2} cos(s t log p_k) + p_k^{-s})
//
// together with its normalization g_n, the prime sums B_n and C_n, the
// AM-GM bound and the sweep data behind the standard-form plots.
//
// The identity f -> 1/|zeta|^2 holds for s >= 2; smaller s is exploratory.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "zetareg/dipole.hpp"
#include "zetareg/errors.hpp"
#include "zetareg/numerics.hpp"
#include "zetareg/primes.hpp"

namespace zetareg {

struct StandardFormSample {
  double s = 0.0;
  double t = 0.0;
  std::size_t n = 0;
  double f = 0.0;
  double g = 0.0;
  double B = 0.0;
  double C = 0.0;
};

struct ZeroList {
  std::vector<double> lambdas;
};

// Per-s precomputation over a fixed prime table; evaluating a sample is then
// one sincos per prime.
class StandardFormEvaluator {
 public:
  StandardFormEvaluator(double s, const PrimeTable& table) : s_(s) {
    if (!(s > 0.0)) throw DomainError("standard form: s must be positive");
    if (table.empty()) throw PreconditionError("standard form: empty prime table");
    log_p_.reserve(table.count());
    q_.reserve(table.count());
    CompensatedSum<double> c_sum, norm_sum;
    for (std::uint64_t p : table.primes()) {
      const double lp = std::log(static_cast<double>(p));
      const double q = std::exp(-0.5 * s * lp);
      log_p_.push_back(lp);
      q_.push_back(q);
      c_sum.add(q * q);
      norm_sum.add(std::log1p(q * q));
    }
    C_ = c_sum.value();
    log_norm_ = norm_sum.value();
  }

  double s() const { return s_; }
  std::size_t n() const { return q_.size(); }
  double C() const { return C_; }

  // Factor k written as (1 - q cos)^2 + (q sin)^2: equal to the textbook form
  // but free of cancellation where the factor approaches 0.
  double factor(std::size_t k, double t) const {
    const double theta = s_ * t * log_p_[k];
    const double q = q_[k];
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double re = 1.0 - q * c;
    const double im = q * sn;
    return re * re + im * im;
  }

  double log_f(double t) const {
    CompensatedSum<double> acc;
    for (std::size_t k = 0; k < q_.size(); ++k) acc.add(std::log(factor(k, t)));
    return acc.value();
  }

  StandardFormSample sample(double t) const {
    CompensatedSum<double> log_f, b;
    for (std::size_t k = 0; k < q_.size(); ++k) {
      const double theta = s_ * t * log_p_[k];
      const double q = q_[k];
      const double c = std::cos(theta);
      const double sn = std::sin(theta);
      const double re = 1.0 - q * c;
      const double im = q * sn;
      log_f.add(std::log(re * re + im * im));
      b.add(q * c);
    }
    StandardFormSample out;
    out.s = s_;
    out.t = t;
    out.n = q_.size();
    out.f = std::exp(log_f.value());
    out.g = std::exp(log_f.value() - log_norm_);
    out.B = b.value();
    out.C = C_;
    return out;
  }

 private:
  double s_;
  std::vector<double> log_p_;
  std::vector<double> q_;
  double C_ = 0.0;
  double log_norm_ = 0.0;
};

inline double standard_form_f(double s, double t, const PrimeTable& table) {
  return StandardFormEvaluator(s, table).sample(t).f;
}

inline double normalized_g(double s, double t, const PrimeTable& table) {
  return StandardFormEvaluator(s, table).sample(t).g;
}

struct PrimeSums {
  double B = 0.0;
  double C = 0.0;
};

inline PrimeSums prime_sums(double s, double t, const PrimeTable& table) {
  const StandardFormSample smp = StandardFormEvaluator(s, table).sample(t);
  return {smp.B, smp.C};
}

// Geometric mean of the n factors against their arithmetic mean
// 1 + (-2 B_n + C_n)/n, relative tolerance 1e-12.
inline bool am_gm_bound_check(const StandardFormEvaluator& eval, double t) {
  const StandardFormSample smp = eval.sample(t);
  const double n = static_cast<double>(eval.n());
  const double geometric = std::exp(eval.log_f(t) / n);
  const double arithmetic = 1.0 + (-2.0 * smp.B + smp.C) / n;
  return geometric <= arithmetic * (1.0 + 1e-12);
}

inline bool am_gm_bound_check(double s, double t, const PrimeTable& table) {
  return am_gm_bound_check(StandardFormEvaluator(s, table), t);
}

// t ~ (1/s) sqrt(lambda^2 + 1/4 - (s/2)(1 - s/2)) for each zero ordinate.
inline std::vector<double> predicted_maxima(double s, const ZeroList& zeros) {
  if (!(s > 0.0)) throw DomainError("predicted_maxima: s must be positive");
  std::vector<double> out;
  out.reserve(zeros.lambdas.size());
  for (double lambda : zeros.lambdas) {
    const double radicand = lambda * lambda + 0.25 - 0.5 * s * (1.0 - 0.5 * s);
    if (radicand < 0.0) throw DomainError("predicted_maxima: negative radicand");
    out.push_back(std::sqrt(radicand) / s);
  }
  return out;
}

inline double critical_line_abs_zeta(double lambda, const PrecisionContext& ctx) {
  return std::abs(eta_series(Complex(0.5, lambda), ctx));
}

// Scan |zeta(1/2 + i lambda)| on a grid, refine each local minimum by
// golden-section search to 1e-7 and keep those below 1e-3.
inline ZeroList find_zeros_on_critical_line(double t_max, double step,
                                            const PrecisionContext& ctx = PrecisionContext(15, 5)) {
  if (!(step > 0.0) || step > 0.05) throw PreconditionError("find_zeros_on_critical_line: need 0 < step <= 0.05");
  ZeroList out;
  const long n = static_cast<long>(std::floor(t_max / step + 1e-9));
  if (n < 3) return out;
  std::vector<double> grid(static_cast<std::size_t>(n) + 1), value(static_cast<std::size_t>(n) + 1);
  for (long j = 0; j <= n; ++j) {
    grid[static_cast<std::size_t>(j)] = static_cast<double>(j) * step;
    value[static_cast<std::size_t>(j)] = critical_line_abs_zeta(grid[static_cast<std::size_t>(j)], ctx);
  }
  constexpr double kInvPhi = 0.6180339887498949;
  for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
    if (!(value[j] < value[j - 1] && value[j] <= value[j + 1])) continue;
    double lo = grid[j - 1], hi = grid[j + 1];
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double f1 = critical_line_abs_zeta(x1, ctx), f2 = critical_line_abs_zeta(x2, ctx);
    while (hi - lo > 1e-7) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = critical_line_abs_zeta(x1, ctx);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = critical_line_abs_zeta(x2, ctx);
      }
    }
    const double lambda = 0.5 * (lo + hi);
    if (critical_line_abs_zeta(lambda, ctx) < 1e-3) out.lambdas.push_back(lambda);
  }
  return out;
}

// Samples at t = t_min + j*step, j = 0.. while t <= t_max. Work is split
// across `workers` threads; each chunk lands at its own offset, so the output
// does not depend on the worker count.
inline std::vector<StandardFormSample> sweep(double s, double t_min, double t_max, double step,
                                             const PrimeTable& table, unsigned workers = 0) {
  if (table.empty()) throw PreconditionError("sweep: empty prime table");
  if (!(t_min < t_max)) throw PreconditionError("sweep: need t_min < t_max");
  if (!(step > 0.0)) throw PreconditionError("sweep: step must be positive");
  const StandardFormEvaluator eval(s, table);
  const std::size_t count = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  std::vector<StandardFormSample> out(count);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) out[j] = eval.sample(t_min + static_cast<double>(j) * step);
  };
  if (workers <= 1) {
    run(0, count);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
  }
  return out;
}

// Interior samples strictly above the left neighbour and not below the right.
template <typename Field>
std::vector<double> local_maxima(const std::vector<StandardFormSample>& samples, Field field) {
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < samples.size(); ++j) {
    const double v = field(samples[j]);
    if (v > field(samples[j - 1]) && v >= field(samples[j + 1])) out.push_back(samples[j].t);
  }
  return out;
}

}  // namespace zetareg
