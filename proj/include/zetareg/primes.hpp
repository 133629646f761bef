#pragma once

// Prime tables by a bit-packed, odd-only sieve of Eratosthenes (segmented),
// the logarithmic integral with lower limit 2, and the asymptotic n-th prime
// estimate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "zetareg/errors.hpp"
#include "zetareg/precision.hpp"

namespace zetareg {

struct SieveOptions {
  // Odd numbers covered per segment. Limits up to 10^7 fit in one segment.
  std::uint64_t segment_span = 10'000'000;
  // Largest limit accepted; about limit/16 bytes are needed while sieving.
  std::uint64_t max_limit = 4'000'000'000ULL;
};

class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const { return limit_; }
  std::size_t count() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }

  // First n primes as a table (n <= count()).
  PrimeTable prefix(std::size_t n) const {
    if (n > count()) throw RangeError("PrimeTable::prefix: not enough primes");
    std::vector<std::uint64_t> head(primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(n));
    // argument evaluation order is unspecified: read back() before moving
    const std::uint64_t last = n == 0 ? 1 : head.back();
    return PrimeTable(last, std::move(head));
  }

  // Number of primes <= x; x must not exceed limit().
  std::size_t prime_count(std::uint64_t x) const {
    if (x > limit_) throw RangeError("PrimeTable::prime_count: x beyond sieve limit");
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  bool contains(std::uint64_t x) const { return std::binary_search(primes_.begin(), primes_.end(), x); }

  friend bool operator==(const PrimeTable& a, const PrimeTable& b) {
    return a.limit_ == b.limit_ && a.primes_ == b.primes_;
  }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

// Composite flags for odd numbers in [lo, hi) (lo odd), bit i <-> lo + 2i.
inline void sieve_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base,
                          std::vector<std::uint64_t>& bits) {
  const std::uint64_t n_odd = (hi - lo + 1) / 2;
  bits.assign((n_odd + 63) / 64, 0);
  for (std::uint64_t p : base) {
    if (p == 2) continue;
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t m = start; m < hi; m += 2 * p) {
      const std::uint64_t i = (m - lo) / 2;
      bits[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }
}

}  // namespace detail

inline PrimeTable sieve(std::uint64_t limit, const SieveOptions& opt = {}) {
  if (limit < 2) throw PreconditionError("sieve: limit must be >= 2");
  if (limit > opt.max_limit) throw ResourceError("sieve: limit exceeds configured memory budget");
  if (opt.segment_span < 16) throw PreconditionError("sieve: segment span too small");

  // Base primes up to sqrt(limit) by plain trial-free sieve.
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(1.3 * limit / std::log(static_cast<double>(limit))) + 16);
  primes.push_back(2);

  std::vector<std::uint64_t> bits;
  const std::uint64_t span = 2 * opt.segment_span;
  for (std::uint64_t lo = 3; lo <= limit; lo += span) {
    const std::uint64_t hi = std::min(limit + 1, lo + span);
    detail::sieve_segment(lo, hi, base, bits);
    const std::uint64_t n_odd = (hi - lo + 1) / 2;
    for (std::uint64_t i = 0; i < n_odd; ++i)
      if (!(bits[i >> 6] >> (i & 63) & 1)) primes.push_back(lo + 2 * i);
  }
  return PrimeTable(limit, std::move(primes));
}

inline std::uint64_t nth_prime(const PrimeTable& table, std::uint64_t n) {
  if (n == 0) throw PreconditionError("nth_prime: n is 1-indexed");
  if (n > table.count()) throw RangeError("nth_prime: n exceeds table count");
  return table[n - 1];
}

// Li(x) = integral_2^x dt / log t = Ei(log x) - Ei(log 2).
inline BigReal li(const BigReal& x, const PrecisionContext& ctx) {
  BigReal two(2L, ctx.bits() + 16);
  BigReal xw = x.with_precision(ctx.bits() + 16);
  if (xw <= two) throw DomainError("li: x must exceed 2");
  BigReal a(ctx.bits() + 16), b(ctx.bits() + 16);
  mpfr_eint(a.get(), log(xw).get(), MPFR_RNDN);
  mpfr_eint(b.get(), log(two).get(), MPFR_RNDN);
  return (a - b).with_precision(ctx.bits());
}

inline BigReal li(double x, const PrecisionContext& ctx) { return li(BigReal(x, ctx.bits() + 16), ctx); }

// n (log n + log log n - 1), the leading terms of the n-th prime asymptotic.
inline double pn_asymptotic(std::uint64_t n) {
  if (n < 3) throw DomainError("pn_asymptotic: n must be >= 3");
  const double ln = std::log(static_cast<double>(n));
  return static_cast<double>(n) * (ln + std::log(ln) - 1.0);
}

// --- sieve cache -----------------------------------------------------------
//
// Layout (little-endian): "ZFPT" magic, u64 limit, then (limit + 1) bits where
// bit i (byte i/8, bit i%8) is set iff i is prime.

inline void save_sieve_cache(const PrimeTable& table, const std::filesystem::path& path) {
  const std::uint64_t limit = table.limit();
  std::vector<unsigned char> bytes((limit + 1 + 7) / 8, 0);
  for (std::uint64_t p : table.primes()) bytes[p >> 3] |= static_cast<unsigned char>(1u << (p & 7));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("save_sieve_cache: cannot open " + path.string());
  out.write("ZFPT", 4);
  unsigned char header[8];
  for (int i = 0; i < 8; ++i) header[i] = static_cast<unsigned char>(limit >> (8 * i));
  out.write(reinterpret_cast<const char*>(header), 8);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ResourceError("save_sieve_cache: write failed");
}

inline PrimeTable load_sieve_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("load_sieve_cache: cannot open " + path.string());
  char magic[4];
  unsigned char header[8];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(header), 8);
  if (!in || std::memcmp(magic, "ZFPT", 4) != 0) throw ResourceError("load_sieve_cache: bad header");
  std::uint64_t limit = 0;
  for (int i = 0; i < 8; ++i) limit |= static_cast<std::uint64_t>(header[i]) << (8 * i);
  std::vector<unsigned char> bytes((limit + 1 + 7) / 8);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!in) throw ResourceError("load_sieve_cache: truncated bitset");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 0; i <= limit; ++i)
    if (bytes[i >> 3] >> (i & 7) & 1) primes.push_back(i);
  return PrimeTable(limit, std::move(primes));
}

// Sieve through an optional cache file: reuse it when its limit matches,
// otherwise sieve and (re)write it.
inline PrimeTable sieve_cached(std::uint64_t limit, const std::filesystem::path& cache,
                               const SieveOptions& opt = {}) {
  if (!cache.empty() && std::filesystem::exists(cache)) {
    try {
      PrimeTable t = load_sieve_cache(cache);
      if (t.limit() == limit) return t;
    } catch (const ResourceError&) {
      // unreadable cache: fall through and rebuild it
    }
  }
  PrimeTable t = sieve(limit, opt);
  if (!cache.empty()) save_sieve_cache(t, cache);
  return t;
}

}  // namespace zetareg
