#pragma once

#include <fprac/arith.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fprac {

inline constexpr u64 kDefaultSieveLimit = 100'000'000;

/// Smallest-prime-factor table for 2 <= n <= limit, built by a linear sieve.
/// Immutable after construction.
class SpfSieve {
 public:
  explicit SpfSieve(u64 limit, u64 max_limit = kDefaultSieveLimit) : limit_(limit) {
    if (limit == 0) throw std::invalid_argument("sieve limit must be positive");
    if (limit > max_limit)
      throw std::length_error("sieve limit " + std::to_string(limit) + " exceeds guard " +
                              std::to_string(max_limit));
    if (limit > 0xFFFFFFFFull) throw std::length_error("sieve limit must fit 32 bits");
    spf_.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (u64 i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::uint32_t p : primes) {
        if (p > spf_[i] || i * p > limit) break;
        spf_[i * p] = p;
      }
    }
  }

  u64 limit() const { return limit_; }

  u64 smallest_prime_factor(u64 n) const {
    check(n);
    return n == 1 ? 1 : spf_[n];
  }

  bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

  /// Writes the factorization of n into `out`, reusing its storage.
  void factorize_into(u64 n, Factorization& out) const {
    check(n);
    out.n = n;
    out.factors.clear();
    while (n > 1) {
      const std::uint32_t p = spf_[n];
      unsigned e = 0;
      do {
        n /= p;
        ++e;
      } while (n % p == 0);
      out.factors.push_back({p, e});
    }
  }

  Factorization factorize(u64 n) const {
    Factorization f;
    factorize_into(n, f);
    return f;
  }

 private:
  void check(u64 n) const {
    if (n == 0) throw std::invalid_argument("sieve factorize: n must be positive");
    if (n > limit_)
      throw std::out_of_range("n=" + std::to_string(n) + " beyond sieve limit " + std::to_string(limit_));
  }

  u64 limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace fprac
