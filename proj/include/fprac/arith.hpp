#pragma once

// Integer plumbing: checked 128-bit arithmetic, primality, factorization
// and divisor enumeration for 63-bit integers.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fprac {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Largest integer accepted by factorize (exclusive).
inline constexpr u64 kMaxInput = u64{1} << 63;

inline constexpr u128 kU128Max = ~u128{0};

inline u128 checked_add(u128 a, u128 b) {
  if (a > kU128Max - b) throw std::overflow_error("128-bit overflow in addition");
  return a + b;
}

inline u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > kU128Max / a) throw std::overflow_error("128-bit overflow in multiplication");
  return a * b;
}

inline u128 checked_pow(u128 base, unsigned exp) {
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline u128 lcm128(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  u128 x = a, y = b;
  while (y != 0) {
    u128 t = x % y;
    x = y;
    y = t;
  }
  return checked_mul(a / x, b);
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

/// Parses a non-negative decimal literal into 128 bits.
inline u128 parse_u128(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  u128 v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not an unsigned integer: " + text);
    v = checked_add(checked_mul(v, 10), static_cast<unsigned>(c - '0'));
  }
  return v;
}

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime-power decomposition: primes strictly increasing,
/// exponents positive, n == 1 exactly when `factors` is empty.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  /// Largest prime factor, 1 for n == 1.
  u64 largest_prime() const { return factors.empty() ? 1 : factors.back().prime; }

  bool squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
  }

  std::size_t divisor_count() const {
    std::size_t c = 1;
    for (const auto& pp : factors) c *= pp.exponent + 1;
    return c;
  }

  unsigned valuation(u64 p) const {
    for (const auto& pp : factors)
      if (pp.prime == p) return pp.exponent;
    return 0;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Builds a Factorization from (prime, exponent) pairs in any order, merging
/// repeated primes. Throws if the product leaves the 63-bit range.
inline Factorization make_factorization(std::vector<PrimePower> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  Factorization f;
  for (const auto& pp : parts) {
    if (pp.exponent == 0) continue;
    if (pp.prime < 2) throw std::invalid_argument("prime factor must be at least 2");
    if (!f.factors.empty() && f.factors.back().prime == pp.prime)
      f.factors.back().exponent += pp.exponent;
    else
      f.factors.push_back(pp);
  }
  u128 n = 1;
  for (const auto& pp : f.factors) {
    n = checked_mul(n, checked_pow(pp.prime, pp.exponent));
    if (n >= kMaxInput) throw std::overflow_error("factorization product exceeds 63 bits");
  }
  f.n = static_cast<u64>(n);
  return f;
}

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n must be odd composite.
inline u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace detail

/// Deterministic for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

/// Smallest prime >= n (n well below 2^64).
inline u64 next_prime(u64 n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

namespace detail {

inline void collect_prime_factors(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  collect_prime_factors(d, out);
  collect_prime_factors(n / d, out);
}

}  // namespace detail

/// Prime factorization of 1 <= n < 2^63. Small factors by trial division,
/// the cofactor by Miller-Rabin and Pollard-Brent.
inline Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n >= kMaxInput) throw std::out_of_range("factorize: n must be below 2^63");
  Factorization f;
  f.n = n;
  u64 m = n;
  auto strip = [&](u64 p) {
    if (m % p != 0) return;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  };
  strip(2);
  for (u64 p = 3; p < 1000 && p * p <= m; p += 2) strip(p);
  if (m == 1) return f;
  if (m < 1000 * 1000) {  // no factor below 1000, so m is prime
    f.factors.push_back({m, 1});
    return f;
  }
  std::vector<u64> rest;
  detail::collect_prime_factors(m, rest);
  std::sort(rest.begin(), rest.end());
  for (u64 p : rest) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

/// All divisors in ascending order.
inline std::vector<u64> divisors(const Factorization& fact) {
  std::vector<u64> ds{1};
  ds.reserve(fact.divisor_count());
  for (const auto& [p, e] : fact.factors) {
    const std::size_t base = ds.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

/// Primes <= limit by a plain Eratosthenes sieve.
inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

inline u64 totient(const Factorization& fact) {
  u64 r = 1;
  for (const auto& [p, e] : fact.factors) {
    r *= p - 1;
    for (unsigned k = 1; k < e; ++k) r *= p;
  }
  return r;
}

}  // namespace fprac
