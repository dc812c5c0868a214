#pragma once

// Exact decision procedures for f-practical numbers.

#include <fprac/functions.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fprac {

/// Result of the ascending-weights criterion: every integer in [0, total]
/// is a subset sum iff each weight is at most 1 + (sum of the smaller ones).
struct CoverResult {
  bool covered = true;
  u128 total = 0;
  /// Smallest unreachable positive integer when not covered.
  std::optional<u128> first_gap;
};

/// `sorted` must be ascending; zero weights are skipped.
inline CoverResult cover_sorted(std::span<const u128> sorted) {
  CoverResult r;
  for (u128 w : sorted) {
    if (w == 0) continue;
    if (w > r.total + 1) {
      r.covered = false;
      r.first_gap = r.total + 1;
      return r;
    }
    r.total = checked_add(r.total, w);
  }
  return r;
}

/// True iff every integer in [0, sum] is a subset sum of `weights`.
/// Zeros are ignored; the empty multiset covers [0, 0].
inline bool contiguous_cover(std::vector<u128> weights) {
  std::sort(weights.begin(), weights.end());
  return cover_sorted(weights).covered;
}

struct PracticalityVerdict {
  u64 n = 1;
  std::string function;
  bool is_practical = true;
  /// First unrepresentable target, present exactly when !is_practical.
  std::optional<u128> witness;
  /// Sorted non-zero values f(d), d | n.
  std::vector<u128> weights;
  /// S_f(n).
  u128 total = 0;
};

inline PracticalityVerdict is_f_practical(const Factorization& fact, const FunctionSpec& f) {
  PracticalityVerdict v;
  v.n = fact.n;
  v.function = f.name;
  v.weights = divisor_values(f, fact);
  std::erase(v.weights, u128{0});
  std::sort(v.weights.begin(), v.weights.end());
  for (u128 w : v.weights) v.total = checked_add(v.total, w);
  const CoverResult c = cover_sorted(v.weights);
  v.is_practical = c.covered;
  v.witness = c.first_gap;
  return v;
}

inline PracticalityVerdict is_f_practical(u64 n, const FunctionSpec& f) {
  return is_f_practical(factorize(n), f);
}

/// Reusable buffers for the allocation-free membership test.
struct PracticalityScratch {
  std::vector<u128> values;
  Factorization divisor;
};

/// Membership-only variant of is_f_practical for bulk enumeration.
inline bool is_f_practical_fast(const Factorization& fact, const FunctionSpec& f,
                                PracticalityScratch& scratch) {
  scratch.values.clear();
  divisor_values(f, fact, scratch.values, scratch.divisor);
  std::sort(scratch.values.begin(), scratch.values.end());
  u128 total = 0;
  for (u128 w : scratch.values) {
    if (w > total + 1) return false;
    total = checked_add(total, w);
  }
  return true;
}

/// Primes of n ordered by ascending f(p), ties by ascending p, paired with
/// their exponent.
inline std::vector<PrimePower> weak_order(const Factorization& fact, const FunctionSpec& f) {
  std::vector<std::pair<u128, PrimePower>> keyed;
  for (const auto& pp : fact.factors) keyed.push_back({eval_prime_power(f, pp.prime, 1), pp});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second.prime < b.second.prime;
  });
  std::vector<PrimePower> out;
  for (const auto& [key, pp] : keyed) out.push_back(pp);
  return out;
}

/// With primes sorted by f(p): f(p_{i+1}) <= S_f(p_1^e_1 ... p_i^e_i) + 1 for
/// every prefix, starting from the empty product.
inline bool is_weakly_f_practical(const Factorization& fact, const FunctionSpec& f) {
  const auto order = weak_order(fact, f);
  std::vector<PrimePower> prefix;
  u128 prefix_sum = eval_prime_power(f, 2, 0);  // S_f(1) = f(1)
  for (const auto& pp : order) {
    if (eval_prime_power(f, pp.prime, 1) > prefix_sum + 1) return false;
    prefix.push_back(pp);
    if (f.kind == FunctionKind::multiplicative) {
      u128 local = 1;
      for (unsigned k = 1; k <= pp.exponent; ++k) local = checked_add(local, f.prime_power(pp.prime, k));
      prefix_sum = checked_mul(prefix_sum, local);
    } else {
      prefix_sum = sum_over_divisors(f, make_factorization(prefix));
    }
  }
  return true;
}

inline bool is_weakly_f_practical(u64 n, const FunctionSpec& f) {
  return is_weakly_f_practical(factorize(n), f);
}

struct ExtensionResult {
  bool extends = true;
  /// Smallest i with f(p^i) > S_f(n p^{i-1}) + 1.
  std::optional<unsigned> failing_exponent;

  explicit operator bool() const { return extends; }
};

/// For f-practical n and a prime p not dividing n: n p^k is f-practical iff
/// f(p^i) <= S_f(n p^{i-1}) + 1 for 1 <= i <= k. Practicality of n is the
/// caller's responsibility.
inline ExtensionResult extend_by_prime_power(u64 n, u64 p, unsigned k, const FunctionSpec& f) {
  if (n == 0) throw std::invalid_argument("extend_by_prime_power: n must be positive");
  if (!is_prime(p)) throw std::invalid_argument("extend_by_prime_power: p must be prime");
  if (n % p == 0) throw std::invalid_argument("extend_by_prime_power: p must be coprime to n");
  if (k == 0) throw std::invalid_argument("extend_by_prime_power: k must be positive");
  const Factorization base = factorize(n);
  for (unsigned i = 1; i <= k; ++i) {
    u128 s;
    if (f.kind == FunctionKind::multiplicative) {
      u128 local = 0;
      for (unsigned j = 0; j < i; ++j) local = checked_add(local, eval_prime_power(f, p, j));
      s = checked_mul(sum_over_divisors(f, base), local);
    } else {
      auto parts = base.factors;
      if (i > 1) parts.push_back({p, i - 1});
      s = sum_over_divisors(f, make_factorization(parts));
    }
    if (eval_prime_power(f, p, i) > s + 1) return {false, i};
  }
  return {};
}

struct ScanCounterexample {
  u64 prime;
  unsigned exponent;
  /// Coprime m that made p relevant (convenience scan only).
  std::optional<u64> witness_m;
};

/// Outcome of a bounded scan. `holds` means no counterexample within the
/// bounds; it is not a proof.
struct ScanReport {
  bool holds = true;
  std::optional<ScanCounterexample> counterexample;
  u64 p_max = 0;
  unsigned k_max = 0;
  u64 m_max = 0;
  u64 checked = 0;
  /// Every checked inequality held with equality.
  bool equality_everywhere = true;
  /// Primes whose exponent range was cut short by 128-bit overflow.
  u64 truncated_primes = 0;
};

/// f(p^k) <= S_f(p^{k-1}) + 1 for all primes p <= p_max and 1 <= k <= k_max;
/// exactly the condition under which every integer is f-practical.
/// Primes are scanned ascending, exponents ascending within each prime.
inline ScanReport every_integer_scan(const FunctionSpec& f, u64 p_max, unsigned k_max) {
  if (p_max < 2 || k_max < 2) throw std::invalid_argument("every_integer_scan: bounds must be >= 2");
  ScanReport r;
  r.p_max = p_max;
  r.k_max = k_max;
  for (u64 p : primes_up_to(p_max)) {
    u128 partial = 0;  // S_f(p^{k-1})
    bool truncated = false;
    for (unsigned k = 1; k <= k_max; ++k) {
      auto prev = try_eval_prime_power(f, p, k - 1);
      auto cur = try_eval_prime_power(f, p, k);
      if (!prev || !cur || *prev >= kU128Max - partial) {
        truncated = true;
        break;
      }
      partial += *prev;
      ++r.checked;
      if (*cur > partial + 1) {
        r.holds = false;
        r.equality_everywhere = false;
        r.counterexample = ScanCounterexample{p, k, std::nullopt};
        return r;
      }
      if (*cur != partial + 1) r.equality_everywhere = false;
    }
    if (truncated) ++r.truncated_primes;
  }
  return r;
}

/// For every prime p <= p_max that has a coprime m <= m_max with
/// f(p) <= S_f(m) + 1, checks f(p^{k+1}) <= f(p) f(p^k) for 0 <= k <= k_max.
/// A product that overflows 128 bits exceeds any representable left side.
inline ScanReport convenience_scan(const FunctionSpec& f, u64 p_max, unsigned k_max, u64 m_max) {
  if (p_max < 2 || k_max < 2 || m_max < 2)
    throw std::invalid_argument("convenience_scan: bounds must be >= 2");
  ScanReport r;
  r.p_max = p_max;
  r.k_max = k_max;
  r.m_max = m_max;
  std::vector<u128> s_values(m_max + 1, 0);
  for (u64 m = 1; m <= m_max; ++m) s_values[m] = sum_over_divisors(f, m);

  for (u64 p : primes_up_to(p_max)) {
    const auto fp = try_eval_prime_power(f, p, 1);
    if (!fp) {
      ++r.truncated_primes;
      continue;
    }
    std::optional<u64> witness;
    for (u64 m = 1; m <= m_max && !witness; ++m) {
      if (m % p != 0 && *fp <= s_values[m] + 1) witness = m;
    }
    if (!witness) continue;
    for (unsigned k = 0; k <= k_max; ++k) {
      const auto lhs = try_eval_prime_power(f, p, k + 1);
      const auto fk = try_eval_prime_power(f, p, k);
      if (!lhs || !fk) {
        ++r.truncated_primes;
        break;
      }
      ++r.checked;
      u128 rhs;
      try {
        rhs = checked_mul(*fp, *fk);
      } catch (const std::overflow_error&) {
        r.equality_everywhere = false;
        continue;
      }
      if (*lhs > rhs) {
        r.holds = false;
        r.equality_everywhere = false;
        r.counterexample = ScanCounterexample{p, k, witness};
        return r;
      }
      if (*lhs != rhs) r.equality_everywhere = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bounded-multiplicity representations

/// Strictly descending positive weights, each available `multiplicity` times.
class BoundedWeightSystem {
 public:
  BoundedWeightSystem(std::vector<u64> weights, std::vector<u64> multiplicities)
      : weights_(std::move(weights)), multiplicities_(std::move(multiplicities)) {
    if (weights_.size() != multiplicities_.size())
      throw std::invalid_argument("BoundedWeightSystem: weights and multiplicities differ in length");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (weights_[i] == 0 || multiplicities_[i] == 0)
        throw std::invalid_argument("BoundedWeightSystem: weights and multiplicities must be positive");
      if (i > 0 && weights_[i] >= weights_[i - 1])
        throw std::invalid_argument("BoundedWeightSystem: weights must be strictly descending");
      distinct_sum_ = checked_add(distinct_sum_, weights_[i]);
      capacity_ = checked_add(capacity_, checked_mul(weights_[i], multiplicities_[i]));
    }
  }

  const std::vector<u64>& weights() const { return weights_; }
  const std::vector<u64>& multiplicities() const { return multiplicities_; }
  /// Sum of the distinct weights.
  u128 distinct_sum() const { return distinct_sum_; }
  /// Largest representable total, sum of u_i w_i.
  u128 capacity() const { return capacity_; }

 private:
  std::vector<u64> weights_;
  std::vector<u64> multiplicities_;
  u128 distinct_sum_ = 0;
  u128 capacity_ = 0;
};

/// Coefficients a_i with 0 <= a_i <= u_i and sum a_i w_i = m.
///
/// Walks the weights from the largest, subtracting copies while the
/// remainder allows; once the remainder drops below a weight that still has
/// copies left, the rest is a subset sum of the smaller weights, found by the
/// same descending pass. This succeeds whenever every integer up to the
/// distinct sum is a subset sum of the weights. The result is checked and a
/// failure throws std::logic_error.
inline std::vector<u64> bounded_representation(const BoundedWeightSystem& sys, u128 m) {
  if (m > sys.capacity()) throw std::invalid_argument("bounded_representation: m exceeds capacity");
  const auto& w = sys.weights();
  const auto& u = sys.multiplicities();
  std::vector<u64> a(w.size(), 0);
  u128 rest = m;
  for (std::size_t i = 0; i < w.size() && rest != 0; ++i) {
    const u128 take = std::min<u128>(u[i], rest / w[i]);
    a[i] = static_cast<u64>(take);
    rest -= take * w[i];
  }
  u128 check = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (a[i] > u[i]) throw std::logic_error("bounded_representation: coefficient above multiplicity");
    check += static_cast<u128>(a[i]) * w[i];
  }
  if (rest != 0 || check != m)
    throw std::logic_error("bounded_representation: greedy failed for m=" + to_string(m) +
                           "; weights do not cover their distinct sum");
  return a;
}

/// Distinct values lambda(d), d | n, descending, each with multiplicity the
/// sum of phi(d)/lambda(d) over the divisors sharing that value.
inline BoundedWeightSystem lambda_weight_system(const Factorization& fact) {
  const FunctionSpec lam = catalog::lambda();
  std::map<u64, u64, std::greater<>> grouped;
  for (u64 d : divisors(fact)) {
    const Factorization fd = factorize(d);
    const u64 l = static_cast<u64>(eval(lam, fd));
    grouped[l] += totient(fd) / l;
  }
  std::vector<u64> w, u;
  for (const auto& [value, mult] : grouped) {
    w.push_back(value);
    u.push_back(mult);
  }
  return BoundedWeightSystem(std::move(w), std::move(u));
}

inline constexpr u64 kLambdaDpLimit = 1'000'000;

/// Every 1 <= m <= n is sum over d | n of lambda(d) m_d with
/// 0 <= m_d <= phi(d)/lambda(d). Decided by bounded-knapsack reachability
/// over [0, n] with binary splitting of multiplicities.
inline bool is_lambda_practical(const Factorization& fact) {
  const u64 n = fact.n;
  if (n > kLambdaDpLimit)
    throw std::out_of_range("is_lambda_practical: n=" + std::to_string(n) + " above DP bound " +
                            std::to_string(kLambdaDpLimit));
  const BoundedWeightSystem sys = lambda_weight_system(fact);
  boost::dynamic_bitset<u64> reach(n + 1);
  reach.set(0);
  for (std::size_t i = 0; i < sys.weights().size(); ++i) {
    const u64 w = sys.weights()[i];
    u64 left = sys.multiplicities()[i];
    for (u64 chunk = 1; left > 0; chunk <<= 1) {
      const u64 take = std::min(chunk, left);
      left -= take;
      const u64 shift = take * w;
      if (shift <= n) reach |= reach << shift;
    }
  }
  reach.flip();
  reach.reset(0);
  return reach.none();
}

inline bool is_lambda_practical(u64 n) {
  if (n == 0) throw std::invalid_argument("is_lambda_practical: n must be positive");
  if (n > kLambdaDpLimit)
    throw std::out_of_range("is_lambda_practical: n=" + std::to_string(n) + " above DP bound");
  return is_lambda_practical(factorize(n));
}

/// Additive f: n is f-practical iff f(p^e) <= 1 + sum of f(d) over d | n
/// with f(d) < f(p^e), for every p^e with e up to the exponent of p in n.
inline bool additive_practical_check(const Factorization& fact, const FunctionSpec& f) {
  if (f.kind != FunctionKind::additive)
    throw std::invalid_argument("additive_practical_check: '" + f.name + "' is not additive");
  auto values = divisor_values(f, fact);
  std::sort(values.begin(), values.end());
  std::vector<u128> prefix(values.size() + 1, 0);
  for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = checked_add(prefix[i], values[i]);
  for (const auto& [p, e] : fact.factors) {
    for (unsigned k = 1; k <= e; ++k) {
      const u128 v = f.prime_power(p, k);
      const auto below = std::lower_bound(values.begin(), values.end(), v) - values.begin();
      if (v > prefix[below] + 1) return false;
    }
  }
  return true;
}

inline bool additive_practical_check(u64 n, const FunctionSpec& f) {
  return additive_practical_check(factorize(n), f);
}

}  // namespace fprac
