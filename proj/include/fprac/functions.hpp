#pragma once

// Arithmetic functions: the FunctionSpec description, the built-in catalog,
// evaluation, and divisor sums S_f(n) = sum of f(d) over d | n.

#include <fprac/arith.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fprac {

enum class FunctionKind {
  multiplicative,  ///< f(1) = 1, f(n) = product of f(p^e)
  additive,        ///< f(1) = 0, f(n) = sum of f(p^e)
  direct,          ///< f(n) computed from the whole factorization
};

inline std::string_view to_string(FunctionKind k) {
  switch (k) {
    case FunctionKind::multiplicative: return "multiplicative";
    case FunctionKind::additive: return "additive";
    case FunctionKind::direct: return "direct";
  }
  return "?";
}

using PrimePowerRule = std::function<u128(u64 prime, unsigned exponent)>;
using DirectRule = std::function<u128(const Factorization&)>;

/// An arithmetic function f: N -> N. Immutable once built; copies share the
/// rule objects.
///
/// Multiplicative and additive functions are defined by `prime_power`.
/// Direct functions are defined by `direct`; they may also carry a
/// `prime_power` rule that agrees with `direct` on prime powers, which lets
/// the scans evaluate f(p^k) past the 63-bit input range.
struct FunctionSpec {
  std::string name;
  FunctionKind kind = FunctionKind::multiplicative;
  PrimePowerRule prime_power;
  DirectRule direct;
  std::optional<u64> parameter;

  bool valid() const {
    if (kind == FunctionKind::direct) return static_cast<bool>(direct);
    return static_cast<bool>(prime_power);
  }
};

/// f(p^k) for k >= 0. Throws std::overflow_error if the value or, for direct
/// rules without a prime-power shortcut, p^k itself does not fit.
inline u128 eval_prime_power(const FunctionSpec& f, u64 p, unsigned k) {
  if (k == 0) {
    if (f.kind == FunctionKind::multiplicative) return 1;
    if (f.kind == FunctionKind::additive) return 0;
    return f.direct(Factorization{});
  }
  if (f.prime_power) return f.prime_power(p, k);
  return f.direct(make_factorization({{p, k}}));
}

/// Like eval_prime_power but reports overflow as nullopt.
inline std::optional<u128> try_eval_prime_power(const FunctionSpec& f, u64 p, unsigned k) {
  try {
    return eval_prime_power(f, p, k);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

inline u128 eval(const FunctionSpec& f, const Factorization& fact) {
  switch (f.kind) {
    case FunctionKind::multiplicative: {
      u128 r = 1;
      for (const auto& [p, e] : fact.factors) r = checked_mul(r, f.prime_power(p, e));
      return r;
    }
    case FunctionKind::additive: {
      u128 r = 0;
      for (const auto& [p, e] : fact.factors) r = checked_add(r, f.prime_power(p, e));
      return r;
    }
    case FunctionKind::direct:
      return f.direct(fact);
  }
  return 0;
}

inline u128 eval(const FunctionSpec& f, u64 n) { return eval(f, factorize(n)); }

/// Appends f(d) for every divisor d of `fact` to `out` (unordered).
/// `scratch` is a reusable buffer for direct rules; the hot census loop passes
/// the same one for every n to avoid reallocations.
inline void divisor_values(const FunctionSpec& f, const Factorization& fact, std::vector<u128>& out,
                           Factorization& scratch) {
  const std::size_t start = out.size();
  switch (f.kind) {
    case FunctionKind::multiplicative:
    case FunctionKind::additive: {
      const bool mult = f.kind == FunctionKind::multiplicative;
      out.push_back(mult ? 1 : 0);
      for (const auto& [p, e] : fact.factors) {
        const std::size_t base = out.size();
        for (unsigned k = 1; k <= e; ++k) {
          const u128 v = f.prime_power(p, k);
          for (std::size_t i = start; i < base; ++i)
            out.push_back(mult ? checked_mul(out[i], v) : checked_add(out[i], v));
        }
      }
      return;
    }
    case FunctionKind::direct: {
      // Odometer over exponent vectors; scratch holds the current divisor.
      const std::size_t r = fact.factors.size();
      std::vector<unsigned> exps(r, 0);
      for (;;) {
        scratch.factors.clear();
        u64 d = 1;
        for (std::size_t i = 0; i < r; ++i) {
          if (exps[i] == 0) continue;
          scratch.factors.push_back({fact.factors[i].prime, exps[i]});
          for (unsigned k = 0; k < exps[i]; ++k) d *= fact.factors[i].prime;
        }
        scratch.n = d;
        out.push_back(f.direct(scratch));
        std::size_t i = 0;
        while (i < r && exps[i] == fact.factors[i].exponent) exps[i++] = 0;
        if (i == r) return;
        ++exps[i];
      }
    }
  }
}

inline std::vector<u128> divisor_values(const FunctionSpec& f, const Factorization& fact) {
  std::vector<u128> out;
  out.reserve(fact.divisor_count());
  Factorization scratch;
  divisor_values(f, fact, out, scratch);
  return out;
}

/// S_f(n). Multiplicative f uses the product of local sums
/// (1 + f(p) + ... + f(p^e)); everything else sums f over the divisors.
inline u128 sum_over_divisors(const FunctionSpec& f, const Factorization& fact) {
  if (f.kind == FunctionKind::multiplicative) {
    u128 r = 1;
    for (const auto& [p, e] : fact.factors) {
      u128 local = 1;
      for (unsigned k = 1; k <= e; ++k) local = checked_add(local, f.prime_power(p, k));
      r = checked_mul(r, local);
    }
    return r;
  }
  u128 r = 0;
  for (u128 v : divisor_values(f, fact)) r = checked_add(r, v);
  return r;
}

inline u128 sum_over_divisors(const FunctionSpec& f, u64 n) {
  return sum_over_divisors(f, factorize(n));
}

// ---------------------------------------------------------------------------
// Catalog

namespace catalog {

inline FunctionSpec identity() {
  return {"identity", FunctionKind::multiplicative,
          [](u64 p, unsigned k) { return checked_pow(p, k); }, {}, {}};
}

inline FunctionSpec phi() {
  return {"phi", FunctionKind::multiplicative,
          [](u64 p, unsigned k) { return checked_mul(checked_pow(p, k - 1), p - 1); }, {}, {}};
}

/// Unitary totient: phi*(p^k) = p^k - 1.
inline FunctionSpec phi_star() {
  return {"phi-star", FunctionKind::multiplicative,
          [](u64 p, unsigned k) { return checked_pow(p, k) - 1; }, {}, {}};
}

inline u128 carmichael_prime_power(u64 p, unsigned k) {
  if (p == 2) {
    if (k <= 2) return k;  // lambda(2) = 1, lambda(4) = 2
    return checked_pow(2, k - 2);
  }
  return checked_mul(checked_pow(p, k - 1), p - 1);
}

/// Carmichael lambda. Not multiplicative: lcm of the prime-power values.
inline FunctionSpec lambda() {
  return {"lambda", FunctionKind::direct, carmichael_prime_power,
          [](const Factorization& fact) {
            u128 r = 1;
            for (const auto& [p, e] : fact.factors) r = lcm128(r, carmichael_prime_power(p, e));
            return r;
          },
          {}};
}

inline FunctionSpec tau() {
  return {"tau", FunctionKind::multiplicative, [](u64, unsigned k) { return u128{k} + 1; }, {}, {}};
}

inline FunctionSpec sigma() {
  return {"sigma", FunctionKind::multiplicative,
          [](u64 p, unsigned k) {
            u128 s = 1, pk = 1;
            for (unsigned i = 0; i < k; ++i) {
              pk = checked_mul(pk, p);
              s = checked_add(s, pk);
            }
            return s;
          },
          {}, {}};
}

inline FunctionSpec omega() {
  return {"omega", FunctionKind::additive, [](u64, unsigned) { return u128{1}; }, {}, {}};
}

inline FunctionSpec big_omega() {
  return {"big-omega", FunctionKind::additive, [](u64, unsigned k) { return u128{k}; }, {}, {}};
}

/// p-adic valuation v_p.
inline FunctionSpec valuation(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("vp: parameter must be prime");
  return {"vp", FunctionKind::additive, [p](u64 q, unsigned k) { return q == p ? u128{k} : 0; }, {}, p};
}

/// h(n) = 2^Omega(n).
inline FunctionSpec h() {
  return {"h", FunctionKind::multiplicative, [](u64, unsigned k) { return checked_pow(2, k); }, {}, {}};
}

/// Sum of proper divisors s(n) = sigma(n) - n.
inline FunctionSpec s() {
  auto sigma_local = [](u64 p, unsigned e) {
    u128 sum = 1, pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk = checked_mul(pk, p);
      sum = checked_add(sum, pk);
    }
    return std::pair{sum, pk};
  };
  return {"s", FunctionKind::direct,
          [sigma_local](u64 p, unsigned k) {
            auto [sum, pk] = sigma_local(p, k);
            return sum - pk;
          },
          [sigma_local](const Factorization& fact) {
            u128 sig = 1;
            for (const auto& [p, e] : fact.factors) sig = checked_mul(sig, sigma_local(p, e).first);
            return sig - fact.n;
          },
          {}};
}

/// a1(n): sum of the distinct primes dividing n.
inline FunctionSpec a1() {
  return {"a1", FunctionKind::additive, [](u64 p, unsigned) { return u128{p}; }, {}, {}};
}

/// f_m(p^k) = 2 if p | m, else 3.
inline FunctionSpec fn(u64 m) {
  if (m == 0) throw std::invalid_argument("fn: parameter must be positive");
  return {"fn", FunctionKind::multiplicative,
          [m](u64 p, unsigned) { return m % p == 0 ? u128{2} : u128{3}; }, {}, m};
}

/// Catalog names accepted by by_name.
inline const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames{"identity", "phi", "phi-star", "lambda", "tau",
                                               "sigma",    "omega", "big-omega", "vp", "h",
                                               "s",        "a1",  "fn"};
  return kNames;
}

inline bool takes_parameter(std::string_view name) { return name == "vp" || name == "fn"; }

/// Resolves a catalog name. vp and fn require `param`.
inline FunctionSpec by_name(std::string_view name, std::optional<u64> param = std::nullopt) {
  if (takes_parameter(name) && !param)
    throw std::invalid_argument("function '" + std::string(name) + "' requires a parameter");
  if (name == "identity") return identity();
  if (name == "phi") return phi();
  if (name == "phi-star") return phi_star();
  if (name == "lambda") return lambda();
  if (name == "tau") return tau();
  if (name == "sigma") return sigma();
  if (name == "omega") return omega();
  if (name == "big-omega") return big_omega();
  if (name == "vp") return valuation(*param);
  if (name == "h") return h();
  if (name == "s") return s();
  if (name == "a1") return a1();
  if (name == "fn") return fn(*param);
  throw std::invalid_argument("unknown function '" + std::string(name) + "'");
}

}  // namespace catalog

/// A point (p, k) where f(p^{k-1}) > f(p^k).
struct MonotonicityViolation {
  u64 prime;
  unsigned exponent;
};

/// Checks f(p^{k-1}) <= f(p^k) for primes p <= p_max, 1 <= k <= k_max.
/// Values beyond 128 bits are treated as larger than any representable one.
inline std::optional<MonotonicityViolation> check_monotone(const FunctionSpec& f, u64 p_max = 1000,
                                                           unsigned k_max = 20) {
  for (u64 p : primes_up_to(p_max)) {
    auto prev = try_eval_prime_power(f, p, 0);
    for (unsigned k = 1; k <= k_max && prev; ++k) {
      auto cur = try_eval_prime_power(f, p, k);
      if (cur && *cur < *prev) return MonotonicityViolation{p, k};
      prev = cur;
    }
  }
  return std::nullopt;
}

}  // namespace fprac
