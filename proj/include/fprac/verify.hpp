#pragma once

// Named, reproducible verification suites. Each suite checks one quantified
// statement exhaustively up to a bound and reports the first counterexample.

#include <fprac/census.hpp>

#include <json.hpp>

#include <chrono>
#include <numeric>

namespace fprac {

/// f-practical n <= x (n > 1) that are not m * p^k with m f-practical and
/// p^k the full power of a prime p dividing n.
inline std::vector<u64> find_nonconstructible(const FunctionSpec& f, u64 x) {
  if (x > 100'000) throw std::out_of_range("find_nonconstructible: bound above 1e5");
  std::vector<char> practical(x + 1, 0);
  std::vector<u64> out;
  for (u64 n = 1; n <= x; ++n) {
    const Factorization fact = factorize(n);
    practical[n] = is_f_practical(fact, f).is_practical;
    if (n == 1 || !practical[n]) continue;
    bool constructible = false;
    for (const auto& [p, e] : fact.factors) {
      u64 m = n;
      for (unsigned i = 0; i < e; ++i) m /= p;
      if (practical[m]) {
        constructible = true;
        break;
      }
    }
    if (!constructible) out.push_back(n);
  }
  return out;
}

struct SuiteOutcome {
  bool passed = true;
  std::optional<u64> counterexample;
  std::string detail;
  std::vector<u64> witnesses;
};

struct SuiteResult {
  std::string name;
  std::string statement;
  u64 bound = 0;
  bool passed = true;
  std::optional<u64> counterexample;
  std::string detail;
  std::vector<u64> witnesses;
  double seconds = 0;
};

struct Suite {
  std::string name;
  std::string statement;
  u64 default_bound;
  std::function<SuiteOutcome(u64 bound)> run;
  /// Re-derives a reported failure from scratch; true when it is genuine.
  std::function<bool(const SuiteOutcome&, u64 bound)> recheck;
};

namespace detail {

/// Suite "for every 1 <= n <= bound, holds(n)". The predicate factors n
/// itself so rechecks share no state with the scan.
inline Suite forall_suite(std::string name, std::string statement, u64 bound,
                          std::function<bool(u64)> holds, u64 start = 1) {
  Suite s{std::move(name), std::move(statement), bound, nullptr, nullptr};
  s.run = [holds, start](u64 b) {
    SuiteOutcome o;
    for (u64 n = start; n <= b; ++n) {
      if (!holds(n)) {
        o.passed = false;
        o.counterexample = n;
        return o;
      }
    }
    return o;
  };
  s.recheck = [holds](const SuiteOutcome& o, u64) { return o.counterexample && !holds(*o.counterexample); };
  return s;
}

inline bool practical(u64 n, const FunctionSpec& f) { return is_f_practical(n, f).is_practical; }

inline const std::vector<FunctionSpec>& weak_family() {
  static const std::vector<FunctionSpec> fs{catalog::identity(), catalog::phi(), catalog::phi_star(),
                                            catalog::lambda()};
  return fs;
}

inline bool all_bounded_representations(u64 n) {
  const auto sys = lambda_weight_system(factorize(n));
  try {
    for (u64 m = 1; m <= n; ++m) {
      const auto a = bounded_representation(sys, m);
      (void)a;
    }
  } catch (const std::logic_error&) {
    return false;
  }
  return true;
}

inline std::vector<Suite> build_suites() {
  using namespace catalog;
  std::vector<Suite> suites;

  suites.push_back(forall_suite(
      "fpractical-implies-weak", "every f-practical n is weakly f-practical (f = I, phi, phi*, lambda)",
      100'000, [](u64 n) {
        const Factorization fact = factorize(n);
        for (const auto& f : weak_family())
          if (is_f_practical(fact, f).is_practical && !is_weakly_f_practical(fact, f)) return false;
        return true;
      }));

  suites.push_back(forall_suite("identity-weak-equivalence", "n is practical iff n is weakly I-practical", 100'000,
                                [](u64 n) {
                                  const Factorization fact = factorize(n);
                                  const auto id = identity();
                                  return is_f_practical(fact, id).is_practical == is_weakly_f_practical(fact, id);
                                }));

  suites.push_back(forall_suite(
      "squarefree-weak-equivalence", "squarefree n: f-practical iff weakly f-practical (f = I, phi, phi*)",
      100'000, [](u64 n) {
        const Factorization fact = factorize(n);
        if (!fact.squarefree()) return true;
        for (const auto& f : {identity(), phi(), phi_star()})
          if (is_f_practical(fact, f).is_practical != is_weakly_f_practical(fact, f)) return false;
        return true;
      }));

  suites.push_back(forall_suite(
      "weak-closed-under-small-primes",
      "weakly f-practical n and prime p <= P(n): pn is weakly f-practical (f = I, phi, phi*, lambda)", 10'000,
      [](u64 n) {
        const Factorization fact = factorize(n);
        for (const auto& f : weak_family()) {
          if (!is_weakly_f_practical(fact, f)) continue;
          static const std::vector<u64> small_primes = primes_up_to(1'000'000);
          for (u64 p : small_primes) {
            if (p > fact.largest_prime()) break;
            auto parts = fact.factors;
            parts.push_back({p, 1});
            if (!is_weakly_f_practical(make_factorization(parts), f)) return false;
          }
        }
        return true;
      }));

  suites.push_back(forall_suite("even-weak-phi-star-is-practical",
                                "every even weakly phi*-practical n is practical", 100'000, [](u64 n) {
                                  if (n % 2 != 0) return true;
                                  const Factorization fact = factorize(n);
                                  return !is_weakly_f_practical(fact, phi_star()) ||
                                         is_f_practical(fact, identity()).is_practical;
                                }));

  suites.push_back(forall_suite("squarefree-phi-star-equals-phi",
                                "squarefree n: phi*-practical iff phi-practical", 100'000, [](u64 n) {
                                  const Factorization fact = factorize(n);
                                  if (!fact.squarefree()) return true;
                                  return is_f_practical(fact, phi_star()).is_practical ==
                                         is_f_practical(fact, phi()).is_practical;
                                }));

  suites.push_back(forall_suite(
      "lambda-star-subset-lambda",
      "every lambda-star-practical n is lambda-practical, with a bounded greedy representation of each m <= n",
      10'000, [](u64 n) {
        const Factorization fact = factorize(n);
        if (!is_f_practical(fact, lambda()).is_practical) return true;
        return is_lambda_practical(fact) && all_bounded_representations(n);
      }));

  suites.push_back(forall_suite("weak-lambda-implies-weak-phi",
                                "every weakly lambda-practical n is weakly phi-practical", 100'000, [](u64 n) {
                                  const Factorization fact = factorize(n);
                                  return !is_weakly_f_practical(fact, lambda()) ||
                                         is_weakly_f_practical(fact, phi());
                                }));

  {
    Suite s{"weak-phi-not-phi-has-75",
            "75 is weakly phi-practical but not phi-practical (phi is not convenient)", 1'000, nullptr, nullptr};
    s.run = [](u64 bound) {
      SuiteOutcome o;
      for (u64 n = 1; n <= bound; ++n) {
        const Factorization fact = factorize(n);
        if (is_weakly_f_practical(fact, phi()) && !is_f_practical(fact, phi()).is_practical)
          o.witnesses.push_back(n);
      }
      if (std::find(o.witnesses.begin(), o.witnesses.end(), 75) == o.witnesses.end()) {
        o.passed = false;
        o.counterexample = 75;
        o.detail = "75 missing from the weakly-but-not-practical list";
      }
      return o;
    };
    s.recheck = [](const SuiteOutcome&, u64 bound) {
      return bound < 75 || !(is_weakly_f_practical(75, phi()) && !practical(75, phi()));
    };
    suites.push_back(std::move(s));
  }

  suites.push_back(forall_suite("universality", "every n is tau-, h-, omega-, Omega- and v2-practical", 100'000,
                                [](u64 n) {
                                  const Factorization fact = factorize(n);
                                  for (const auto& f : {tau(), h(), omega(), big_omega(), valuation(2)})
                                    if (!is_f_practical(fact, f).is_practical) return false;
                                  return true;
                                }));

  {
    Suite s{"every-integer-criterion",
            "f(p^k) <= S_f(p^(k-1)) + 1 for p <= bound, k <= 20: tau holds, h holds with equality", 1'000, nullptr,
            nullptr};
    s.run = [](u64 bound) {
      SuiteOutcome o;
      const auto t = every_integer_scan(tau(), bound, 20);
      const auto hh = every_integer_scan(h(), bound, 20);
      if (!t.holds) {
        o.passed = false;
        o.counterexample = t.counterexample->prime;
        o.detail = "tau fails at k=" + std::to_string(t.counterexample->exponent);
      } else if (!hh.holds || !hh.equality_everywhere) {
        o.passed = false;
        o.detail = "h is not tight everywhere";
      }
      return o;
    };
    s.recheck = [](const SuiteOutcome&, u64 bound) {
      const auto hh = every_integer_scan(h(), bound, 20);
      return !every_integer_scan(tau(), bound, 20).holds || !hh.holds || !hh.equality_everywhere;
    };
    suites.push_back(std::move(s));
  }

  suites.push_back(forall_suite("a1-only-one", "1 is the only a1-practical number", 100'000,
                                [](u64 n) { return practical(n, a1()) == (n == 1); }));

  suites.push_back(forall_suite("fn-membership",
                                "f_m-practical n are exactly 1 and n with gcd(n, m) > 1 (m = 2, 6, 30)", 100'000,
                                [](u64 n) {
                                  const Factorization fact = factorize(n);
                                  for (u64 m : {2, 6, 30})
                                    if (is_f_practical(fact, fn(m)).is_practical != (n == 1 || std::gcd(n, m) > 1))
                                      return false;
                                  return true;
                                }));

  {
    Suite sp{"s-product-identity", "s(ab) = s(a)s(b) + a s(b) + b s(a) for coprime a, b <= bound", 1'000, nullptr,
             nullptr};
    auto identity_holds = [](u64 a, u64 b) {
      const auto sf = s();
      const u128 sa = eval(sf, a), sb = eval(sf, b);
      return eval(sf, a * b) == sa * sb + u128{a} * sb + u128{b} * sa;
    };
    sp.run = [identity_holds](u64 bound) {
      SuiteOutcome o;
      for (u64 a = 1; a <= bound; ++a)
        for (u64 b = a; b <= bound; ++b) {
          if (std::gcd(a, b) != 1 || identity_holds(a, b)) continue;
          o.passed = false;
          o.counterexample = a;
          o.witnesses = {a, b};
          o.detail = "a=" + std::to_string(a) + ", b=" + std::to_string(b);
          return o;
        }
      return o;
    };
    sp.recheck = [identity_holds](const SuiteOutcome& o, u64) {
      return o.witnesses.size() == 2 && !identity_holds(o.witnesses[0], o.witnesses[1]);
    };
    suites.push_back(std::move(sp));
  }

  suites.push_back(forall_suite("s-composite-lower-bound", "S_s(n) >= sqrt(n) for composite n", 100'000, [](u64 n) {
    if (n < 4 || is_prime(n)) return true;
    const u128 ss = sum_over_divisors(s(), n);
    return ss * ss >= n;
  }));

  suites.push_back(forall_suite("primes-are-s-practical", "every prime is s-practical", 100'000,
                                [](u64 n) { return !is_prime(n) || practical(n, s()); }));

  suites.push_back(forall_suite(
      "additive-criterion-agreement",
      "the prime-power criterion for additive f agrees with the subset-sum decision (omega, Omega, v2, v3, a1)",
      10'000, [](u64 n) {
        const Factorization fact = factorize(n);
        for (const auto& f : {omega(), big_omega(), valuation(2), valuation(3), a1()})
          if (additive_practical_check(fact, f) != is_f_practical(fact, f).is_practical) return false;
        return true;
      }));

  {
    Suite s{"identity-all-constructible",
            "every practical n > 1 is m p^k with m practical and p^k exactly dividing n", 10'000, nullptr, nullptr};
    s.run = [](u64 bound) {
      SuiteOutcome o;
      o.witnesses = find_nonconstructible(identity(), bound);
      if (!o.witnesses.empty()) {
        o.passed = false;
        o.counterexample = o.witnesses.front();
      }
      return o;
    };
    s.recheck = [](const SuiteOutcome& o, u64) {
      return o.counterexample && !find_nonconstructible(identity(), *o.counterexample).empty();
    };
    suites.push_back(std::move(s));
  }

  {
    Suite s{"phi-nonconstructible-has-45",
            "45 is phi-practical but not m p^k with m phi-practical", 100, nullptr, nullptr};
    s.run = [](u64 bound) {
      SuiteOutcome o;
      o.witnesses = find_nonconstructible(phi(), bound);
      if (std::find(o.witnesses.begin(), o.witnesses.end(), 45) == o.witnesses.end()) {
        o.passed = false;
        o.counterexample = 45;
        const auto v = is_f_practical(45, phi());
        o.detail = v.is_practical ? "45 is phi-practical but constructible"
                                  : "45 is not phi-practical: " + to_string(*v.witness) + " is not a subset sum";
      }
      return o;
    };
    s.recheck = [](const SuiteOutcome&, u64) {
      const auto list = find_nonconstructible(phi(), 45);
      return std::find(list.begin(), list.end(), 45) == list.end();
    };
    suites.push_back(std::move(s));
  }

  {
    Suite s{"phi-has-nonconstructible",
            "some phi-practical n is not m p^k with m phi-practical", 1'000, nullptr, nullptr};
    s.run = [](u64 bound) {
      SuiteOutcome o;
      o.witnesses = find_nonconstructible(phi(), bound);
      if (o.witnesses.empty()) {
        o.passed = false;
        o.detail = "no nonconstructible phi-practical n found";
      }
      return o;
    };
    s.recheck = [](const SuiteOutcome&, u64 bound) { return find_nonconstructible(phi(), bound).empty(); };
    suites.push_back(std::move(s));
  }

  {
    Suite s{"convenience",
            "f(p^(k+1)) <= f(p) f(p^k) on relevant primes: I and f_2 convenient, phi not (p <= bound, k <= 10)", 100,
            nullptr, nullptr};
    s.run = [](u64 bound) {
      SuiteOutcome o;
      const auto id = convenience_scan(identity(), bound, 10, 100);
      const auto f2 = convenience_scan(fn(2), bound, 10, 100);
      const auto ph = convenience_scan(phi(), bound, 10, 100);
      if (!id.holds) {
        o.passed = false;
        o.counterexample = id.counterexample->prime;
        o.detail = "identity inconvenient";
      } else if (!f2.holds) {
        o.passed = false;
        o.counterexample = f2.counterexample->prime;
        o.detail = "f_2 inconvenient";
      } else if (ph.holds) {
        o.passed = false;
        o.detail = "no counterexample for phi";
      }
      return o;
    };
    s.recheck = [](const SuiteOutcome&, u64 bound) {
      return !convenience_scan(identity(), bound, 10, 100).holds || !convenience_scan(fn(2), bound, 10, 100).holds ||
             convenience_scan(phi(), bound, 10, 100).holds;
    };
    suites.push_back(std::move(s));
  }

  {
    Suite s{"s-density-trend", "share of s-practical n <= X strictly decreases over X = 10^2 .. bound (decades)",
            100'000, nullptr, nullptr};
    s.run = [](u64 bound) {
      SuiteOutcome o;
      std::vector<u64> cps;
      for (u64 x = 100; x <= bound; x *= 10) cps.push_back(x);
      if (cps.size() < 2) return o;
      const SpfSieve sieve(cps.back());
      const auto trend = s_density_trend(sieve, cps);
      for (std::size_t i = 1; i < trend.size(); ++i) {
        if (!(trend[i].ratio < trend[i - 1].ratio)) {
          o.passed = false;
          o.counterexample = trend[i].x;
          return o;
        }
      }
      for (const auto& t : trend) o.witnesses.push_back(t.count);
      return o;
    };
    s.recheck = [](const SuiteOutcome& o, u64) {
      if (!o.counterexample) return false;
      const u64 x = *o.counterexample;
      const SpfSieve sieve(x);
      const auto t = s_density_trend(sieve, {x / 10, x});
      return !(t[1].ratio < t[0].ratio);
    };
    suites.push_back(std::move(s));
  }

  return suites;
}

}  // namespace detail

/// The registered suites, in execution order. Shared by the CLI and tests.
inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> kSuites = detail::build_suites();
  return kSuites;
}

inline const Suite& find_suite(std::string_view name) {
  for (const auto& s : suites())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

/// Runs one suite up to `bound` (the suite default when absent). A failure
/// is rechecked in isolation before it is reported; a failure that does not
/// reproduce throws std::logic_error.
inline SuiteResult run_suite(std::string_view name, std::optional<u64> bound = std::nullopt) {
  const Suite& s = find_suite(name);
  SuiteResult r;
  r.name = s.name;
  r.statement = s.statement;
  r.bound = bound.value_or(s.default_bound);
  const auto start = std::chrono::steady_clock::now();
  SuiteOutcome o = s.run(r.bound);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.passed && !s.recheck(o, r.bound))
    throw std::logic_error("suite '" + s.name + "' reported a failure that does not reproduce");
  r.passed = o.passed;
  r.counterexample = o.counterexample;
  r.detail = std::move(o.detail);
  r.witnesses = std::move(o.witnesses);
  return r;
}

inline nlohmann::json to_json(const SuiteResult& r) {
  nlohmann::json j{{"suite", r.name}, {"statement", r.statement}, {"bound", r.bound},
                   {"passed", r.passed}, {"seconds", r.seconds}};
  j["counterexample"] = r.counterexample ? nlohmann::json(*r.counterexample) : nlohmann::json(nullptr);
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
  return j;
}

inline void write_text(const SuiteResult& r, std::ostream& os) {
  os << (r.passed ? "PASS " : "FAIL ") << r.name << " (bound " << r.bound << ", ";
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", r.seconds);
  os << t << ")";
  if (r.counterexample) os << " counterexample " << *r.counterexample;
  if (!r.detail.empty()) os << " [" << r.detail << "]";
  os << "\n    " << r.statement << "\n";
}

}  // namespace fprac
