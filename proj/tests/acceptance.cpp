// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: fprac_acceptance [--criterion N]

#include <fprac/census.hpp>
#include <fprac/verify.hpp>

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "oracles.hpp"

using namespace fprac;
namespace cat = fprac::catalog;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    detail << (ok ? "  ok   " : "  FAIL ") << what << "\n";
    pass = pass && ok;
  }
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const CensusReport& lambda_star_to_1e7() {
  static const CensusReport report = [] {
    std::vector<u64> cps{10, 100, 1000, 10000, 100000};
    for (u64 x = 1'000'000; x <= 10'000'000; x += 1'000'000) cps.push_back(x);
    const SpfSieve sieve(10'000'000);
    return count_practicals(cat::lambda(), sieve, cps);
  }();
  return report;
}

const CensusCheckpoint& row(const CensusReport& r, u64 x) {
  for (const auto& c : r.checkpoints)
    if (c.x == x) return c;
  throw std::logic_error("missing checkpoint");
}

void check_rows(Verdict& v, const CensusReport& r, const std::vector<GoldenRow>& table, u64 lo, u64 hi) {
  for (const auto& g : table) {
    if (g.x < lo || g.x > hi) continue;
    const auto& c = row(r, g.x);
    std::ostringstream what;
    what << "X=" << g.x << ": count " << c.count << " (want " << g.count << "), ratio " << c.ratio_text()
         << " (want " << g.ratio << ")";
    v.require(c.count == g.count && c.ratio_text() == g.ratio, what.str());
  }
}

void criterion1(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const SpfSieve sieve(100000);
  const auto small = count_practicals(cat::lambda(), sieve, {10, 100, 1000, 10000, 100000});
  const double secs = since(t0);
  check_rows(v, small, golden::lambda_star_decades(), 10, 100000);
  v.require(secs < 60, "10^1..10^5 in " + std::to_string(secs) + " s (< 60 s)");

  const auto t1 = std::chrono::steady_clock::now();
  const auto& big = lambda_star_to_1e7();
  const double big_secs = since(t1);
  check_rows(v, big, golden::lambda_star_decades(), 1'000'000, 10'000'000);
  v.require(big_secs < 1800, "extended run to 10^7 in " + std::to_string(big_secs) + " s (< 1800 s)");
}

void criterion2(Verdict& v) {
  check_rows(v, lambda_star_to_1e7(), golden::lambda_star_millions(), 2'000'000, 9'000'000);
}

void criterion3(Verdict& v) {
  v.require(is_weakly_f_practical(75, cat::phi()) && !is_f_practical(75, cat::phi()).is_practical,
            "75 weakly phi-practical but not phi-practical");
  const auto v45 = is_f_practical(45, cat::phi());
  const auto list = find_nonconstructible(cat::phi(), 100);
  const bool listed = std::find(list.begin(), list.end(), 45u) != list.end();
  std::string why = v45.is_practical ? "" : " (45 is not phi-practical: " + to_string(*v45.witness) + " is not a subset sum)";
  v.require(v45.is_practical && listed, "45 phi-practical and reported by find_nonconstructible(phi, 100)" + why);
  v.require(is_lambda_practical(156) && !is_f_practical(156, cat::lambda()).is_practical,
            "156 lambda-practical (bounded multiplicities) but not lambda-star-practical");
}

void criterion4(Verdict& v) {
  constexpr u64 kLimit = 10000;
  const oracle::Tables t(kLimit);
  struct Case {
    FunctionSpec f;
    std::function<u64(u64)> value;
  };
  const std::vector<Case> cases{{cat::identity(), [](u64 d) { return d; }},
                                {cat::phi(), [&](u64 d) { return t.phi[d]; }},
                                {cat::phi_star(), [](u64 d) { return oracle::phi_star(d); }},
                                {cat::lambda(), [&](u64 d) { return t.lambda[d]; }},
                                {cat::tau(), [](u64 d) { return oracle::tau(d); }}};
  for (const auto& c : cases) {
    u64 disagreements = 0, first = 0;
    for (u64 n = 1; n <= kLimit; ++n) {
      if (is_f_practical(n, c.f).is_practical != oracle::practical(n, c.value)) {
        if (!disagreements) first = n;
        ++disagreements;
      }
    }
    v.require(disagreements == 0, c.f.name + ": " + std::to_string(disagreements) + " disagreements for n <= 10^4" +
                                      (disagreements ? " (first " + std::to_string(first) + ")" : ""));
  }
}

void run_suites(Verdict& v, const std::vector<std::pair<const char*, u64>>& list) {
  for (const auto& [name, bound] : list) {
    const auto r = run_suite(name, bound);
    v.require(r.passed, std::string(name) + " up to " + std::to_string(bound) +
                            (r.counterexample ? ", counterexample " + std::to_string(*r.counterexample) : ""));
  }
}

void criterion5(Verdict& v) {
  run_suites(v, {{"fpractical-implies-weak", 100000},
                 {"identity-weak-equivalence", 100000},
                 {"squarefree-weak-equivalence", 100000},
                 {"even-weak-phi-star-is-practical", 100000},
                 {"squarefree-phi-star-equals-phi", 100000},
                 {"lambda-star-subset-lambda", 10000},
                 {"weak-lambda-implies-weak-phi", 100000}});
}

void criterion6(Verdict& v) {
  run_suites(v, {{"universality", 100000}, {"fn-membership", 100000}});
  const SpfSieve sieve(100000);
  const auto a1 = count_practicals(cat::a1(), sieve, {100000});
  v.require(a1.checkpoints[0].count == 1, "a1-practical count at 10^5 is " + std::to_string(a1.checkpoints[0].count));
}

void criterion7(Verdict& v) {
  const SpfSieve sieve(1'000'000);
  for (u64 m : {2ull, 6ull, 30ull}) {
    const auto d = density_estimate(cat::fn(m), sieve, 1'000'000);
    const double expect = 1.0 - static_cast<double>(oracle::phi(m)) / static_cast<double>(m);
    const double err = std::abs(d.empirical - expect);
    v.require(err < 1e-3, "f_" + std::to_string(m) + " density at 10^6 off by " + std::to_string(err));
  }
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto hit = density_target(alpha, 1e-2, 1'000'000'000);
    std::ostringstream what;
    what << "density_target(" << alpha << ", 0.01) within 10^9: ";
    if (hit) {
      const double d = 1.0 - static_cast<double>(oracle::phi(hit->n)) / static_cast<double>(hit->n);
      what << "n=" << hit->n << ", 1-phi(n)/n=" << d;
      v.require(std::abs(d - alpha) < 1e-2, what.str());
    } else {
      what << "no such n";
      v.require(false, what.str());
    }
  }
}

void criterion8(Verdict& v) {
  run_suites(v, {{"s-product-identity", 1000}, {"s-composite-lower-bound", 100000}});
  const SpfSieve sieve(100000);
  const auto trend = s_density_trend(sieve, {100, 1000, 10000, 100000});
  bool decreasing = true;
  std::ostringstream what;
  what << "s-practical count/X:";
  for (std::size_t i = 0; i < trend.size(); ++i) {
    what << " " << trend[i].ratio;
    if (i && !(trend[i].ratio < trend[i - 1].ratio)) decreasing = false;
  }
  v.require(decreasing, what.str() + " strictly decreasing");
}

void criterion9(Verdict& v) {
  const auto& r = lambda_star_to_1e7();
  std::ostringstream what;
  what << "lambda-star ratios over 1..10 x 10^6:";
  bool decreasing = true;
  double prev = INFINITY;
  for (u64 x = 1'000'000; x <= 10'000'000; x += 1'000'000) {
    const auto& c = row(r, x);
    what << " " << c.ratio_text();
    if (!(c.ratio() < prev)) decreasing = false;
    prev = c.ratio();
  }
  v.require(decreasing, what.str() + " strictly decreasing");
}

const std::map<int, std::pair<const char*, void (*)(Verdict&)>> kCriteria{
    {1, {"lambda-star census at decades", criterion1}},
    {2, {"lambda-star census at millions", criterion2}},
    {3, {"counterexample fixtures 75, 45, 156", criterion3}},
    {4, {"decision agrees with subset-sum oracle", criterion4}},
    {5, {"implication suites", criterion5}},
    {6, {"universality suites", criterion6}},
    {7, {"densities and density targets", criterion7}},
    {8, {"s-function properties", criterion8}},
    {9, {"lambda-star ratio trend", criterion9}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty())
    for (const auto& [id, _] : kCriteria) selected.push_back(id);

  bool all = true;
  for (int id : selected) {
    const auto it = kCriteria.find(id);
    if (it == kCriteria.end()) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      it->second.second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", since(t0));
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << it->second.first << " (" << secs
              << " s)\n"
              << v.detail.str();
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
