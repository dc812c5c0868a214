#pragma once

// Counting f-practical numbers up to X: chunked parallel enumeration over an
// SPF sieve, Chebyshev-type ratio tables, and density estimates.

#include <fprac/practicality.hpp>
#include <fprac/sieve.hpp>

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace fprac {

/// count * ln(x) / x, i.e. F(X) / (X / log X).
inline long double chebyshev_ratio(u64 count, u64 x) {
  return static_cast<long double>(count) * std::log(static_cast<long double>(x)) /
         static_cast<long double>(x);
}

/// Fixed 6-decimal rendering, ties to even.
inline std::string format_fixed6(long double value) {
  const long double scaled = std::nearbyint(value * 1'000'000.0L);  // FE_TONEAREST: ties to even
  const auto units = static_cast<long long>(scaled);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", units < 0 ? "-" : "", std::llabs(units) / 1'000'000,
                std::llabs(units) % 1'000'000);
  return buf;
}

inline std::string format_ratio(u64 count, u64 x) { return format_fixed6(chebyshev_ratio(count, x)); }

struct CensusCheckpoint {
  u64 x = 0;
  u64 count = 0;
  /// Wall time from the start of the run until every n <= x was decided.
  double seconds = 0;

  long double ratio() const { return chebyshev_ratio(count, x); }
  std::string ratio_text() const { return format_ratio(count, x); }
};

struct CensusReport {
  std::string function;
  std::vector<CensusCheckpoint> checkpoints;
};

struct CensusOptions {
  u64 chunk_size = u64{1} << 16;
  unsigned threads = 0;  ///< 0: hardware concurrency
  /// When set, every member n is written here, one per line, ascending.
  std::ostream* members = nullptr;
};

/// Membership test for is_f_practical with per-worker scratch buffers.
class FunctionMembership {
 public:
  explicit FunctionMembership(FunctionSpec f) : f_(std::make_shared<const FunctionSpec>(std::move(f))) {}

  bool operator()(const Factorization& fact) { return is_f_practical_fast(fact, *f_, scratch_); }
  const std::string& name() const { return f_->name; }

 private:
  std::shared_ptr<const FunctionSpec> f_;
  PracticalityScratch scratch_;
};

namespace detail {

struct ChunkResult {
  u64 count = 0;
  std::vector<u64> members;
  std::chrono::steady_clock::time_point done;
};

struct Chunk {
  u64 lo, hi;  // inclusive
};

inline std::vector<Chunk> make_chunks(u64 top, const std::vector<u64>& checkpoints, u64 chunk_size) {
  std::vector<Chunk> chunks;
  u64 lo = 1;
  std::size_t cp = 0;
  while (lo <= top) {
    u64 hi = std::min(top, lo + chunk_size - 1);
    while (cp < checkpoints.size() && checkpoints[cp] < lo) ++cp;
    if (cp < checkpoints.size()) hi = std::min(hi, checkpoints[cp]);
    chunks.push_back({lo, hi});
    lo = hi + 1;
  }
  return chunks;
}

}  // namespace detail

/// Counts n in [1, X] accepted by `membership` at every checkpoint X.
///
/// `membership` is copied once per worker and called as
/// bool(const Factorization&). The range is split into chunks (also cut at
/// every checkpoint); counts are merged in chunk order, so the report does
/// not depend on scheduling or chunk size.
template <class Membership>
CensusReport count_members(std::string name, const SpfSieve& sieve, std::vector<u64> checkpoints,
                           const Membership& membership, const CensusOptions& opts = {}) {
  if (checkpoints.empty()) throw std::invalid_argument("census: no checkpoints");
  if (opts.chunk_size == 0) throw std::invalid_argument("census: chunk size must be positive");
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() == 0) throw std::invalid_argument("census: checkpoints must be positive");
  const u64 top = checkpoints.back();
  if (top > sieve.limit())
    throw std::out_of_range("census: checkpoint " + std::to_string(top) + " beyond sieve limit " +
                            std::to_string(sieve.limit()));

  const auto chunks = detail::make_chunks(top, checkpoints, opts.chunk_size);
  std::vector<detail::ChunkResult> results(chunks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const bool keep_members = opts.members != nullptr;

  auto worker = [&] {
    Membership test = membership;
    Factorization fact;
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= chunks.size()) return;
      try {
        auto& res = results[idx];
        for (u64 n = chunks[idx].lo; n <= chunks[idx].hi; ++n) {
          sieve.factorize_into(n, fact);
          if (test(fact)) {
            ++res.count;
            if (keep_members) res.members.push_back(n);
          }
        }
        res.done = std::chrono::steady_clock::now();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks.size();
        return;
      }
    }
  };

  const auto start = std::chrono::steady_clock::now();
  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  CensusReport report;
  report.function = std::move(name);
  u64 running = 0;
  auto latest = start;
  std::size_t cp = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    running += results[i].count;
    latest = std::max(latest, results[i].done);
    if (keep_members)
      for (u64 m : results[i].members) *opts.members << m << '\n';
    if (cp < checkpoints.size() && chunks[i].hi == checkpoints[cp]) {
      report.checkpoints.push_back(
          {checkpoints[cp], running, std::chrono::duration<double>(latest - start).count()});
      ++cp;
    }
  }
  return report;
}

inline CensusReport count_practicals(const FunctionSpec& f, const SpfSieve& sieve, std::vector<u64> checkpoints,
                                     const CensusOptions& opts = {}) {
  return count_members(f.name, sieve, std::move(checkpoints), FunctionMembership(f), opts);
}

/// Membership test for the bounded-multiplicity lambda-practical definition.
inline CensusReport count_lambda_practicals(const SpfSieve& sieve, std::vector<u64> checkpoints,
                                            const CensusOptions& opts = {}) {
  return count_members("lambda-def53", sieve, std::move(checkpoints),
                       [](const Factorization& fact) { return is_lambda_practical(fact); }, opts);
}

// ---------------------------------------------------------------------------
// Densities

struct DensityEstimate {
  std::string function;
  u64 x = 0;
  u64 count = 0;
  double empirical = 0;
  /// 1 - phi(m)/m for the f_m family.
  std::optional<double> exact;
};

inline double fn_density(u64 m) {
  return 1.0 - static_cast<double>(totient(factorize(m))) / static_cast<double>(m);
}

inline DensityEstimate density_estimate(const FunctionSpec& f, const SpfSieve& sieve, u64 x,
                                        const CensusOptions& opts = {}) {
  const auto report = count_practicals(f, sieve, {x}, opts);
  DensityEstimate d;
  d.function = f.name;
  d.x = x;
  d.count = report.checkpoints.front().count;
  d.empirical = static_cast<double>(d.count) / static_cast<double>(x);
  if (f.name == "fn" && f.parameter) d.exact = fn_density(*f.parameter);
  return d;
}

inline constexpr u64 kDensitySearchCap = 1'000'000'000'000'000ull;

struct DensityTarget {
  u64 n = 1;
  double density = 0;  ///< 1 - phi(n)/n
};

/// Smallest n <= search_bound with |1 - phi(n)/n - alpha| < epsilon, or
/// nullopt when none exists within the bound.
///
/// phi(n)/n depends only on the set of primes dividing n, so the answer is
/// squarefree. Depth-first search over ascending prime sets with two cuts:
/// the product must stay below the best answer so far, and the value must
/// still be able to reach the window using the next primes in order.
inline std::optional<DensityTarget> density_target(double alpha, double epsilon, u64 search_bound) {
  if (!(epsilon > 0)) throw std::invalid_argument("density_target: epsilon must be positive");
  if (!(alpha >= 0 && alpha <= 1)) throw std::invalid_argument("density_target: alpha must lie in [0, 1]");
  if (search_bound == 0) throw std::invalid_argument("density_target: search bound must be positive");

  using real = long double;
  // Target window for x = phi(n)/n.
  const real lo = 1.0L - alpha - epsilon;
  const real hi = 1.0L - alpha + epsilon;
  auto in_window = [&](real x) { return x > lo && x < hi; };

  if (search_bound > kDensitySearchCap)
    throw std::invalid_argument("density_target: search bound above " + std::to_string(kDensitySearchCap));
  auto root = static_cast<u64>(std::sqrt(static_cast<long double>(search_bound)));
  while (root * root > search_bound) --root;
  while ((root + 1) * (root + 1) <= search_bound) ++root;
  // Every prime of n except possibly the largest is at most sqrt(bound).
  const std::vector<u64> primes = primes_up_to(std::max<u64>(root, 2));

  u64 best = 0;  // 0: none yet
  auto budget = [&](u64 product) {
    const u64 cap = best ? std::min(best - 1, search_bound) : search_bound;
    return cap / product;
  };

  // Smallest value phi/n reachable from x by multiplying distinct primes from
  // index i on with product <= room: taking the next primes in order is optimal.
  auto floor_value = [&](std::size_t i, real x, u64 room) {
    for (; i < primes.size() && primes[i] <= room; ++i) {
      x *= 1.0L - 1.0L / primes[i];
      room /= primes[i];
    }
    // At most one more prime beyond the table can fit.
    if (i == primes.size() && room > primes.back()) x *= 1.0L - 1.0L / (primes.back() + 1);
    return x;
  };

  auto search = [&](auto&& self, std::size_t i, u64 product, real x) -> void {
    if (in_window(x)) {
      if (!best || product < best) best = product;
      return;
    }
    if (x <= lo) return;
    const u64 room = budget(product);
    if (room < 2) return;
    // Closing with a single prime q: need lo < x (1 - 1/q) < hi.
    {
      const real q_lo = 1.0L / (1.0L - lo / x);  // q must exceed this
      const u64 start_from = i < primes.size() ? primes[i] : (primes.empty() ? 2 : primes.back() + 1);
      if (q_lo < static_cast<real>(room)) {
        u64 q = std::max<u64>(start_from, static_cast<u64>(std::floor(q_lo)) + 1);
        if (q <= room) q = next_prime(q);
        if (q <= room && in_window(x * (1.0L - 1.0L / q))) {
          const u64 cand = product * q;
          if (!best || cand < best) best = cand;
        }
      }
    }
    for (std::size_t j = i; j < primes.size(); ++j) {
      const u64 p = primes[j];
      const u64 r = budget(product);
      if (p > r || p * p > r) break;  // another prime after p must still fit
      const real nx = x * (1.0L - 1.0L / p);
      if (nx <= lo) continue;  // larger p shrinks x less
      if (in_window(nx)) continue;  // already covered by the closing step
      if (floor_value(j + 1, nx, r / p) >= hi) break;  // larger p cannot go lower
      self(self, j + 1, product * p, nx);
    }
  };

  search(search, 0, 1, 1.0L);
  if (!best) return std::nullopt;
  return DensityTarget{best, fn_density(best)};
}

struct TrendPoint {
  u64 x = 0;
  u64 count = 0;
  double ratio = 0;  ///< count / x
};

/// Counts of s-practical numbers (s = sigma - id) at each checkpoint.
inline std::vector<TrendPoint> s_density_trend(const SpfSieve& sieve, std::vector<u64> checkpoints,
                                               const CensusOptions& opts = {}) {
  const auto report = count_practicals(catalog::s(), sieve, std::move(checkpoints), opts);
  std::vector<TrendPoint> out;
  for (const auto& c : report.checkpoints)
    out.push_back({c.x, c.count, static_cast<double>(c.count) / static_cast<double>(c.x)});
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline void write_csv(const CensusReport& r, std::ostream& os) {
  os << "X,count,ratio\n";
  for (const auto& c : r.checkpoints) os << c.x << ',' << c.count << ',' << c.ratio_text() << '\n';
}

inline nlohmann::json to_json(const CensusReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : r.checkpoints)
    rows.push_back({{"X", c.x}, {"count", c.count}, {"ratio", c.ratio_text()}, {"seconds", c.seconds}});
  return {{"function", r.function}, {"checkpoints", rows}};
}

inline void write_text(const CensusReport& r, std::ostream& os) {
  char line[128];
  std::snprintf(line, sizeof line, "%-14s %12s %10s %10s\n", "X", "count", "ratio", "seconds");
  os << "census of " << r.function << "-practical numbers\n" << line;
  for (const auto& c : r.checkpoints) {
    std::snprintf(line, sizeof line, "%-14llu %12llu %10s %10.3f\n", static_cast<unsigned long long>(c.x),
                  static_cast<unsigned long long>(c.count), c.ratio_text().c_str(), c.seconds);
    os << line;
  }
}

// ---------------------------------------------------------------------------
// Reference tables for lambda (distinct-divisor definition)

struct GoldenRow {
  u64 x;
  u64 count;
  const char* ratio;
};

namespace golden {

inline const std::vector<GoldenRow>& lambda_star_decades() {
  static const std::vector<GoldenRow> rows{
      {10, 6, "1.381551"},           {100, 28, "1.289448"},         {1000, 164, "1.132872"},
      {10000, 1015, "0.934850"},     {100000, 7128, "0.820641"},    {1000000, 52326, "0.722910"},
      {10000000, 409714, "0.660381"},
  };
  return rows;
}

inline const std::vector<GoldenRow>& lambda_star_millions() {
  static const std::vector<GoldenRow> rows{
      {1000000, 52326, "0.722910"},  {2000000, 96667, "0.701254"},  {3000000, 139139, "0.691712"},
      {4000000, 179854, "0.683526"}, {5000000, 219598, "0.677458"}, {6000000, 258656, "0.672819"},
      {7000000, 297202, "0.669189"}, {8000000, 335181, "0.665961"}, {9000000, 372779, "0.663246"},
      {10000000, 409714, "0.660381"},
  };
  return rows;
}

}  // namespace golden

struct GoldenMismatch {
  u64 x;
  u64 expected_count, actual_count;
  std::string expected_ratio, actual_ratio;
};

/// Compares the report rows whose X appears in `table`. Returns mismatches and
/// the number of rows compared.
inline std::pair<std::vector<GoldenMismatch>, std::size_t> compare_golden(const CensusReport& r,
                                                                          const std::vector<GoldenRow>& table) {
  std::vector<GoldenMismatch> bad;
  std::size_t compared = 0;
  for (const auto& c : r.checkpoints) {
    for (const auto& g : table) {
      if (g.x != c.x) continue;
      ++compared;
      if (g.count != c.count || c.ratio_text() != g.ratio)
        bad.push_back({c.x, g.count, c.count, g.ratio, c.ratio_text()});
    }
  }
  return {bad, compared};
}

}  // namespace fprac
