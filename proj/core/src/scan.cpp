#include "fsq/scan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "fsq/checkpoint.hpp"
#include "fsq/errors.hpp"
#include "fsq/primality.hpp"
#include "fsq/serialize.hpp"

namespace fsq {

namespace {

using nlohmann::json;

struct WorkItem {
  std::uint64_t lo;
  std::uint64_t hi;
};

constexpr std::uint64_t kSquareDivisorWidth = 1000;
constexpr std::uint64_t kWilsonWidth = 2000;
constexpr std::uint64_t kBrocardWidth = 500;
constexpr std::size_t kBrocardFilterCount = 32;

std::vector<WorkItem> split(std::uint64_t lo, std::uint64_t hi, std::uint64_t width) {
  std::vector<WorkItem> items;
  for (std::uint64_t a = lo; a <= hi; a += width) {
    items.push_back({a, std::min(hi, a + width - 1)});
    if (hi - a < width) break;
  }
  return items;
}

struct RunOutcome {
  std::vector<std::optional<json>> results;
  bool complete = true;
  std::size_t resumed = 0;
};

// Runs `compute` over every item not already in the checkpoint, on a pool
// of options.workers threads pulling items in ascending order. Results come
// back indexed by item, so the merge is independent of scheduling.
template <class Compute>
RunOutcome run_items(std::string_view kind, const json& params, const std::vector<WorkItem>& items,
                     const ScanOptions& options, Compute&& compute) {
  RunOutcome out;
  out.results.resize(items.size());

  std::optional<CheckpointLog> log;
  if (options.checkpoint) log.emplace(*options.checkpoint, std::string(kind), params);

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (log) {
      if (const auto* record = log->find(items[i].lo, items[i].hi)) {
        out.results[i] = record->results;
        ++out.resumed;
        continue;
      }
    }
    pending.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mutex;
  std::exception_ptr error;
  std::size_t done = out.resumed;

  auto worker = [&] {
    for (;;) {
      if (failed.load() || (options.should_stop && options.should_stop())) return;
      const std::size_t k = next.fetch_add(1);
      if (k >= pending.size()) return;
      const std::size_t index = pending[k];
      try {
        json result = compute(items[index]);
        if (log) log->append({std::string(kind), params, items[index].lo, items[index].hi, result});
        std::lock_guard lock(mutex);
        out.results[index] = std::move(result);
        ++done;
        if (options.progress) options.progress({kind, done, items.size(), out.resumed});
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const auto workers = static_cast<std::size_t>(std::max(1u, options.workers));
  const std::size_t threads = std::min(workers, pending.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  out.complete = std::all_of(out.results.begin(), out.results.end(),
                             [](const auto& r) { return r.has_value(); });
  return out;
}

ScanResult collect_hits(const RunOutcome& run) {
  ScanResult result;
  result.complete = run.complete;
  result.items_total = run.results.size();
  result.items_resumed = run.resumed;
  for (const auto& r : run.results) {
    if (!r) continue;
    for (const auto& h : *r) result.hits.push_back(scan_hit_from_json(h));
  }
  std::sort(result.hits.begin(), result.hits.end());
  return result;
}

std::vector<std::uint64_t> primes_in(const std::vector<std::uint64_t>& primes, WorkItem item) {
  auto first = std::lower_bound(primes.begin(), primes.end(), item.lo);
  auto last = std::upper_bound(primes.begin(), primes.end(), item.hi);
  return {first, last};
}

void check_prime_bound(std::uint64_t p_max) {
  if (p_max > kMaxScanPrime) {
    throw LimitExceeded("p_max " + std::to_string(p_max) + " exceeds the word-size limit " +
                        std::to_string(kMaxScanPrime));
  }
}

// Largest primes below 2^62; n! is a unit modulo each for any feasible n.
const std::vector<std::uint64_t>& brocard_filter_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = (std::uint64_t{1} << 62) - 1; out.size() < kBrocardFilterCount; q -= 2) {
      if (is_prime_small(q).prime_like()) out.push_back(q);
    }
    return out;
  }();
  return primes;
}

json brocard_item(WorkItem item, std::uint64_t factorial_limit) {
  const auto& filters = brocard_filter_primes();
  Natural acc = factorial(item.lo - 1, factorial_limit);
  std::vector<std::uint64_t> residues(filters.size());
  for (std::size_t i = 0; i < filters.size(); ++i) residues[i] = mpz_fdiv_ui(acc.get_mpz_t(), filters[i]);

  json hits = json::array();
  for (std::uint64_t n = item.lo; n <= item.hi; ++n) {
    acc *= to_natural(n);
    bool maybe_square = true;
    for (std::size_t i = 0; i < filters.size(); ++i) {
      residues[i] = mulmod(residues[i], n, filters[i]);
      // A non-residue modulo any prime rules out a square.
      if (maybe_square && jacobi(residues[i] + 1, filters[i]) == -1) maybe_square = false;
    }
    if (!maybe_square) continue;
    if (auto root = is_perfect_square(acc + 1)) {
      hits.push_back(to_json(ScanHit{n, 0, HitKind::Brocard, std::move(root)}));
    }
  }
  return hits;
}

constexpr std::array<ReferenceRow, 40> kReferenceTable = {{
    {1, 2, 2},    {2, 2, 2},    {3, 2, 2},    {4, 3, 2},     {5, 3, 2},    {6, 4, 4},    {7, 3, 2},
    {8, 4, 4},    {9, 8, 8},    {10, 4, 4},   {11, 2, 2},    {12, 6, 4},   {13, 4, 4},   {14, 4, 4},
    {15, 8, 8},   {16, 4, 4},   {17, 2, 2},   {18, 6, 4},    {19, 4, 4},   {20, 4, 4},   {21, 8, 8},
    {22, 8, 8},   {23, 12, 8},  {24, 4, 4},   {25, 4, 4},    {26, 4, 4},   {27, 2, 2},   {28, 4, 4},
    {29, 8, 8},   {30, 32, 32}, {31, 16, 16}, {32, 16, 16},  {33, 32, 32}, {34, 4, 4},   {35, 32, 32},
    {36, 64, 64}, {37, 2, 2},   {38, 4, 4},   {39, 16, 16},  {40, 128, 128},
}};

json factorize_params(const FactorizeOptions& options) {
  return {{"budget_ms", options.budget.wall_clock.count()},
          {"rho_iteration_cap", options.budget.rho_iteration_cap},
          {"seed", options.seed},
          {"trial_bound", options.trial_bound}};
}

}  // namespace

ScanResult scan_square_divisors(std::uint64_t n_max, std::uint64_t p_max, const ScanOptions& options) {
  if (n_max < 1) throw std::invalid_argument("scan_square_divisors: n_max must be >= 1");
  if (p_max < 2) throw std::invalid_argument("scan_square_divisors: p_max must be >= 2");
  check_prime_bound(p_max);
  const auto primes = sieve_primes(p_max);
  const json params = {{"n_max", n_max}, {"p_max", p_max}};

  auto run = run_items("square-divisors", params, split(2, p_max, kSquareDivisorWidth), options,
                       [&](WorkItem item) {
                         json hits = json::array();
                         for (std::uint64_t p : primes_in(primes, item)) {
                           const std::uint64_t modulus = p * p;
                           WordFactorialStream stream(modulus);
                           const std::uint64_t last = std::min(n_max, p - 1);
                           for (std::uint64_t n = 1; n <= last; ++n) {
                             stream.advance();
                             if (stream.residue() == modulus - 1) {
                               hits.push_back(to_json(ScanHit{n, p, HitKind::SquareDivisor, {}}));
                             }
                           }
                         }
                         return hits;
                       });
  return collect_hits(run);
}

ScanResult scan_wilson(std::uint64_t p_max, const ScanOptions& options) {
  if (p_max < 2) throw std::invalid_argument("scan_wilson: p_max must be >= 2");
  check_prime_bound(p_max);
  const auto primes = sieve_primes(p_max);
  const json params = {{"p_max", p_max}};

  auto run = run_items("wilson", params, split(2, p_max, kWilsonWidth), options, [&](WorkItem item) {
    json hits = json::array();
    for (std::uint64_t p : primes_in(primes, item)) {
      const std::uint64_t modulus = p * p;
      WordFactorialStream stream(modulus);
      while (stream.index() < p - 1) stream.advance();
      if (stream.residue() == modulus - 1) {
        hits.push_back(to_json(ScanHit{p - 1, p, HitKind::Wilson, {}}));
      }
    }
    return hits;
  });
  return collect_hits(run);
}

ScanResult scan_brocard(std::uint64_t n_max, const ScanOptions& options, std::uint64_t factorial_limit) {
  if (n_max < 1) throw std::invalid_argument("scan_brocard: n_max must be >= 1");
  if (n_max > factorial_limit) {
    throw LimitExceeded("scan_brocard: n_max " + std::to_string(n_max) + " exceeds factorial limit " +
                        std::to_string(factorial_limit));
  }
  const json params = {{"n_max", n_max}};
  auto run = run_items("brocard", params, split(1, n_max, kBrocardWidth), options,
                       [&](WorkItem item) { return brocard_item(item, factorial_limit); });
  return collect_hits(run);
}

std::optional<ReferenceRow> reference_row(std::uint64_t n) {
  if (n < 1 || n > kReferenceTable.size()) return std::nullopt;
  return kReferenceTable[n - 1];
}

TableRow table_row(std::uint64_t n, const FactorizeOptions& options) {
  TableRow row;
  row.n = n;
  row.in_excluded_set = ExcludedSet::contains(n);
  row.factorization = factorize(factorial(n) + 1, options);
  row.status = row.factorization.status;
  row.probabilistic = row.factorization.probabilistic;
  if (row.factorization.complete()) {
    row.sigma0 = sigma0(row.factorization);
    row.two_pow_omega = two_pow_omega(row.factorization);
    if (auto ref = reference_row(n)) {
      row.matches_reference = *row.sigma0 == to_natural(ref->sigma0) &&
                              *row.two_pow_omega == to_natural(ref->two_pow_omega);
    }
  }
  return row;
}

TableResult build_table(std::uint64_t n_max, const FactorizeOptions& options, const ScanOptions& scan) {
  if (n_max < 1) throw std::invalid_argument("build_table: n_max must be >= 1");
  auto run = run_items("table", factorize_params(options), split(1, n_max, 1), scan,
                       [&](WorkItem item) { return json::array({to_json(table_row(item.lo, options))}); });
  TableResult result;
  result.complete = run.complete;
  result.items_resumed = run.resumed;
  for (const auto& r : run.results) {
    if (!r) continue;
    for (const auto& row : *r) result.rows.push_back(table_row_from_json(row));
  }
  return result;
}

Verdict verify_conjecture(std::uint64_t n, std::uint64_t p_max, const FactorizeOptions& options) {
  if (n < 1) throw std::invalid_argument("verify_conjecture: n must be >= 1");
  if (p_max < 2) throw std::invalid_argument("verify_conjecture: p_max must be >= 2");
  check_prime_bound(p_max);

  Verdict v;
  v.n = n;
  v.in_excluded_set = ExcludedSet::contains(n);

  // Only primes above n can divide n!+1.
  for (std::uint64_t p : sieve_primes(p_max)) {
    if (p <= n) continue;
    const std::uint64_t modulus = p * p;
    WordFactorialStream stream(modulus);
    while (stream.index() < n) stream.advance();
    if (stream.residue() == modulus - 1) {
      v.outcome = Squarefree::NotSquareFree;
      v.witness = to_natural(p);
      v.evidence = "residue-scan";
      v.consistent_with_conjecture = consistent_with_conjecture(n, v.outcome);
      return v;
    }
  }

  auto f = factorize(factorial(n) + 1, options);
  const auto status = squarefree_status(f);
  v.outcome = status.verdict;
  v.witness = status.witness;
  v.evidence = "factorization";
  v.factorization = std::move(f);
  v.consistent_with_conjecture = consistent_with_conjecture(n, v.outcome);
  return v;
}

}  // namespace fsq
