#include "samplan/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>
#include <vector>

#include "samplan/dist.hpp"

namespace samplan::oracle {

namespace {

void check_counts(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  if (defectives < 0 || defectives > lot_size) throw DomainError("defectives must lie in [0, N]");
  if (plan.n() > lot_size) throw DomainError("sample size exceeds lot size");
}

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;
  }
  return result;
}

// Falling factorial x (x-1) ... (x-k+1).
HighFloat falling(const HighFloat& x, std::int64_t k) {
  HighFloat result = 1;
  for (std::int64_t i = 0; i < k; ++i) result *= x - i;
  return result;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform integer in [0, range), Lemire's multiply-and-reject.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

constexpr std::int64_t kDenseLotLimit = std::int64_t{1} << 22;

// Items 0..M-1 of the implicit lot are defective. Each trial partially
// shuffles the first n positions; a shuffled permutation is as good a start
// as the identity, so the dense array is never reset.
std::int64_t run_shard(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan,
                       std::int64_t trials, std::uint64_t shard_seed) {
  std::mt19937_64 rng(shard_seed);
  const std::int64_t n = plan.n();
  const std::int64_t c = plan.c();
  std::int64_t accepted = 0;

  if (lot_size <= kDenseLotLimit) {
    std::vector<std::int64_t> lot(static_cast<std::size_t>(lot_size));
    for (std::int64_t i = 0; i < lot_size; ++i) lot[static_cast<std::size_t>(i)] = i;
    for (std::int64_t t = 0; t < trials; ++t) {
      std::int64_t found = 0;
      for (std::int64_t i = 0; i < n && found <= c; ++i) {
        const auto j = i + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(lot_size - i)));
        std::swap(lot[static_cast<std::size_t>(i)], lot[static_cast<std::size_t>(j)]);
        if (lot[static_cast<std::size_t>(i)] < defectives) ++found;
      }
      if (found <= c) ++accepted;
    }
    return accepted;
  }

  // Sparse index map: only displaced positions are stored, O(n) per trial.
  std::unordered_map<std::int64_t, std::int64_t> moved;
  moved.reserve(static_cast<std::size_t>(2 * n));
  const auto at = [&](std::int64_t k) {
    const auto it = moved.find(k);
    return it == moved.end() ? k : it->second;
  };
  for (std::int64_t t = 0; t < trials; ++t) {
    moved.clear();
    std::int64_t found = 0;
    for (std::int64_t i = 0; i < n && found <= c; ++i) {
      const auto j = i + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(lot_size - i)));
      const std::int64_t item = at(j);
      moved[j] = at(i);
      if (item < defectives) ++found;
    }
    if (found <= c) ++accepted;
  }
  return accepted;
}

}  // namespace

double ExactProbability::to_double() const { return static_cast<double>(to_high_float()); }

HighFloat ExactProbability::to_high_float() const {
  return HighFloat(numerator) / HighFloat(denominator);
}

std::string ExactProbability::to_string() const { return numerator.str() + "/" + denominator.str(); }

ExactProbability hypergeom_oc_rational(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan) {
  check_counts(defectives, lot_size, plan);
  if (lot_size > kRationalLotLimit)
    throw DomainError("rational evaluation limited to lots of " + std::to_string(kRationalLotLimit));
  const std::int64_t n = plan.n();
  const std::int64_t good = lot_size - defectives;
  const std::int64_t k_lo = std::max<std::int64_t>(0, n - good);
  const std::int64_t k_hi = std::min({plan.c(), defectives, n});

  BigInt sum = 0;
  if (k_lo <= k_hi) {
    // C(M,k) C(N-M,n-k), advanced by its exact integer ratio.
    BigInt term = binomial(defectives, k_lo) * binomial(good, n - k_lo);
    for (std::int64_t k = k_lo;; ++k) {
      sum += term;
      if (k == k_hi) break;
      term *= BigInt(defectives - k) * (n - k);
      term /= BigInt(k + 1) * (good - n + k + 1);
    }
  }
  ExactProbability result{sum, binomial(lot_size, n)};
  const BigInt g = boost::multiprecision::gcd(result.numerator, result.denominator);
  if (g > 1) {
    result.numerator /= g;
    result.denominator /= g;
  }
  return result;
}

HighFloat hypergeom_oc_extended_hp(const HighFloat& defectives, std::int64_t lot_size, const SamplingPlan& plan) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  if (defectives < 0 || defectives > lot_size) throw DomainError("defectives must lie in [0, N]");
  if (plan.n() > lot_size) throw DomainError("sample size exceeds lot size");
  const std::int64_t n = plan.n();
  const HighFloat good = HighFloat(lot_size) - defectives;

  // C(M,k) C(N-M,n-k) / C(N,n) = C(n,k) (M)_k (N-M)_(n-k) / (N)_n.
  const HighFloat total = falling(HighFloat(lot_size), n);
  HighFloat sum = 0;
  HighFloat choose = 1;  // C(n,k)
  for (std::int64_t k = 0; k <= plan.c(); ++k) {
    if (k > 0) choose = choose * (n - k + 1) / k;
    sum += choose * falling(defectives, k) * falling(good, n - k);
  }
  return sum / total;
}

HighFloat defectives_at(double quality, std::int64_t lot_size) {
  const double product = quality * static_cast<double>(lot_size);
  if (const auto snapped = detail::snap_to_integer(product)) return HighFloat(*snapped);
  return HighFloat(quality) * lot_size;
}

ExtendedAudit audit_extended(std::int64_t lot_size, const SamplingPlan& plan, const TwoPointCriterion& crit) {
  ExtendedAudit audit;
  const auto fast = admissible_extended(lot_size, plan, crit);
  audit.oc_at_a = hypergeom_oc_extended_hp(defectives_at(crit.aql_quality(), lot_size), lot_size, plan);
  audit.oc_at_b = hypergeom_oc_extended_hp(defectives_at(crit.lq_quality(), lot_size), lot_size, plan);
  audit.structural = lot_size < lot_size_lower_bound(plan.c(), crit);
  audit.admissible = !audit.structural && audit.oc_at_a < HighFloat(crit.aql_bound()) &&
                     audit.oc_at_b < HighFloat(crit.lq_bound());
  audit.agrees = audit.admissible == fast.admissible;
  return audit;
}

SimulationResult monte_carlo_oc(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan,
                                std::int64_t trials, std::uint64_t seed, unsigned workers) {
  check_counts(defectives, lot_size, plan);
  if (trials < 1) throw DomainError("trials must be positive");

  std::array<std::uint64_t, kShards> seeds{};
  std::uint64_t state = seed;
  for (auto& s : seeds) s = splitmix64(state);

  std::array<std::int64_t, kShards> accepted{};
  const auto shard_trials = [&](int s) { return trials / kShards + (s < trials % kShards ? 1 : 0); };
  const auto work = [&](unsigned first, unsigned stride) {
    for (unsigned s = first; s < static_cast<unsigned>(kShards); s += stride)
      accepted[s] = run_shard(defectives, lot_size, plan, shard_trials(static_cast<int>(s)), seeds[s]);
  };

  workers = std::clamp(workers, 1u, static_cast<unsigned>(kShards));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  SimulationResult result;
  result.trials = trials;
  for (const auto a : accepted) result.acceptances += a;
  result.estimate = static_cast<double>(result.acceptances) / static_cast<double>(trials);
  result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(trials));
  result.seed = seed;
  result.rng = std::string(kRngAlgorithm);
  return result;
}

}  // namespace samplan::oracle
