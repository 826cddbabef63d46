#include "samplan/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace samplan {
namespace {

constexpr std::int64_t kLotSearchLimit = std::int64_t{1} << 31;
constexpr int kMaxBisections = 200;
constexpr double kRootTolerance = 1e-10;

// Smallest x in [lo, hi] with pred(x); pred is false...true and pred(hi) holds.
template <class Pred>
std::int64_t first_true(std::int64_t lo, std::int64_t hi, Pred&& pred) {
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

// Largest x in [lo, hi] with pred(x); pred is true...false and pred(lo) holds.
template <class Pred>
std::int64_t last_true(std::int64_t lo, std::int64_t hi, Pred&& pred) {
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

// pred(start) is false; doubling probe for the first true beyond start.
template <class Pred>
std::optional<std::int64_t> first_true_after(std::int64_t start, std::int64_t limit, Pred&& pred) {
  std::int64_t prev = start;
  std::int64_t probe = std::min(limit, std::max(start + 1, start * 2));
  while (!pred(probe)) {
    if (probe >= limit) return std::nullopt;
    prev = probe;
    probe = std::min(limit, probe * 2);
  }
  return first_true(prev + 1, probe, pred);
}

// pred(start) is true; doubling probe for the last true. Empty when pred
// still holds at the limit.
template <class Pred>
std::optional<std::int64_t> last_true_from(std::int64_t start, std::int64_t limit, Pred&& pred) {
  std::int64_t prev = start;
  std::int64_t probe = std::min(limit, std::max(start + 1, start * 2));
  while (pred(probe)) {
    if (probe >= limit) return std::nullopt;
    prev = probe;
    probe = std::min(limit, probe * 2);
  }
  return last_true(prev, probe - 1, pred);
}

template <class Admissible>
SampleSearch minimize_sample(std::int64_t lo, std::int64_t hi, std::int64_t c, bool finite_lot,
                             Admissible&& admissible) {
  SampleSearch result;
  if (lo > hi || !admissible(hi)) return result;
  const std::int64_t n = first_true(lo, hi, admissible);
  if (n > lo && admissible(n - 1))
    throw NumericalError("minimality certificate failed at n=" + std::to_string(n - 1));
  result.status = finite_lot && n == hi ? SearchStatus::FullInspectionOnly : SearchStatus::Found;
  result.plan = SamplingPlan(n, c);
  return result;
}

SampleSearch finite_lot_search(std::int64_t lot_size, std::int64_t c, const TwoPointCriterion& crit,
                               AdmissibilityVerdict (*predicate)(std::int64_t, const SamplingPlan&,
                                                                 const TwoPointCriterion&)) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  if (c < 0) throw DomainError("acceptance number must be non-negative");
  const std::int64_t bound = lot_size_lower_bound(c, crit);
  if (lot_size < bound) {
    SampleSearch result;
    result.status = SearchStatus::StructurallyInadmissible;
    result.lot_bound = bound;
    return result;
  }
  auto admissible = [&](std::int64_t n) { return predicate(lot_size, SamplingPlan(n, c), crit).admissible; };
  return minimize_sample(std::max<std::int64_t>(c, 1), lot_size, c, true, admissible);
}

class LotConditions {
 public:
  LotConditions(const SamplingPlan& plan, const TwoPointCriterion& crit)
      : plan_(plan), crit_(crit), bound_(lot_size_lower_bound(plan.c(), crit)) {}

  std::int64_t bound() const noexcept { return bound_; }

  bool aql(std::int64_t lot_size) const {
    if (lot_size < bound_) return false;
    return hypergeom_oc_extended(crit_.aql_quality() * static_cast<double>(lot_size), lot_size, plan_) <
           crit_.aql_bound();
  }
  bool lq(std::int64_t lot_size) const {
    return hypergeom_oc_extended(crit_.lq_quality() * static_cast<double>(lot_size), lot_size, plan_) <
           crit_.lq_bound();
  }
  bool both(std::int64_t lot_size) const { return aql(lot_size) && lq(lot_size); }

 private:
  SamplingPlan plan_;
  TwoPointCriterion crit_;
  std::int64_t bound_;
};

RiskSummary risk_at(const SamplingPlan& plan, std::optional<std::int64_t> lot_size, const TwoPointCriterion& crit) {
  if (lot_size) return risk_summary(plan, OcModel::hypergeometric_extended(*lot_size), crit);
  return risk_summary(plan, OcModel::binomial(), crit);
}

}  // namespace

std::string_view to_string(SearchStatus status) noexcept {
  switch (status) {
    case SearchStatus::Found: return "found";
    case SearchStatus::FullInspectionOnly: return "full-inspection";
    case SearchStatus::NoSolution: return "no-solution";
    case SearchStatus::StructurallyInadmissible: return "structural";
  }
  return "no-solution";
}

SampleSearch min_sample_binomial(std::int64_t c, const TwoPointCriterion& crit, std::int64_t ceiling) {
  if (c < 0) throw DomainError("acceptance number must be non-negative");
  auto admissible = [&](std::int64_t n) { return admissible_binomial(SamplingPlan(n, c), crit).admissible; };
  return minimize_sample(std::max<std::int64_t>(c, 1), ceiling, c, false, admissible);
}

SampleSearch min_sample_poisson(std::int64_t c, const TwoPointCriterion& crit, std::int64_t ceiling) {
  if (c < 0) throw DomainError("acceptance number must be non-negative");
  auto admissible = [&](std::int64_t n) {
    const SamplingPlan plan(n, c);
    return judge(poisson_oc(crit.aql_quality(), plan), poisson_oc(crit.lq_quality(), plan), crit).admissible;
  };
  return minimize_sample(std::max<std::int64_t>(c, 1), ceiling, c, false, admissible);
}

SampleSearch min_sample_extended(std::int64_t lot_size, std::int64_t c, const TwoPointCriterion& crit) {
  return finite_lot_search(lot_size, c, crit, &admissible_extended);
}

SampleSearch min_sample_discrete(std::int64_t lot_size, std::int64_t c, const TwoPointCriterion& crit) {
  return finite_lot_search(lot_size, c, crit, &admissible_discrete);
}

std::optional<LotInterval> lot_interval(const SamplingPlan& plan, const TwoPointCriterion& crit) {
  const LotConditions cond(plan, crit);
  const std::int64_t lo = std::max(plan.n(), cond.bound());
  const auto limit = admissible_binomial(plan, crit);
  const bool limit_aql = limit.oc_at_a < crit.aql_bound();
  const bool limit_lq = limit.oc_at_b < crit.lq_bound();
  auto aql = [&](std::int64_t lot) { return cond.aql(lot); };
  auto lq = [&](std::int64_t lot) { return cond.lq(lot); };

  // MID_b holds on [lo, upper]; the binomial limit decides whether upper is finite.
  if (!lq(lo)) return std::nullopt;
  std::optional<std::int64_t> upper;
  if (!limit_lq) {
    upper = last_true_from(lo, kLotSearchLimit, lq);
    if (!upper) throw NumericalError("LQ condition holds beyond the lot search limit");
  }

  std::int64_t from = lo;
  if (aql(lo)) {
    if (!limit_aql) {
      const auto aql_end = last_true_from(lo, kLotSearchLimit, aql);
      if (!aql_end) throw NumericalError("AQL condition holds beyond the lot search limit");
      upper = upper ? std::min(*upper, *aql_end) : *aql_end;
    }
  } else {
    if (!limit_aql) return std::nullopt;
    const auto first = first_true_after(lo, upper.value_or(kLotSearchLimit), aql);
    if (!first) return std::nullopt;
    from = *first;
  }
  if (upper && from > *upper) return std::nullopt;

  if (!cond.both(from) || (from > lo && cond.both(from - 1)))
    throw NumericalError("lot interval lower end failed its certificate for " + to_string(plan));
  if (upper && (!cond.both(*upper) || cond.both(*upper + 1)))
    throw NumericalError("lot interval upper end failed its certificate for " + to_string(plan));

  return LotInterval{plan.n(), plan.c(), from, upper};
}

std::optional<double> quality_at_probability(const SamplingPlan& plan, double target, const OcModel& model) {
  if (!(target > 0.0 && target < 1.0)) return std::nullopt;
  auto oc = [&](double q) { return model.evaluate_continuous(q, plan); };
  if (!(oc(1.0) < target && target < oc(0.0))) return std::nullopt;

  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double value = oc(mid);
    if (value > target) {
      lo = mid;
    } else if (value < target) {
      hi = mid;
    } else {
      return mid;
    }
  }
  const double err_lo = std::fabs(oc(lo) - target);
  const double err_hi = std::fabs(oc(hi) - target);
  const double root = err_lo <= err_hi ? lo : hi;
  if (std::min(err_lo, err_hi) > kRootTolerance) return std::nullopt;
  return root;
}

RiskSummary risk_summary(const SamplingPlan& plan, const OcModel& model, const TwoPointCriterion& crit) {
  RiskSummary risk;
  risk.alpha = 1.0 - model.evaluate_continuous(crit.aql_quality(), plan);
  risk.beta = model.evaluate_continuous(crit.lq_quality(), plan);
  risk.q_a = quality_at_probability(plan, crit.aql_bound(), model);
  risk.q_b = quality_at_probability(plan, crit.lq_bound(), model);
  if (const auto lot = model.lot_size()) {
    const double expected = crit.aql_quality() * static_cast<double>(*lot);
    const auto snapped = detail::snap_to_integer(expected);
    risk.alpha_operational = snapped ? *snapped >= 1 : expected >= 1.0;
  }
  return risk;
}

std::vector<IntervalTableRow> interval_table(std::int64_t c, const TwoPointCriterion& crit,
                                             std::optional<std::int64_t> n_max) {
  if (c < 0) throw DomainError("acceptance number must be non-negative");
  std::vector<IntervalTableRow> rows;
  const auto limit = min_sample_binomial(c, crit);
  if (!limit.plan) return rows;
  const std::int64_t last_n = n_max.value_or(2 * limit.plan->n());

  auto make_row = [&](std::int64_t n, std::int64_t from, std::optional<std::int64_t> to) {
    const SamplingPlan plan(n, c);
    return IntervalTableRow{LotInterval{n, c, from, to}, risk_at(plan, from, crit), risk_at(plan, to, crit)};
  };

  if (c >= 1) {
    for (std::int64_t n = std::max<std::int64_t>(c, 1); n <= last_n; ++n) {
      const auto iv = lot_interval(SamplingPlan(n, c), crit);
      if (iv) rows.push_back(make_row(n, iv->lot_from, iv->lot_to));
    }
    return rows;
  }

  // c = 0: the LQ end of each sample size bounds a lot range whose minimum is n.
  auto minimum_at = [&](std::int64_t lot) -> std::int64_t {
    const auto found = min_sample_extended(lot, 0, crit);
    return found.plan ? found.plan->n() : -1;
  };
  std::int64_t first_n = 1;
  for (;; ++first_n) {
    if (first_n > limit.plan->n()) return rows;
    const auto iv = lot_interval(SamplingPlan(first_n, 0), crit);
    if (iv && (iv->unbounded() || *iv->lot_to > first_n)) break;
  }
  std::int64_t from = first_n;
  while (minimum_at(from) != first_n) ++from;

  for (std::int64_t n = first_n; n <= last_n; ++n) {
    const auto iv = lot_interval(SamplingPlan(n, 0), crit);
    if (!iv || (iv->lot_to && *iv->lot_to < from)) continue;
    if (minimum_at(from) != n || (iv->lot_to && minimum_at(*iv->lot_to) != n))
      throw NumericalError("zero-acceptance lot range is not contiguous at n=" + std::to_string(n));
    rows.push_back(make_row(n, from, iv->lot_to));
    if (iv->unbounded()) break;
    from = *iv->lot_to + 1;
  }
  return rows;
}

}  // namespace samplan
