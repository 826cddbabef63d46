#pragma once

// Sample-size minimization, admissible lot-size intervals, risks and
// risk-quality roots.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "samplan/criteria.hpp"
#include "samplan/dist.hpp"
#include "samplan/plan.hpp"

namespace samplan {

inline constexpr std::int64_t kDefaultSampleCeiling = 1'000'000;

enum class SearchStatus {
  Found,                     // a plan with n < N (or any n for infinite lots)
  FullInspectionOnly,        // only n = N passes: inspect the whole lot
  NoSolution,                // not even n = N (or n = ceiling) passes
  StructurallyInadmissible,  // N below the lot-size bound for this c
};

std::string_view to_string(SearchStatus status) noexcept;

struct SampleSearch {
  SearchStatus status = SearchStatus::NoSolution;
  std::optional<SamplingPlan> plan;
  /// Lot-size bound that excluded N, set for StructurallyInadmissible.
  std::optional<std::int64_t> lot_bound;

  bool has_plan() const noexcept { return plan.has_value(); }
};

SampleSearch min_sample_binomial(std::int64_t acceptance_number,
                                 const TwoPointCriterion& crit = TwoPointCriterion::mid(),
                                 std::int64_t ceiling = kDefaultSampleCeiling);

SampleSearch min_sample_poisson(std::int64_t acceptance_number,
                                const TwoPointCriterion& crit = TwoPointCriterion::mid(),
                                std::int64_t ceiling = kDefaultSampleCeiling);

SampleSearch min_sample_extended(std::int64_t lot_size, std::int64_t acceptance_number,
                                 const TwoPointCriterion& crit = TwoPointCriterion::mid());

SampleSearch min_sample_discrete(std::int64_t lot_size, std::int64_t acceptance_number,
                                 const TwoPointCriterion& crit = TwoPointCriterion::mid());

/// Lot sizes [N_a, N_b] for which a plan passes the extended criterion.
struct LotInterval {
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::int64_t lot_from = 0;               // N_a
  std::optional<std::int64_t> lot_to;      // N_b; empty means unbounded

  bool unbounded() const noexcept { return !lot_to.has_value(); }
  bool contains(std::int64_t lot_size) const noexcept {
    return lot_size >= lot_from && (!lot_to || lot_size <= *lot_to);
  }
  friend bool operator==(const LotInterval&, const LotInterval&) = default;
};

/// Empty optional when no lot size admits the plan.
std::optional<LotInterval> lot_interval(const SamplingPlan& plan,
                                        const TwoPointCriterion& crit = TwoPointCriterion::mid());

struct RiskSummary {
  double alpha = 0.0;  // producer's risk 1 - OC(p_a)
  double beta = 0.0;   // consumer's risk OC(p_b)
  std::optional<double> q_a;  // OC(q_a) = P_a
  std::optional<double> q_b;  // OC(q_b) = P_b
  /// False for finite lots with N p_a < 1, where no lot sits exactly at p_a.
  bool alpha_operational = true;
};

/// Finite-lot models are evaluated through the gamma extension.
RiskSummary risk_summary(const SamplingPlan& plan, const OcModel& model,
                         const TwoPointCriterion& crit = TwoPointCriterion::mid());

/// Quality level q with OC(q) = target, by bisection on [0,1]; empty when
/// target is not strictly between OC(1) and OC(0).
std::optional<double> quality_at_probability(const SamplingPlan& plan, double target, const OcModel& model);

struct IntervalTableRow {
  LotInterval interval;
  RiskSummary at_from;
  RiskSummary at_to;  // binomial limit when the interval is unbounded
};

/// One row per sample size from the smallest usable n up to n_max.
/// For c = 0 the rows are the lot ranges sharing a minimal sample size; for
/// c >= 1 they are the admissible intervals [N_a, N_b] of each (n, c).
/// n_max defaults to twice the binomial minimum.
std::vector<IntervalTableRow> interval_table(std::int64_t acceptance_number,
                                             const TwoPointCriterion& crit = TwoPointCriterion::mid(),
                                             std::optional<std::int64_t> n_max = std::nullopt);

}  // namespace samplan
