#pragma once

// Two-point (AQL/LQ) admissibility of single-sampling plans.
//
// A plan is admissible when its OC lies strictly below both points:
//   OC(p_a) < P_a   and   OC(p_b) < P_b.
// Comparisons are raw floating-point comparisons; no tolerance is applied.

#include <cstdint>
#include <optional>
#include <string_view>

#include "samplan/plan.hpp"

namespace samplan {

/// The pair of (quality, acceptance-probability) bounds a plan must stay under.
class TwoPointCriterion {
 public:
  TwoPointCriterion(double aql_quality, double aql_bound, double lq_quality, double lq_bound);

  /// (p_a, P_a) = (0.01, 0.95) and (p_b, P_b) = (0.07, 0.05).
  static TwoPointCriterion mid() noexcept;

  double aql_quality() const noexcept { return aql_quality_; }
  double aql_bound() const noexcept { return aql_bound_; }
  double lq_quality() const noexcept { return lq_quality_; }
  double lq_bound() const noexcept { return lq_bound_; }

  bool is_mid_default() const noexcept;

  friend bool operator==(const TwoPointCriterion&, const TwoPointCriterion&) = default;

 private:
  struct Unchecked {};
  constexpr TwoPointCriterion(Unchecked, double pa, double ba, double pb, double bb) noexcept
      : aql_quality_(pa), aql_bound_(ba), lq_quality_(pb), lq_bound_(bb) {}

  double aql_quality_;
  double aql_bound_;
  double lq_quality_;
  double lq_bound_;
};

/// The operational quality levels {0, 1/N, ..., 1} of a lot of size N.
class QualityLevelGrid {
 public:
  explicit QualityLevelGrid(std::int64_t lot_size);

  std::int64_t lot_size() const noexcept { return lot_size_; }
  bool contains(double p) const noexcept;
  /// Smallest defective count M with M/N >= p.
  std::int64_t ceil_level(double p) const;

 private:
  std::int64_t lot_size_;
};

enum class BindingPoint { Aql, Lq, Both, None };

std::string_view to_string(BindingPoint point) noexcept;

struct AdmissibilityVerdict {
  bool admissible = false;
  double oc_at_a = 0.0;
  double oc_at_b = 0.0;
  double margin_a = 0.0;  // P_a - OC(p_a)
  double margin_b = 0.0;  // P_b - OC(p_b)
  /// Failing condition(s); for an admissible plan, the one with the smaller margin.
  BindingPoint binding_point = BindingPoint::None;
  /// Rejected by the lot-size bound N > c / p_a before any OC comparison.
  bool structural = false;
};

/// Verdict for OC values that were evaluated elsewhere.
AdmissibilityVerdict judge(double oc_at_a, double oc_at_b, const TwoPointCriterion& crit) noexcept;

AdmissibilityVerdict admissible_binomial(const SamplingPlan& plan,
                                         const TwoPointCriterion& crit = TwoPointCriterion::mid());

/// Gamma-extended hypergeometric OC at M_a = p_a N and M_b = p_b N.
AdmissibilityVerdict admissible_extended(std::int64_t lot_size, const SamplingPlan& plan,
                                         const TwoPointCriterion& crit = TwoPointCriterion::mid());

/// Exact hypergeometric OC at the first grid levels at or above p_a and p_b.
AdmissibilityVerdict admissible_discrete(std::int64_t lot_size, const SamplingPlan& plan,
                                         const TwoPointCriterion& crit = TwoPointCriterion::mid());

/// Smallest lot size for which a plan with acceptance number c can satisfy the
/// AQL condition: a lot with c defectives is always accepted, so c/N < p_a.
/// 100c + 1 for the default criterion.
std::int64_t lot_size_lower_bound(std::int64_t acceptance_number,
                                  const TwoPointCriterion& crit = TwoPointCriterion::mid());

}  // namespace samplan
