#include "samplan/criteria.hpp"

#include <cmath>
#include <string>

#include "samplan/dist.hpp"

namespace samplan {

TwoPointCriterion::TwoPointCriterion(double aql_quality, double aql_bound, double lq_quality, double lq_bound)
    : TwoPointCriterion(Unchecked{}, aql_quality, aql_bound, lq_quality, lq_bound) {
  if (!(0.0 < aql_quality_ && aql_quality_ < lq_quality_ && lq_quality_ < 1.0))
    throw DomainError("criterion requires 0 < p_a < p_b < 1");
  if (!(0.0 < lq_bound_ && lq_bound_ < aql_bound_ && aql_bound_ < 1.0))
    throw DomainError("criterion requires 0 < P_b < P_a < 1");
}

TwoPointCriterion TwoPointCriterion::mid() noexcept { return {Unchecked{}, 0.01, 0.95, 0.07, 0.05}; }

bool TwoPointCriterion::is_mid_default() const noexcept { return *this == mid(); }

QualityLevelGrid::QualityLevelGrid(std::int64_t lot_size) : lot_size_(lot_size) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
}

bool QualityLevelGrid::contains(double p) const noexcept {
  if (!(p >= 0.0 && p <= 1.0)) return false;
  return detail::snap_to_integer(p * static_cast<double>(lot_size_)).has_value();
}

std::int64_t QualityLevelGrid::ceil_level(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quality level must lie in [0,1]");
  const double scaled = p * static_cast<double>(lot_size_);
  if (const auto exact = detail::snap_to_integer(scaled)) return *exact;
  return static_cast<std::int64_t>(std::ceil(scaled));
}

std::string_view to_string(BindingPoint point) noexcept {
  switch (point) {
    case BindingPoint::Aql: return "AQL";
    case BindingPoint::Lq: return "LQ";
    case BindingPoint::Both: return "both";
    case BindingPoint::None: return "none";
  }
  return "none";
}

AdmissibilityVerdict judge(double oc_at_a, double oc_at_b, const TwoPointCriterion& crit) noexcept {
  AdmissibilityVerdict v;
  v.oc_at_a = oc_at_a;
  v.oc_at_b = oc_at_b;
  v.margin_a = crit.aql_bound() - oc_at_a;
  v.margin_b = crit.lq_bound() - oc_at_b;
  const bool ok_a = oc_at_a < crit.aql_bound();
  const bool ok_b = oc_at_b < crit.lq_bound();
  v.admissible = ok_a && ok_b;
  if (!ok_a && !ok_b) {
    v.binding_point = BindingPoint::Both;
  } else if (!ok_a) {
    v.binding_point = BindingPoint::Aql;
  } else if (!ok_b) {
    v.binding_point = BindingPoint::Lq;
  } else if (oc_at_a == 0.0 && oc_at_b == 0.0) {
    v.binding_point = BindingPoint::None;
  } else if (v.margin_a < v.margin_b) {
    v.binding_point = BindingPoint::Aql;
  } else if (v.margin_b < v.margin_a) {
    v.binding_point = BindingPoint::Lq;
  } else {
    v.binding_point = BindingPoint::Both;
  }
  return v;
}

AdmissibilityVerdict admissible_binomial(const SamplingPlan& plan, const TwoPointCriterion& crit) {
  return judge(binomial_oc(crit.aql_quality(), plan), binomial_oc(crit.lq_quality(), plan), crit);
}

AdmissibilityVerdict admissible_extended(std::int64_t lot_size, const SamplingPlan& plan,
                                         const TwoPointCriterion& crit) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  if (plan.n() > lot_size) throw DomainError("sample size exceeds lot size");
  const double big_n = static_cast<double>(lot_size);
  auto verdict = judge(hypergeom_oc_extended(crit.aql_quality() * big_n, lot_size, plan),
                       hypergeom_oc_extended(crit.lq_quality() * big_n, lot_size, plan), crit);
  // Below the lot-size bound the continuation at M_a < c is not a probability
  // and may come out small; the plan is inadmissible regardless.
  if (lot_size < lot_size_lower_bound(plan.c(), crit)) {
    verdict.structural = true;
    if (verdict.admissible) {
      verdict.admissible = false;
      verdict.binding_point = BindingPoint::Aql;
    } else if (verdict.binding_point == BindingPoint::Lq) {
      verdict.binding_point = BindingPoint::Both;
    }
  }
  return verdict;
}

AdmissibilityVerdict admissible_discrete(std::int64_t lot_size, const SamplingPlan& plan,
                                         const TwoPointCriterion& crit) {
  if (plan.n() > lot_size) throw DomainError("sample size exceeds lot size");
  const QualityLevelGrid grid(lot_size);
  const std::int64_t level_a = grid.ceil_level(crit.aql_quality());
  const std::int64_t level_b = grid.ceil_level(crit.lq_quality());
  return judge(hypergeom_oc_exact(level_a, lot_size, plan), hypergeom_oc_exact(level_b, lot_size, plan), crit);
}

std::int64_t lot_size_lower_bound(std::int64_t acceptance_number, const TwoPointCriterion& crit) {
  if (acceptance_number < 0) throw DomainError("acceptance number must be non-negative");
  const double ratio = static_cast<double>(acceptance_number) / crit.aql_quality();
  if (const auto exact = detail::snap_to_integer(ratio)) return *exact + 1;
  return static_cast<std::int64_t>(std::floor(ratio)) + 1;
}

}  // namespace samplan
