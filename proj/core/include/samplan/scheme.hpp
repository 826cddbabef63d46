#pragma once

// Simplified single-sampling scheme, ISO 2859-1 reference plans, comparison
// and a plan recommender.
//
// Scheme data ships as a structured text file (data/mid_scheme.txt) that is
// embedded at build time and can be replaced at run time.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "samplan/criteria.hpp"
#include "samplan/optimize.hpp"
#include "samplan/plan.hpp"

namespace samplan {

/// Malformed scheme data, or a row that fails validation against the criterion.
class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SchemeEntry {
  SamplingPlan plan;
  /// Bounds as written in the data file (fractions); absent for recomputed schemes.
  std::optional<double> stated_alpha_max;
  std::optional<double> stated_beta_min;
  /// Recomputed sup of alpha and inf of beta over the row's lot range.
  double alpha_max = 0.0;
  double beta_min = 0.0;
};

struct SchemeRow {
  std::int64_t lot_from = 0;
  std::optional<std::int64_t> lot_to;  // empty: unbounded
  std::vector<SchemeEntry> entries;    // ascending c, at most one per c
  std::string source;
  /// False when the whole range has N p_a < 1.
  bool alpha_operational = true;
  /// False when the row was recomputed for a non-default criterion.
  bool canonical = true;

  bool covers(std::int64_t lot_size) const noexcept {
    return lot_size >= lot_from && (!lot_to || lot_size <= *lot_to);
  }
  const SchemeEntry* entry_for(std::int64_t c) const noexcept;
};

struct ReferencePlan {
  SamplingPlan plan;
  std::optional<std::int64_t> lot_from;  // empty: range not recorded
  std::optional<std::int64_t> lot_to;
  std::string source;

  bool covers(std::int64_t lot_size) const noexcept {
    return lot_from && lot_to && lot_size >= *lot_from && lot_size <= *lot_to;
  }
};

struct SchemeData {
  std::vector<SchemeRow> rows;  // stated values only; bounds not yet recomputed
  std::vector<ReferencePlan> reference_plans;
};

/// Parses the text format; throws SchemeError with the offending line.
SchemeData parse_scheme_data(std::string_view text);
SchemeData load_scheme_file(const std::filesystem::path& path);
/// The copy of data/mid_scheme.txt compiled into the library.
const SchemeData& builtin_scheme_data();

/// Validated scheme rows with recomputed risk bounds. For the default
/// criterion the stored rows are checked (admissible at both range ends,
/// bounds within 0.1 percentage points); other criteria get rows recomputed on
/// the same lot bins, flagged non-canonical.
std::vector<SchemeRow> simplified_scheme(const TwoPointCriterion& crit = TwoPointCriterion::mid(),
                                         const SchemeData& data = builtin_scheme_data());

std::vector<ReferencePlan> iso_reference_plans(const SchemeData& data = builtin_scheme_data());

struct ComparedPlan {
  SamplingPlan plan;
  RiskSummary risk;  // extended model at the compared lot size
  std::string basis;
};

struct ComparisonRecord {
  std::int64_t lot_size = 0;
  std::vector<ComparedPlan> scheme;
  std::optional<ComparedPlan> iso;  // empty when no recorded ISO range covers N
};

ComparisonRecord compare(std::int64_t lot_size, const TwoPointCriterion& crit = TwoPointCriterion::mid(),
                         const SchemeData& data = builtin_scheme_data());

enum class Preference { MinSample, MinProducerRisk };

std::string_view to_string(Preference preference) noexcept;
std::optional<Preference> parse_preference(std::string_view text) noexcept;

struct Recommendation {
  SamplingPlan plan;
  bool full_inspection = false;
  std::string basis;
  /// The choice between acceptance numbers is a heuristic, never normative.
  bool normative = false;
};

/// min-sample picks the smallest n offered for N; min-producer-risk the largest c.
/// N <= 15 always yields inspection of the whole lot.
Recommendation recommend_plan(std::int64_t lot_size, Preference preference,
                              const TwoPointCriterion& crit = TwoPointCriterion::mid(),
                              const SchemeData& data = builtin_scheme_data());

}  // namespace samplan
