#include "samplan/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "samplan/dist.hpp"

namespace samplan {
namespace detail {
std::string_view builtin_scheme_text() noexcept;
}

namespace {

// Lot sizes scanned past the start of an unbounded row; the binomial limit
// covers the tail.
constexpr std::int64_t kUnboundedScanSpan = 4000;
constexpr double kStatedBoundTolerance = 0.001;  // 0.1 percentage points

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw SchemeError("scheme data line " + std::to_string(line_no) + ": " + what);
}

std::int64_t parse_int(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) fail(line_no, "bad integer '" + std::string(token) + "'");
  return value;
}

double parse_percent(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !(value >= 0.0 && value <= 100.0))
    fail(line_no, "bad percentage '" + std::string(token) + "'");
  return value / 100.0;
}

std::optional<std::int64_t> parse_bound(std::string_view token, std::string_view open_marker, std::size_t line_no) {
  if (token == open_marker) return std::nullopt;
  return parse_int(token, line_no);
}

struct RangeBounds {
  double alpha_max = -std::numeric_limits<double>::infinity();
  double beta_min = std::numeric_limits<double>::infinity();
};

RangeBounds range_bounds(const SamplingPlan& plan, std::int64_t from, std::optional<std::int64_t> to,
                         const TwoPointCriterion& crit) {
  RangeBounds bounds;
  const std::int64_t last = to.value_or(from + kUnboundedScanSpan);
  for (std::int64_t lot = from; lot <= last; ++lot) {
    const double big_n = static_cast<double>(lot);
    bounds.alpha_max = std::max(bounds.alpha_max, 1.0 - hypergeom_oc_extended(crit.aql_quality() * big_n, lot, plan));
    bounds.beta_min = std::min(bounds.beta_min, hypergeom_oc_extended(crit.lq_quality() * big_n, lot, plan));
  }
  if (!to) {
    bounds.alpha_max = std::max(bounds.alpha_max, 1.0 - binomial_oc(crit.aql_quality(), plan));
    bounds.beta_min = std::min(bounds.beta_min, binomial_oc(crit.lq_quality(), plan));
  }
  return bounds;
}

bool range_operational(std::int64_t from, const TwoPointCriterion& crit) {
  const double expected = crit.aql_quality() * static_cast<double>(from);
  const auto snapped = detail::snap_to_integer(expected);
  return snapped ? *snapped >= 1 : expected >= 1.0;
}

std::string row_label(const SchemeRow& row) {
  return "lots " + std::to_string(row.lot_from) + "-" + (row.lot_to ? std::to_string(*row.lot_to) : "inf");
}

void validate_canonical(SchemeRow& row, const TwoPointCriterion& crit) {
  for (auto& entry : row.entries) {
    const auto& plan = entry.plan;
    const auto at_from = admissible_extended(row.lot_from, plan, crit);
    const auto at_to = row.lot_to ? admissible_extended(*row.lot_to, plan, crit) : admissible_binomial(plan, crit);
    if (!at_from.admissible || !at_to.admissible)
      throw SchemeError(row_label(row) + ": plan " + to_string(plan) + " is not admissible at both range ends");
    const auto bounds = range_bounds(plan, row.lot_from, row.lot_to, crit);
    entry.alpha_max = bounds.alpha_max;
    entry.beta_min = bounds.beta_min;
    if (entry.stated_alpha_max && std::fabs(*entry.stated_alpha_max - bounds.alpha_max) > kStatedBoundTolerance)
      throw SchemeError(row_label(row) + ": plan " + to_string(plan) + " stated alpha bound does not match");
    if (entry.stated_beta_min && std::fabs(*entry.stated_beta_min - bounds.beta_min) > kStatedBoundTolerance)
      throw SchemeError(row_label(row) + ": plan " + to_string(plan) + " stated beta bound does not match");
  }
}

std::optional<std::int64_t> range_minimum(std::int64_t c, std::int64_t from, std::optional<std::int64_t> to,
                                          const TwoPointCriterion& crit) {
  std::int64_t worst = 0;
  const std::int64_t last = to.value_or(from + kUnboundedScanSpan);
  for (std::int64_t lot = from; lot <= last; ++lot) {
    const auto found = min_sample_extended(lot, c, crit);
    if (found.status != SearchStatus::Found) return std::nullopt;
    worst = std::max(worst, found.plan->n());
  }
  if (!to) {
    const auto limit = min_sample_binomial(c, crit);
    if (!limit.plan) return std::nullopt;
    worst = std::max(worst, limit.plan->n());
  }
  if (worst > from) return std::nullopt;
  return worst;
}

}  // namespace

const SchemeEntry* SchemeRow::entry_for(std::int64_t c) const noexcept {
  for (const auto& entry : entries)
    if (entry.plan.c() == c) return &entry;
  return nullptr;
}

SchemeData parse_scheme_data(std::string_view text) {
  SchemeData data;
  std::istringstream stream{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool saw_format = false;
  while (std::getline(stream, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "format") {
      if (tok.size() != 2 || tok[1] != "1") fail(line_no, "unsupported format record");
      saw_format = true;
    } else if (tok[0] == "scheme") {
      if (tok.size() != 8) fail(line_no, "scheme record needs 7 fields");
      const std::int64_t from = parse_int(tok[1], line_no);
      const auto to = parse_bound(tok[2], "inf", line_no);
      const std::int64_t n = parse_int(tok[3], line_no);
      const std::int64_t c = parse_int(tok[4], line_no);
      if (n < 1 || c < 0 || c > n) fail(line_no, "invalid plan");
      if (from < 1 || (to && *to < from)) fail(line_no, "invalid lot range");
      if (n > from) fail(line_no, "sample larger than the smallest lot of its range");
      SchemeEntry entry{SamplingPlan(n, c), parse_percent(tok[5], line_no), parse_percent(tok[6], line_no)};

      if (data.rows.empty() || data.rows.back().lot_from != from || data.rows.back().lot_to != to) {
        if (!data.rows.empty()) {
          const auto& prev = data.rows.back();
          if (!prev.lot_to) fail(line_no, "row follows an unbounded row");
          if (from != *prev.lot_to + 1) fail(line_no, "lot ranges must be ascending and contiguous");
        }
        data.rows.push_back(SchemeRow{from, to, {}, tok[7]});
      }
      auto& row = data.rows.back();
      if (!row.entries.empty() && row.entries.back().plan.c() >= c)
        fail(line_no, "acceptance numbers within a row must be ascending and distinct");
      if (row.source != tok[7]) fail(line_no, "mixed sources within a row");
      row.entries.push_back(entry);
    } else if (tok[0] == "iso") {
      if (tok.size() != 6) fail(line_no, "iso record needs 5 fields");
      const auto from = parse_bound(tok[1], "?", line_no);
      const auto to = parse_bound(tok[2], "?", line_no);
      if (from.has_value() != to.has_value()) fail(line_no, "iso lot range must be fully known or fully unknown");
      if (from && (*from < 1 || *to < *from)) fail(line_no, "invalid lot range");
      const std::int64_t n = parse_int(tok[3], line_no);
      const std::int64_t c = parse_int(tok[4], line_no);
      if (n < 1 || c < 0 || c > n) fail(line_no, "invalid plan");
      data.reference_plans.push_back(ReferencePlan{SamplingPlan(n, c), from, to, tok[5]});
    } else {
      fail(line_no, "unknown record '" + tok[0] + "'");
    }
  }
  if (!saw_format) throw SchemeError("scheme data has no format record");
  if (data.rows.empty()) throw SchemeError("scheme data has no scheme rows");
  return data;
}

SchemeData load_scheme_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemeError("cannot open scheme file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scheme_data(buffer.str());
}

const SchemeData& builtin_scheme_data() {
  static const SchemeData data = parse_scheme_data(detail::builtin_scheme_text());
  return data;
}

std::vector<SchemeRow> simplified_scheme(const TwoPointCriterion& crit, const SchemeData& data) {
  std::vector<SchemeRow> rows;
  if (crit.is_mid_default()) {
    rows = data.rows;
    for (auto& row : rows) {
      row.alpha_operational = range_operational(row.lot_from, crit);
      validate_canonical(row, crit);
    }
    return rows;
  }

  for (const auto& bin : data.rows) {
    SchemeRow row{bin.lot_from, bin.lot_to, {}, "recomputed"};
    row.canonical = false;
    row.alpha_operational = range_operational(row.lot_from, crit);
    for (std::int64_t c = 0; c <= 2; ++c) {
      const auto n = range_minimum(c, row.lot_from, row.lot_to, crit);
      if (!n) continue;
      const SamplingPlan plan(*n, c);
      const auto bounds = range_bounds(plan, row.lot_from, row.lot_to, crit);
      row.entries.push_back(SchemeEntry{plan, std::nullopt, std::nullopt, bounds.alpha_max, bounds.beta_min});
    }
    if (!row.entries.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReferencePlan> iso_reference_plans(const SchemeData& data) { return data.reference_plans; }

ComparisonRecord compare(std::int64_t lot_size, const TwoPointCriterion& crit, const SchemeData& data) {
  if (lot_size < 15) throw DomainError("comparison needs a lot of at least 15 items");
  ComparisonRecord record;
  record.lot_size = lot_size;
  const auto model = OcModel::hypergeometric_extended(lot_size);

  const auto row = std::find_if(data.rows.begin(), data.rows.end(),
                                [&](const SchemeRow& r) { return r.covers(lot_size); });
  if (row != data.rows.end()) {
    for (const auto& entry : row->entries)
      record.scheme.push_back({entry.plan, risk_summary(entry.plan, model, crit), "scheme"});
  } else {
    const auto found = min_sample_extended(lot_size, 0, crit);
    if (found.plan) record.scheme.push_back({*found.plan, risk_summary(*found.plan, model, crit), "exact-minimum"});
  }

  for (const auto& ref : data.reference_plans) {
    if (ref.covers(lot_size) && ref.plan.n() <= lot_size) {
      record.iso = ComparedPlan{ref.plan, risk_summary(ref.plan, model, crit), ref.source};
      break;
    }
  }
  return record;
}

std::string_view to_string(Preference preference) noexcept {
  return preference == Preference::MinSample ? "min-sample" : "min-producer-risk";
}

std::optional<Preference> parse_preference(std::string_view text) noexcept {
  if (text == "min-sample") return Preference::MinSample;
  if (text == "min-producer-risk") return Preference::MinProducerRisk;
  return std::nullopt;
}

Recommendation recommend_plan(std::int64_t lot_size, Preference preference, const TwoPointCriterion& crit,
                              const SchemeData& data) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  if (lot_size <= 15) return Recommendation{SamplingPlan(lot_size, 0), true, "full-inspection"};

  const auto row = std::find_if(data.rows.begin(), data.rows.end(),
                                [&](const SchemeRow& r) { return r.covers(lot_size); });
  if (row != data.rows.end() && !row->entries.empty() && crit.is_mid_default()) {
    const auto& entries = row->entries;
    const SchemeEntry* pick = &entries.front();
    for (const auto& entry : entries) {
      if (preference == Preference::MinSample ? entry.plan.n() < pick->plan.n() : entry.plan.c() > pick->plan.c())
        pick = &entry;
    }
    return Recommendation{pick->plan, false, "scheme"};
  }

  // Outside the scheme's bins (or another criterion): the exact zero-acceptance minimum.
  const auto found = min_sample_extended(lot_size, 0, crit);
  if (!found.plan) return Recommendation{SamplingPlan(lot_size, 0), true, "full-inspection"};
  return Recommendation{*found.plan, found.status == SearchStatus::FullInspectionOnly, "exact-minimum"};
}

}  // namespace samplan
