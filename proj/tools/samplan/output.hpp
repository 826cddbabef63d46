#pragma once

// Record tables rendered as aligned text, csv or json, plus the matching
// readers used for round-trip checks.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace samplan::cli {

enum class OutputFormat { Table, Csv, Json };

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept;

struct Unbounded {};
/// A probability shown as fraction and percent in text output.
struct Probability {
  double value;
};

using Cell = std::variant<std::monostate, std::int64_t, double, Probability, bool, std::string, Unbounded>;

struct Records {
  explicit Records(std::vector<std::string> cols) : columns(std::move(cols)) {}

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Text output as "column  value" lines; used for single-record results.
  bool vertical = false;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// Shortest decimal that reads back to the same double.
std::string format_number(double value);
/// "0.0507 (5.07%)".
std::string format_probability(double value);

std::string csv_field(const Cell& cell);
nlohmann::ordered_json json_value(const Cell& cell);

void write_records(std::ostream& out, const Records& records, OutputFormat format);

/// Header plus rows of raw fields; quoted fields may contain commas and "".
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Reads a csv number field written by format_number; "inf" is +infinity.
double parse_number(std::string_view field);

}  // namespace samplan::cli
