#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace samplan::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string text_field(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string("-"); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](double v) { return format_number(v); },
                        [](Probability p) { return format_probability(p.value); },
                        [](bool b) { return std::string(b ? "yes" : "no"); },
                        [](const std::string& s) { return s; },
                        [](Unbounded) { return std::string("inf"); },
                    },
                    cell);
}

bool numeric(const Cell& cell) {
  return std::holds_alternative<std::int64_t>(cell) || std::holds_alternative<double>(cell) ||
         std::holds_alternative<Probability>(cell) || std::holds_alternative<Unbounded>(cell);
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept {
  if (text == "table") return OutputFormat::Table;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  return std::nullopt;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string format_probability(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g (%.2f%%)", value, value * 100.0);
  return buf;
}

std::string csv_field(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string(); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](double v) { return format_number(v); },
                        [](Probability p) { return format_number(p.value); },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](const std::string& s) {
                          if (s.find_first_of(",\"\n") == std::string::npos) return s;
                          std::string quoted = "\"";
                          for (const char ch : s) {
                            if (ch == '"') quoted += '"';
                            quoted += ch;
                          }
                          return quoted + "\"";
                        },
                        [](Unbounded) { return std::string("inf"); },
                    },
                    cell);
}

nlohmann::ordered_json json_value(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                        [](std::int64_t v) { return nlohmann::ordered_json(v); },
                        [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr); },
                        [](Probability p) { return nlohmann::ordered_json(p.value); },
                        [](bool b) { return nlohmann::ordered_json(b); },
                        [](const std::string& s) { return nlohmann::ordered_json(s); },
                        [](Unbounded) { return nlohmann::ordered_json(nullptr); },
                    },
                    cell);
}

void write_records(std::ostream& out, const Records& records, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: {
      for (std::size_t i = 0; i < records.columns.size(); ++i) out << (i ? "," : "") << records.columns[i];
      out << '\n';
      for (const auto& row : records.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
      }
      return;
    }
    case OutputFormat::Json: {
      auto array = nlohmann::ordered_json::array();
      for (const auto& row : records.rows) {
        nlohmann::ordered_json object = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) object[records.columns[i]] = json_value(row[i]);
        array.push_back(std::move(object));
      }
      out << array.dump(2) << '\n';
      return;
    }
    case OutputFormat::Table: {
      if (records.vertical) {
        std::size_t key_width = 0;
        for (const auto& c : records.columns) key_width = std::max(key_width, c.size());
        for (std::size_t r = 0; r < records.rows.size(); ++r) {
          if (r) out << '\n';
          for (std::size_t i = 0; i < records.rows[r].size(); ++i)
            out << records.columns[i] << std::string(key_width - records.columns[i].size() + 2, ' ')
                << text_field(records.rows[r][i]) << '\n';
        }
        return;
      }
      std::vector<std::vector<std::string>> cells;
      std::vector<std::size_t> width(records.columns.size());
      for (std::size_t i = 0; i < records.columns.size(); ++i) width[i] = records.columns[i].size();
      for (const auto& row : records.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
          line.push_back(text_field(row[i]));
          width[i] = std::max(width[i], line.back().size());
        }
      }
      const auto pad = [&](const std::string& s, std::size_t i, bool right) {
        const std::string fill(width[i] - s.size(), ' ');
        return right ? fill + s : s + fill;
      };
      std::string header;
      for (std::size_t i = 0; i < records.columns.size(); ++i)
        header += (i ? "  " : "") + pad(records.columns[i], i, false);
      header.erase(header.find_last_not_of(' ') + 1);
      out << header << '\n';
      for (std::size_t r = 0; r < cells.size(); ++r) {
        std::string line;
        for (std::size_t i = 0; i < cells[r].size(); ++i)
          line += (i ? "  " : "") + pad(cells[r][i], i, numeric(records.rows[r][i]));
        line.erase(line.find_last_not_of(' ') + 1);
        out << line << '\n';
      }
      return;
    }
  }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted csv field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_number(std::string_view field) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw std::invalid_argument("not a number: '" + std::string(field) + "'");
  return value;
}

}  // namespace samplan::cli
