#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string_view>

namespace sld::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

CsvError::CsvError(std::size_t line, std::size_t row, const std::string& what)
    : DataError("row " + std::to_string(row) + " (line " + std::to_string(line) + "): " + what),
      line_(line),
      row_(row) {}

std::size_t CsvTable::columns() const noexcept {
  if (!rows.empty()) return rows.front().dim();
  return header.size();
}

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool first = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);

    if (first) {
      first = false;
      columns = fields.size();
      bool numeric = true;
      for (auto f : fields) numeric = numeric && parse_number(f).has_value();
      if (!numeric) {
        for (auto f : fields) table.header.emplace_back(f);
        continue;
      }
    }

    const std::size_t row_no = table.rows.size() + 1;
    if (fields.size() != columns) {
      throw CsvError(line_no, row_no,
                     "expected " + std::to_string(columns) + " columns, found " +
                         std::to_string(fields.size()));
    }
    std::vector<double> values;
    values.reserve(columns);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        throw CsvError(line_no, row_no,
                       "column " + std::to_string(c + 1) + " is not a number: '" +
                           std::string(fields[c]) + "'");
      }
      if (!std::isfinite(*v)) {
        throw CsvError(line_no, row_no, "column " + std::to_string(c + 1) + " is not finite");
      }
      values.push_back(*v);
    }
    table.rows.emplace_back(std::move(values));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_csv(in);
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace sld::cli
