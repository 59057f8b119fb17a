#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "sld/error.hpp"
#include "sld/feature_vector.hpp"

namespace sld::cli {

/// Malformed CSV content. `row` is the 1-based data row, `line` the 1-based
/// file line (they differ by one when a header is present).
class CsvError : public DataError {
 public:
  CsvError(std::size_t line, std::size_t row, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t line_;
  std::size_t row_;
};

struct CsvTable {
  std::vector<std::string> header;  ///< empty when the file has no header row
  std::vector<FeatureVector> rows;

  std::size_t columns() const noexcept;
};

/// Comma-separated numeric rows with an optional header, detected by a
/// non-numeric field in the first non-blank line. Blank lines are skipped.
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// "%.17g" rendering used for every persisted float.
std::string format_double(double value);

}  // namespace sld::cli
