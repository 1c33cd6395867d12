#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cellaoi::cli {

/// Shortest decimal that round-trips to the same double ("nan", "inf", "-inf"
/// for non-finite values).
std::string format_double(double v);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

/// Writes RFC 4180 rows with CRLF-free '\n' line ends, flushing after each row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);
  /// Marks the table as incomplete: a row "error,<message>".
  void error_row(std::string_view message);

  std::size_t columns() const noexcept { return columns_; }

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

}  // namespace cellaoi::cli
