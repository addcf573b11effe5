#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fracmt/errors.hpp"

namespace fracmt {

// ============================================================
// Column-ordered tabular report, the single source of truth for
// both CSV and JSON output.  CSV: RFC-4180, LF endings, doubles
// at 17 significant digits.  JSON: array of row objects with
// keys in column order.  Both encodings parse back to the same
// doubles.
// ============================================================

struct Report {
  using Field = std::variant<double, long long, std::string>;

  std::vector<std::string> columns;
  std::vector<std::vector<Field>> rows;

  // Appends a row; length must match columns.
  void add_row(std::vector<Field> row);

  double number_at(std::size_t row, const std::string& column) const;
  const std::string& text_at(std::size_t row, const std::string& column) const;
};

// %.17g, enough digits to round-trip any double.
std::string fmt17(double x);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

// Writes content to path ("-" = stdout); io_error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fracmt
