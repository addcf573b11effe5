#include "fracmt/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace fracmt {

void Report::add_row(std::vector<Field> row) {
  if (row.size() != columns.size())
    throw input_error("report row length does not match columns");
  rows.push_back(std::move(row));
}

namespace {

std::size_t column_index(const Report& r, const std::string& column) {
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    if (r.columns[i] == column) return i;
  throw input_error("no such report column: " + column);
}

}  // namespace

double Report::number_at(std::size_t row, const std::string& column) const {
  const Field& f = rows.at(row).at(column_index(*this, column));
  if (const double* d = std::get_if<double>(&f)) return *d;
  if (const long long* i = std::get_if<long long>(&f))
    return static_cast<double>(*i);
  throw input_error("report field is not numeric: " + column);
}

const std::string& Report::text_at(std::size_t row,
                                   const std::string& column) const {
  const Field& f = rows.at(row).at(column_index(*this, column));
  if (const std::string* s = std::get_if<std::string>(&f)) return *s;
  throw input_error("report field is not text: " + column);
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

// RFC-4180: quote when the field contains comma, quote, or newline.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string field_to_csv(const Report::Field& f) {
  if (const double* d = std::get_if<double>(&f)) return fmt17(*d);
  if (const long long* i = std::get_if<long long>(&f))
    return std::to_string(*i);
  return csv_escape(std::get<std::string>(f));
}

}  // namespace

std::string to_csv(const Report& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(report.columns[i]);
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << field_to_csv(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Report::Field& f = row[i];
      if (const double* d = std::get_if<double>(&f))
        obj[report.columns[i]] = *d;
      else if (const long long* n = std::get_if<long long>(&f))
        obj[report.columns[i]] = *n;
      else
        obj[report.columns[i]] = std::get<std::string>(f);
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!std::cout) throw io_error("write failure on stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw io_error("write failure: " + path);
}

}  // namespace fracmt
