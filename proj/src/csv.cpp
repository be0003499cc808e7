/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/csv.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "hetx/error.hpp"

namespace hetx {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_number(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

} // namespace

CsvColumn read_csv_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open CSV file '" + path + "'");

  // Column given as a 0-based index or as a header name.
  bool by_index = !column.empty();
  for (char ch : column)
    by_index = by_index && std::isdigit(static_cast<unsigned char>(ch));
  std::size_t col_index = by_index ? static_cast<std::size_t>(std::strtoul(column.c_str(), nullptr, 10)) : 0;

  CsvColumn out;
  std::string line;
  long row = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);

    if (first_data_row) {
      // Decide whether the first row is a header: a named column requires one;
      // otherwise it is a header exactly when the chosen cell is non-numeric.
      if (!by_index) {
        std::size_t found = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c)
          if (trim(cells[c]) == column) found = c;
        if (found == cells.size())
          throw_data("CSV file '" + path + "' has no column named '" + column + "'");
        col_index = found;
        out.had_header = true;
        out.header = column;
        first_data_row = false;
        continue;
      }
      if (col_index >= cells.size()) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "CSV row %ld has %zu columns; column %zu requested", row,
                      cells.size(), col_index);
        throw_data(buf);
      }
      double probe = 0.0;
      if (!parse_number(cells[col_index], probe)) {
        out.had_header = true;
        out.header = trim(cells[col_index]);
        first_data_row = false;
        continue;
      }
      first_data_row = false;
      // fall through: numeric first row is data
    }

    if (col_index >= cells.size()) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "CSV row %ld has %zu columns; column %zu requested", row,
                    cells.size(), col_index);
      throw_data(buf);
    }
    double value = 0.0;
    if (!parse_number(cells[col_index], value)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "CSV row %ld, column %zu: non-numeric value '%s'", row,
                    col_index, trim(cells[col_index]).c_str());
      throw_data(buf);
    }
    out.values.push_back(value);
  }
  if (out.values.empty()) throw_data("CSV file '" + path + "' contains no data rows");
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (columns.empty() || header.size() != columns.size())
    throw_config("write_csv: header/column mismatch");
  const std::size_t rows = columns.front().size();
  for (const auto& col : columns)
    if (col.size() != rows) throw_config("write_csv: ragged columns");
  std::ofstream out(path);
  if (!out) throw_data("cannot write CSV file '" + path + "'");
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << "\n";
  char buf[64];
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.10g", columns[c][r]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

} // namespace hetx
