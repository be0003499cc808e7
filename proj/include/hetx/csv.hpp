/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

namespace hetx {

struct CsvColumn {
  std::vector<double> values;
  std::string header;   // empty when the file has no header row
  bool had_header = false;
};

// Reads one numeric column from a CSV file. `column` is either a 0-based index
// ("0", "2", ...) or a header name. Rows with missing or non-numeric cells are
// rejected with their 1-based file row number.
CsvColumn read_csv_column(const std::string& path, const std::string& column);

// Writes columns of equal length with a header row; numbers as %.10g.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

} // namespace hetx
