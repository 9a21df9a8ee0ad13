// Copyright 2026 The Bregman Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bregman/types.hpp"

namespace bregman::cli {

/// Malformed input file or flag value. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comma-separated numeric table. The first line is a header when any of its
/// fields fails to parse as a number. Numbers use '.' as the decimal point
/// regardless of locale.
struct CsvTable {
  std::optional<std::vector<std::string>> header;
  std::vector<std::vector<double>> rows;

  std::size_t columns() const { return rows.empty() ? 0 : rows.front().size(); }
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Locale-independent parse of a whole field; nullopt unless the entire
/// (whitespace-trimmed) field is a finite number.
std::optional<double> parse_number(std::string_view field);

/// "1,2.5,-3" -> {1, 2.5, -3}. Throws InputError on a bad element.
std::vector<double> parse_number_list(std::string_view text);

/// Splits data rows into an optional weight column and a point matrix.
///
/// `weights_column` is "auto" (use a header column named "weight" if present),
/// "none", a header name, or a 0-based column index. Weights must be
/// nonnegative with a positive sum and are normalized to sum to one; without
/// a weight column every row gets 1/n.
struct WeightedRows {
  Vector weights;
  PointMatrix points;
};

WeightedRows split_weights(const CsvTable& table, const std::string& weights_column);

Matrix table_to_matrix(const CsvTable& table);

}  // namespace bregman::cli
