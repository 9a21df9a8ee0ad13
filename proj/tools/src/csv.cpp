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

#include "bregman/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bregman::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (std::string_view field : split_fields(text)) {
    const auto value = parse_number(field);
    if (!value) throw InputError("not a number: '" + std::string(field) + "'");
    out.push_back(*value);
  }
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (first && view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto fields = split_fields(view);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (std::string_view field : fields) {
      const auto value = parse_number(field);
      if (!value) {
        numeric = false;
        break;
      }
      row.push_back(*value);
    }
    if (!numeric) {
      if (!first) {
        throw InputError("line " + std::to_string(line_number) + ": non-numeric field");
      }
      table.header = std::vector<std::string>(fields.begin(), fields.end());
    } else {
      if (!table.rows.empty() && row.size() != table.rows.front().size()) {
        throw InputError("line " + std::to_string(line_number) + ": expected " +
                         std::to_string(table.rows.front().size()) + " fields, got " +
                         std::to_string(row.size()));
      }
      table.rows.push_back(std::move(row));
    }
    first = false;
  }
  if (table.header && !table.rows.empty() && table.header->size() != table.columns()) {
    throw InputError("header has " + std::to_string(table.header->size()) +
                     " fields but rows have " + std::to_string(table.columns()));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_csv(in);
}

WeightedRows split_weights(const CsvTable& table, const std::string& weights_column) {
  if (table.rows.empty()) throw InputError("input has no data rows");
  const std::size_t cols = table.columns();

  std::optional<std::size_t> weight_index;
  if (weights_column == "auto") {
    if (table.header) {
      for (std::size_t c = 0; c < table.header->size(); ++c) {
        if ((*table.header)[c] == "weight") weight_index = c;
      }
    }
  } else if (weights_column != "none") {
    if (table.header) {
      for (std::size_t c = 0; c < table.header->size(); ++c) {
        if ((*table.header)[c] == weights_column) weight_index = c;
      }
    }
    if (!weight_index) {
      const auto index = parse_number(weights_column);
      if (!index || *index < 0 || *index != std::floor(*index) ||
          static_cast<std::size_t>(*index) >= cols) {
        throw InputError("weights column '" + weights_column + "' not found");
      }
      weight_index = static_cast<std::size_t>(*index);
    }
  }

  const std::size_t dim = cols - (weight_index ? 1 : 0);
  if (dim == 0) throw InputError("input has no coordinate columns");
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  WeightedRows out;
  out.points.resize(n, static_cast<Eigen::Index>(dim));
  out.weights = Vector::Constant(n, 1.0 / static_cast<double>(n));
  Vector raw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    Eigen::Index c_out = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (weight_index && c == *weight_index) {
        raw[i] = row[c];
      } else {
        out.points(i, c_out++) = row[c];
      }
    }
  }
  if (weight_index) {
    if (raw.minCoeff() < 0.0) throw InputError("weights must be nonnegative");
    const double total = raw.sum();
    if (!(total > 0.0)) throw InputError("weights must have a positive sum");
    out.weights = raw / total;
  }
  return out;
}

Matrix table_to_matrix(const CsvTable& table) {
  Matrix m(static_cast<Eigen::Index>(table.rows.size()),
           static_cast<Eigen::Index>(table.columns()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t c = 0; c < table.columns(); ++c) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = table.rows[i][c];
    }
  }
  return m;
}

}  // namespace bregman::cli
