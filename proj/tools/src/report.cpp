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

#include "bregman/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "bregman/cli/csv.hpp"

namespace bregman::cli {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += "]";
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buffer, ptr);
}

void Report::put(std::string key, std::string value) {
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::set(std::string key, std::string_view value) {
  std::string clean;
  clean.reserve(value.size());
  for (char c : value) clean += (c == '\n' || c == '\r') ? ' ' : c;
  put(std::move(key), std::move(clean));
}

void Report::set(std::string key, double value) { put(std::move(key), format_number(value)); }
void Report::set(std::string key, int value) { put(std::move(key), std::to_string(value)); }
void Report::set(std::string key, long long value) { put(std::move(key), std::to_string(value)); }
void Report::set(std::string key, unsigned long long value) {
  put(std::move(key), std::to_string(value));
}
void Report::set(std::string key, bool value) { put(std::move(key), value ? "true" : "false"); }

void Report::set(std::string key, const std::vector<double>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (double v : values) parts.push_back(format_number(v));
  put(std::move(key), join(parts));
}

void Report::set(std::string key, const std::vector<int>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (int v : values) parts.push_back(std::to_string(v));
  put(std::move(key), join(parts));
}

void Report::set(std::string key, const Vector& values) {
  set(std::move(key), std::vector<double>(values.data(), values.data() + values.size()));
}

void Report::set(std::string key, const Matrix& rows) {
  std::vector<std::string> parts;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < rows.cols(); ++j) row.push_back(format_number(rows(i, j)));
    parts.push_back(join(row));
  }
  put(std::move(key), join(parts));
}

std::string Report::render() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::map<std::string, std::string> parse_report(std::string_view text) {
  std::map<std::string, std::string> fields;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = strip(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError("malformed report line: " + std::string(line));
    fields[std::string(strip(line.substr(0, eq)))] = std::string(strip(line.substr(eq + 1)));
  }
  return fields;
}

std::vector<double> parse_report_list(std::string_view value) {
  value = strip(value);
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
    throw InputError("expected a list: " + std::string(value));
  }
  return parse_number_list(value.substr(1, value.size() - 2));
}

Matrix parse_report_matrix(std::string_view value) {
  value = strip(value);
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
    throw InputError("expected a list of lists: " + std::string(value));
  }
  value = value.substr(1, value.size() - 2);
  std::vector<std::vector<double>> rows;
  while (true) {
    const std::size_t open = value.find('[');
    if (open == std::string_view::npos) break;
    const std::size_t close = value.find(']', open);
    if (close == std::string_view::npos) throw InputError("unbalanced brackets in report");
    rows.push_back(parse_report_list(value.substr(open, close - open + 1)));
    value = value.substr(close + 1);
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != m.cols()) {
      throw InputError("ragged matrix in report");
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

}  // namespace bregman::cli
