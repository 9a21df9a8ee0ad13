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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bregman/types.hpp"

namespace bregman::cli {

// Reports are plain text, one `key = value` line per field, in insertion
// order. Keys are dotted paths (counterexample.mu). Values are a number
// (17 significant digits), a bare string, a list `[a, b]`, or a list of lists.

std::string format_number(double value);

class Report {
 public:
  void set(std::string key, std::string_view value);
  void set(std::string key, const char* value) { set(std::move(key), std::string_view(value)); }
  void set(std::string key, double value);
  void set(std::string key, int value);
  void set(std::string key, long long value);
  void set(std::string key, unsigned long long value);
  void set(std::string key, bool value);
  void set(std::string key, const std::vector<double>& values);
  void set(std::string key, const std::vector<int>& values);
  void set(std::string key, const Vector& values);
  void set(std::string key, const Matrix& rows);

  std::string render() const;

 private:
  void put(std::string key, std::string value);

  std::vector<std::pair<std::string, std::string>> entries_;
};

/// key -> raw value text. Blank lines and lines starting with '#' are ignored.
std::map<std::string, std::string> parse_report(std::string_view text);

std::vector<double> parse_report_list(std::string_view value);
Matrix parse_report_matrix(std::string_view value);

}  // namespace bregman::cli
