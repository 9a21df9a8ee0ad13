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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bregman::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitRefuted = 1,
  kExitInputError = 2,
  kExitNumericalError = 3,
};

struct RunConfig {
  std::string command;                              // info | certify | mi | cluster | metric-check
  std::string generator = "sqnorm";                 // sqnorm | mahalanobis | negentropy
  std::map<std::string, std::string> gen_params;    // dim=, W=<csv>, domain=
  std::string divergence = "bregman-of-generator";
  std::string input;
  std::string weights_column = "auto";
  std::uint64_t seed = 0;
  int trials = 1000;
  double tol = 1e-8;
  int k = 2;
  int max_iters = 100;
  int restarts = 10;
  std::string output;  // empty: stdout
  std::string log_base = "nat";
  int threads = 1;
  int n_min = 1;
  int n_max = 8;
  double radius = 3.0;
  std::vector<double> point;      // metric-check base point
  std::vector<double> direction;  // metric-check direction
  std::vector<double> scales;     // metric-check step scales
};

const std::vector<std::string>& known_commands();
const std::vector<std::string>& known_generators();
/// Fixed names; scaled-bregman:<c> and bregman-plus-quartic:<eps> also accepted.
const std::vector<std::string>& known_divergences();

/// Throws InputError on bad flags. On --help the usage text goes to `out`
/// and `help_requested` is set.
struct ParseResult {
  RunConfig config;
  bool help_requested = false;
};

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out);

/// Validates `config`, runs the command, writes the report to config.output
/// (or `out` when empty), and returns the exit code. Errors become a report
/// with status = error; nothing is thrown.
int run(const RunConfig& config, std::ostream& out);

}  // namespace bregman::cli
