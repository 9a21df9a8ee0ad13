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

#include <iostream>

#include "bregman/cli/csv.hpp"
#include "bregman/cli/report.hpp"
#include "bregman/cli/run_config.hpp"

int main(int argc, char** argv) {
  using namespace bregman::cli;
  ParseResult parsed;
  try {
    parsed = parse_args(argc, argv, std::cout);
  } catch (const InputError& e) {
    Report report;
    report.set("status", "error");
    report.set("error.code", "InputError");
    report.set("error.message", e.what());
    std::cout << report.render();
    return kExitInputError;
  }
  if (parsed.help_requested) return kExitOk;
  return run(parsed.config, std::cout);
}
