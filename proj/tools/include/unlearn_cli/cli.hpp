// Copyright 2026 The Unlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNLEARN_CLI_CLI_HPP
#define UNLEARN_CLI_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace unlearn::cli {

enum class ExitCode : int {
  kOk = 0,
  kDomainFailure = 2,  // validation failed, bad parameters, unrecoverable branch
  kParseFailure = 3,   // input file unreadable or malformed
};

enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  std::string command;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<OutputFormat> format;  // per-command default when unset
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::size_t max_iter = 200;
  std::size_t trials = 10000;
  double a = 0.8;
  double b = 0.6;
  std::size_t theta_points = 50;
  std::vector<double> extra_thetas;
};

/// Runs the tool with argv[1..] in args. Reports go to out (or --output),
/// diagnostics to err. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unlearn::cli

#endif  // UNLEARN_CLI_CLI_HPP
