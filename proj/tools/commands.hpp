// Copyright 2026 The qdasim Authors
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

// Subcommand implementations behind the qdasim executable. Each takes a
// parsed configuration and returns the run report; main() owns argument
// parsing, output and exit codes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdasim/data_io.hpp"

namespace qdasim::cli {

enum class PathSelector { quantum, classical, both };

PathSelector parse_path(const std::string& text);
std::string to_string(PathSelector path);

struct CommandConfig {
  std::string subcommand;

  // Data: a CSV file or a synthetic preset.
  std::string data_path;
  std::string test_path;
  std::string synthetic;
  int dimension = 0;
  int per_class = 0;
  int test_per_class = 0;

  int p = 1;
  double kappa_eff = 100.0;
  double epsilon = 0.1;
  int t = 8;
  std::int64_t shots = 8192;
  std::int64_t draws = 0;
  std::uint64_t seed = 1;
  PathSelector path = PathSelector::both;

  // classify
  bool lda = false;
  bool literal_prior = false;

  // chain
  std::string operators_path;
  std::vector<std::string> functions;
  bool exact_rotation = false;

  // rotate-check
  std::vector<std::string> rotate_functions;
  std::optional<double> constant;
  int integer_bits = 4;
  int fraction_bits = 16;
  int f_order = 8;
  int arcsin_terms = 6;
  int grid_bits = 8;
  double probe_cf = 0.9;

  // gen
  std::string csv_out;
};

/// Rejects parameters outside the ranges the modules accept.
void validate(const CommandConfig& config);

io::RunReport run_reduce(const CommandConfig& config);
io::RunReport run_classify(const CommandConfig& config);
io::RunReport run_chain(const CommandConfig& config);
io::RunReport run_rotate_check(const CommandConfig& config);
io::RunReport run_gen(const CommandConfig& config);

io::RunReport run(const CommandConfig& config);

}  // namespace qdasim::cli
