// Copyright 2026 The qlga Authors
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

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qlga::cli {

inline constexpr const char* kVersion = "0.1.0";

enum Exit { kQlga = 0, kInvalid = 1, kNumerical = 2, kNotQlga = 3 };

struct Options {
  std::string input;
  std::string state;      // simulate
  std::string reference;  // verify
  int steps = 1;
  double tol = 1e-9;
  std::vector<int> window;
  std::string backend = "auto";
  unsigned long long seed = 42;
  std::string out;  // report path; stdout when empty
  bool timings = true;
  long dense_cap = 1024;
};

// Lowercase hex SHA-256 of the canonical (sorted, compact) JSON dump.
std::string content_hash(const nlohmann::json& doc);

// Each command writes its JSON report to `out` (or opts.out) and
// diagnostics to `err`, and returns an Exit code.
int cmd_check(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_decompose(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& opts, std::ostream& out, std::ostream& err);

// Parses argv and dispatches.
int run(int argc, char** argv);

}  // namespace qlga::cli
