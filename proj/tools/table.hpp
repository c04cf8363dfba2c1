// Copyright 2026 The dicke-fringe Authors
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

// Tabular output, grid parsing and key=value config handling for the
// command-line front end.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cli {

// Raised for malformed user input; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // NaN marks an undefined value
};

// CSV: `#` metadata lines, a column line, then %.12g values.
void write_csv(std::ostream& os, const Table& t);
// JSON: {params, columns, rows, provenance}; NaN becomes null.
void write_json(std::ostream& os, const Table& t);

// Comma-separated list "a,b,c" or inclusive range "lo:hi:n" with n points.
// "pi" and "2pi"-style multiples are accepted as numbers.
std::vector<double> parse_grid(const std::string& text);
double parse_number(const std::string& text);
std::vector<double> parse_vec3(const std::string& text);

// Reads `key=value` lines (# comments allowed) and splices them into argv as
// `--key=value` right after the subcommand, skipping keys already given on
// the command line so that flags override the file.
std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const std::vector<std::string>& subcommands);

}  // namespace cli
