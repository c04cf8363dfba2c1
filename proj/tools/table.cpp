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

#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cli {

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string meta_value(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_value(v.get<double>());
  return v.dump();
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  os << "# dicke-fringe v" << t.provenance.value("version", std::string("?")) << '\n';
  os << "# command=" << t.command << '\n';
  for (const auto& [k, v] : t.params.items()) os << "# " << k << '=' << meta_value(v) << '\n';
  for (const auto& [k, v] : t.provenance.items()) {
    if (k == "version") continue;
    os << "# " << k << '=' << meta_value(v) << '\n';
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_value(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  j["params"] = t.params;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isnan(v)) r.push_back(nullptr);
      else r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["provenance"] = t.provenance;
  j["provenance"]["command"] = t.command;
  os << j.dump(2) << '\n';
}

double parse_number(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty number");
  // Optional multiple of pi: "pi", "2pi", "-0.5pi".
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    const std::string head = s.substr(0, s.size() - 2);
    double factor = 1.0;
    if (head == "-") factor = -1.0;
    else if (!head.empty() && head != "+") factor = parse_number(head);
    return factor * std::numbers::pi;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  if (!std::isfinite(v)) throw UsageError("non-finite value: '" + s + "'");
  return v;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty grid");
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("range grids are lo:hi:n, got '" + s + "'");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double n = parse_number(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e7)
      throw UsageError("range point count must be a positive integer, got '" + parts[2] + "'");
    const auto count = static_cast<std::size_t>(n);
    if (count == 1) return {lo};
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

std::vector<double> parse_vec3(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_number(item));
  if (v.size() != 3) throw UsageError("expected three comma-separated components, got '" + text + "'");
  return v;
}

std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const std::vector<std::string>& subcommands) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config")
      throw UsageError(path + ":" + std::to_string(lineno) + ": invalid key");
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) injected.push_back(flag + "=" + value);
  }

  auto pos = std::find_if(args.begin() + (args.empty() ? 0 : 1), args.end(),
                          [&](const std::string& a) {
                            return std::find(subcommands.begin(), subcommands.end(), a) !=
                                   subcommands.end();
                          });
  std::vector<std::string> out(args.begin(), pos);
  if (pos != args.end()) {
    out.push_back(*pos);
    ++pos;
  }
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), pos, args.end());
  return out;
}

}  // namespace cli
