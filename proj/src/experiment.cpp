// Copyright 2026 The cvgauss Authors
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

#include "cvgauss/experiment.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "cvgauss/matrix_io.h"

namespace cvgauss {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

struct Entry {
  std::string value;
  std::size_t line;
};

double to_double(const std::string& key, const Entry& e, const std::string& text) {
  std::size_t used = 0;
  double v = std::numeric_limits<double>::quiet_NaN();
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) throw ConfigError(key, e.line, "not a number: '" + text + "'");
  return v;
}

std::vector<double> to_list(const std::string& key, const Entry& e) {
  const std::string& v = e.value;
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
    const std::string inner = trim(v.substr(1, v.size() - 2));
    std::vector<double> out;
    if (inner.empty()) return out;
    for (const std::string& item : split(inner, ',')) out.push_back(to_double(key, e, item));
    return out;
  }
  if (v.size() >= 2 && v.front() == '(' && v.back() == ')') {
    const auto parts = split(v.substr(1, v.size() - 2), ',');
    if (parts.size() != 3) throw ConfigError(key, e.line, "range needs (start, stop, count)");
    const double start = to_double(key, e, parts[0]);
    const double stop = to_double(key, e, parts[1]);
    const double count = to_double(key, e, parts[2]);
    if (!(count >= 1.0) || count != std::floor(count) || count > 1e7) {
      throw ConfigError(key, e.line, "range count must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> out(n, start);
    for (std::size_t i = 1; i < n; ++i) {
      out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
  }
  return {to_double(key, e, v)};
}

std::size_t to_count(const std::string& key, const Entry& e, double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) throw ConfigError(key, e.line, "must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

const char* const kKnownKeys[] = {"protocol", "r",           "p",         "d_over_sigma", "N_list",
                                  "t_list",   "delta_prime", "grid_points", "prune_tol",  "output"};

}  // namespace

std::string config_help() {
  return "Config keys (key = value, '#' comments):\n"
         "  protocol      one_shot_squeeze | multicopy_squeeze | multicopy_ent (required)\n"
         "  r             squeezing parameter, > 0 (required)\n"
         "  p             displacement probability in [0, 1] (required)\n"
         "  d_over_sigma  list [a, b] or range (start, stop, count) (required)\n"
         "  N_list        copy counts, each >= 2 (multi-copy protocols)\n"
         "  t_list        transmissivities in (0, 1) (one_shot_squeeze; alias transmissivity_list)\n"
         "  delta_prime   acceptance half-width, one value or one per iteration (default e^-r)\n"
         "  grid_points   homodyne quadrature nodes, >= 8 (default 64)\n"
         "  prune_tol     branch pruning threshold (default 1e-12)\n"
         "  output        CSV path (default standard output)\n";
}

ExperimentConfig parse_config(std::istream& in) {
  std::map<std::string, Entry> entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", line_no, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key == "transmissivity_list") key = "t_list";
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
      throw ConfigError(key, line_no, "unknown key");
    }
    if (entries.count(key)) throw ConfigError(key, line_no, "duplicate key");
    entries[key] = {trim(line.substr(eq + 1)), line_no};
  }

  auto require = [&](const std::string& key) -> const Entry& {
    const auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError(key, 0, "missing required key");
    return it->second;
  };
  auto scalar = [&](const std::string& key) {
    const Entry& e = entries.at(key);
    return to_double(key, e, e.value);
  };

  ExperimentConfig cfg;
  SweepConfig& s = cfg.sweep;
  {
    const Entry& e = require("protocol");
    const auto proto = parse_protocol(e.value);
    if (!proto) throw ConfigError("protocol", e.line, "unknown protocol '" + e.value + "'");
    s.protocol = *proto;
  }
  s.r = to_double("r", require("r"), entries.at("r").value);
  if (!(s.r > 0.0) || !std::isfinite(s.r)) throw ConfigError("r", entries.at("r").line, "must be a positive finite number");
  s.p = to_double("p", require("p"), entries.at("p").value);
  if (!(s.p >= 0.0 && s.p <= 1.0)) throw ConfigError("p", entries.at("p").line, "must lie in [0, 1]");
  s.d_over_sigma = to_list("d_over_sigma", require("d_over_sigma"));
  if (s.protocol == Protocol::kOneShotSqueeze) {
    s.transmissivities = to_list("t_list", require("t_list"));
  } else {
    const Entry& e = require("N_list");
    for (double v : to_list("N_list", e)) s.copies.push_back(to_count("N_list", e, v));
  }
  if (entries.count("delta_prime")) s.delta_prime = to_list("delta_prime", entries.at("delta_prime"));
  if (entries.count("grid_points")) {
    s.grid.nodes = to_count("grid_points", entries.at("grid_points"), scalar("grid_points"));
  }
  if (entries.count("prune_tol")) s.prune_tol = scalar("prune_tol");
  if (entries.count("output")) cfg.output = entries.at("output").value;

  try {
    s.validate();
  } catch (const ConfigError& e) {
    const auto it = entries.find(e.key());
    throw ConfigError(e.key(), it == entries.end() ? 0 : it->second.line, e.message());
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
  return parse_config(in);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    out << to_string(row.protocol) << ',' << format_number(row.r) << ',' << format_number(row.p) << ','
        << format_number(row.t) << ',' << row.copies << ',' << format_number(row.d_over_sigma) << ','
        << format_number(row.fidelity) << ',' << format_number(row.variance) << ','
        << format_number(row.success_prob) << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("read_csv: missing header");
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    const auto where = "read_csv: line " + std::to_string(line_no);
    if (f.size() != 9) throw std::runtime_error(where + ": expected 9 fields");
    const auto proto = parse_protocol(f[0]);
    if (!proto) throw std::runtime_error(where + ": unknown protocol");
    try {
      rows.push_back({*proto, std::stod(f[1]), std::stod(f[2]), std::stod(f[3]),
                      static_cast<std::size_t>(std::stoull(f[4])), std::stod(f[5]), std::stod(f[6]), std::stod(f[7]),
                      std::stod(f[8]), std::numeric_limits<double>::quiet_NaN(), 0});
    } catch (const std::logic_error&) {
      throw std::runtime_error(where + ": malformed number");
    }
  }
  return rows;
}

}  // namespace cvgauss
