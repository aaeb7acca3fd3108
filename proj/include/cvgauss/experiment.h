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

#pragma once

// Experiment configuration files and CSV output.
//
// Config files are flat `key = value` text; `#` starts a comment. Values are
// scalars, lists `[a, b, c]`, or inclusive linear ranges `(start, stop, count)`.

#include <iosfwd>
#include <string>
#include <vector>

#include "cvgauss/errors.h"
#include "cvgauss/protocols.h"

namespace cvgauss {

struct ExperimentConfig {
  SweepConfig sweep;
  /// Empty: CSV goes to standard output.
  std::string output;
};

/// Help text listing keys and defaults.
std::string config_help();

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

inline constexpr const char* kCsvHeader = "protocol,r,p,t,N,d_over_sigma,fidelity,x_variance,success_prob";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
/// Inverse of write_csv for the columns it emits.
std::vector<SweepRow> read_csv(std::istream& in);

}  // namespace cvgauss
