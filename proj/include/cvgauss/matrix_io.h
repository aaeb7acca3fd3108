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

// Plain-text files for covariance matrices and Gaussian mixtures.
//
// Matrix file:                 Mixture file:
//   cov <n_modes>                mixture <branches> <n_modes>
//   <2n rows of 2n numbers>      weight <w>
//   [mean <2n numbers>]          mean <2n numbers>
//                                <2n rows of 2n numbers>
//                                ... (repeated per branch)
//
// Lines starting with '#' are ignored. Numbers are written with 17
// significant digits so a write/read round trip is exact.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "cvgauss/mixture.h"

namespace cvgauss {

class FileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf-style %.<digits>g.
std::string format_number(double value, int digits = 9);

void write_state(std::ostream& out, const GaussianState& state);
void write_mixture(std::ostream& out, const GaussianMixture& m);

/// Reads either file kind, detected from the first keyword.
std::variant<GaussianState, GaussianMixture> read_state_file(std::istream& in);
std::variant<GaussianState, GaussianMixture> read_state_file(const std::string& path);

}  // namespace cvgauss
