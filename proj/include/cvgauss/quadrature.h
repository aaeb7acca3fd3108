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

#include <cstddef>
#include <functional>
#include <vector>

namespace cvgauss {

struct QuadratureNode {
  double x;
  double w;
};

/// K-point Gauss-Legendre rule mapped onto [a, b].
std::vector<QuadratureNode> gauss_legendre(std::size_t k, double a, double b);

/// Probability that Normal(mean, variance) lands in (lo, hi]. Infinite
/// endpoints are allowed.
double normal_interval_mass(double mean, double variance, double lo, double hi);

double normal_density(double x, double mean, double variance);

/// Adaptive Simpson integration to an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tolerance,
                        int max_depth = 50);

}  // namespace cvgauss
