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

#include "cvgauss/quadrature.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace cvgauss {

std::vector<QuadratureNode> gauss_legendre(std::size_t k, double a, double b) {
  if (k == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(k), &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_legendre: table allocation failed");
  std::vector<QuadratureNode> nodes(k);
  for (std::size_t i = 0; i < k; ++i) {
    gsl_integration_glfixed_point(a, b, i, &nodes[i].x, &nodes[i].w, table.get());
  }
  return nodes;
}

double normal_interval_mass(double mean, double variance, double lo, double hi) {
  if (!(variance > 0.0)) throw std::invalid_argument("normal_interval_mass: variance must be positive");
  if (!(hi > lo)) return 0.0;
  const double sd = std::sqrt(variance);
  const double za = (lo - mean) / sd;
  const double zb = (hi - mean) / sd;
  // Upper-tail form keeps precision when both endpoints sit right of the mean.
  if (za > 0.0) return 0.5 * (std::erfc(za / std::numbers::sqrt2) - std::erfc(zb / std::numbers::sqrt2));
  return 0.5 * (std::erfc(-zb / std::numbers::sqrt2) - std::erfc(-za / std::numbers::sqrt2));
}

double normal_density(double x, double mean, double variance) {
  const double z = x - mean;
  return std::exp(-0.5 * z * z / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tolerance, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tolerance, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tolerance, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tolerance,
                        int max_depth) {
  if (!(b > a)) return 0.0;
  // Seed with a uniform split so narrow peaks are not missed by the first estimate.
  constexpr int kSeedPanels = 32;
  const double h = (b - a) / kSeedPanels;
  double total = 0.0;
  for (int i = 0; i < kSeedPanels; ++i) {
    const double lo = a + i * h, hi = (i + 1 == kSeedPanels) ? b : a + (i + 1) * h;
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, tolerance / kSeedPanels, max_depth);
  }
  return total;
}

}  // namespace cvgauss
