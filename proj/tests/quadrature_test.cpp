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
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

namespace cvgauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto nodes = gauss_legendre(8, -1.0, 3.0);
  ASSERT_EQ(nodes.size(), 8u);
  double sum = 0.0, cubic = 0.0;
  for (const auto& n : nodes) {
    sum += n.w;
    cubic += n.w * n.x * n.x * n.x;
  }
  EXPECT_NEAR(sum, 4.0, 1e-13);
  EXPECT_NEAR(cubic, (81.0 - 1.0) / 4.0, 1e-12);
}

TEST(NormalIntervalMass, Identities) {
  EXPECT_NEAR(normal_interval_mass(0.0, 1.0, -1.0, 1.0), std::erf(1.0 / std::numbers::sqrt2), 1e-15);
  const double s = std::exp(-1.4);
  EXPECT_NEAR(normal_interval_mass(0.0, s, -std::exp(-0.7), std::exp(-0.7)), 0.682689492, 1e-9);
  EXPECT_DOUBLE_EQ(normal_interval_mass(0.0, 1.0, -kInf, kInf), 1.0);
  EXPECT_NEAR(normal_interval_mass(0.0, 1.0, -kInf, 0.0), 0.5, 1e-15);
  EXPECT_EQ(normal_interval_mass(0.0, 1.0, 2.0, 2.0), 0.0);
}

TEST(NormalIntervalMass, FarTailKeepsPrecision) {
  const double tail = normal_interval_mass(0.0, 1.0, 30.0, kInf);
  EXPECT_GT(tail, 0.0);
  EXPECT_NEAR(std::log(tail), std::log(0.5 * std::erfc(30.0 / std::numbers::sqrt2)), 1e-9);
}

TEST(AdaptiveSimpson, GaussianIntegral) {
  const double v = adaptive_simpson([](double x) { return normal_density(x, 0.3, 2.0); }, -20.0, 20.0, 1e-10);
  EXPECT_NEAR(v, 1.0, 1e-9);
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-10), 2.0, 1e-9);
}

}  // namespace
}  // namespace cvgauss
