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


#include "cvgauss/symplectic.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

namespace cvgauss {
namespace {

constexpr double kR = 0.7;

TEST(SymplecticForm, BlockDiagonal) {
  const Mat omega = symplectic_form(2);
  EXPECT_EQ(omega(0, 1), 1.0);
  EXPECT_EQ(omega(1, 0), -1.0);
  EXPECT_EQ(omega(2, 3), 1.0);
  EXPECT_EQ(omega(0, 3), 0.0);
}

TEST(Vacuum, IdentityCovariance) {
  EXPECT_TRUE(vacuum(1).cov().isIdentity());
  EXPECT_TRUE(vacuum(2).cov().isIdentity());
  EXPECT_TRUE(vacuum(2).mean().isZero());
  EXPECT_NEAR(uncertainty_margin(vacuum(1).cov()), 0.0, 1e-12);
  EXPECT_TRUE(is_valid_cm(vacuum(1).cov()));
}

TEST(GaussianState, RejectsAsymmetricOrUnphysical) {
  Mat bad = Mat::Identity(2, 2);
  bad(0, 1) = 0.1;
  EXPECT_THROW(GaussianState(Vec::Zero(2), bad), std::invalid_argument);
  EXPECT_THROW(GaussianState(Vec::Zero(2), 0.5 * Mat::Identity(2, 2)), std::invalid_argument);
  EXPECT_THROW(GaussianState(Vec::Zero(3), Mat::Identity(3, 3)), DimensionError);
}

TEST(SingleModeSqueezer, SqueezesX) {
  const GaussianState s = apply(single_mode_squeezer(kR), vacuum(1));
  EXPECT_NEAR(s.cov()(0, 0), 0.246596964, 1e-9);
  EXPECT_NEAR(s.cov()(1, 1), 4.05519997, 1e-8);
  EXPECT_NEAR(s.cov()(0, 1), 0.0, 1e-15);
  EXPECT_TRUE(single_mode_squeezer(0.0).matrix().isIdentity());
  const SymplecticOp round = compose(single_mode_squeezer(kR), single_mode_squeezer(-kR));
  EXPECT_TRUE(round.matrix().isIdentity(1e-14));
}

TEST(TwoModeSqueezer, SqueezesXPlus) {
  EXPECT_TRUE(two_mode_squeezer(0.0).matrix().isIdentity());
  const GaussianState s = apply(two_mode_squeezer(kR), vacuum(2));
  Vec xp = Vec::Zero(4);
  xp(0) = xp(2) = std::numbers::sqrt2 / 2;
  EXPECT_NEAR(xp.dot(s.cov() * xp), std::exp(-2 * kR), 1e-12);
  Vec pm = Vec::Zero(4);
  pm(1) = std::numbers::sqrt2 / 2;
  pm(3) = -std::numbers::sqrt2 / 2;
  EXPECT_NEAR(pm.dot(s.cov() * pm), std::exp(-2 * kR), 1e-12);
  EXPECT_NEAR(s.cov()(0, 0), 2.15089847, 1e-8);
  EXPECT_NEAR(s.cov()(1, 1), 2.15089847, 1e-8);
  EXPECT_TRUE(is_pure(s.cov()));
}

TEST(BeamSplitter, FiftyFiftySplitsDisplacement) {
  EXPECT_TRUE(beam_splitter(0.0, 0, 1, 2).matrix().isIdentity());
  const double d = 3.0;
  const GaussianState in = apply(SymplecticOp::displacement(2, 0, d), vacuum(2));
  const GaussianState out = apply(beam_splitter(std::numbers::pi / 4, 0, 1, 2), in);
  EXPECT_NEAR(std::abs(out.mean()(0)), d / std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(std::abs(out.mean()(2)), d / std::numbers::sqrt2, 1e-12);
}

TEST(BeamSplitter, IdenticalInputsStayProduct) {
  const GaussianState sq = apply(single_mode_squeezer(kR), vacuum(1));
  const GaussianState pair = tensor(sq, sq);
  const GaussianState out = apply(beam_splitter(std::numbers::pi / 4, 0, 1, 2), pair);
  EXPECT_TRUE(out.cov().isApprox(pair.cov(), 1e-12));
}

TEST(PhaseShift, QuarterTurnSwapsQuadratures) {
  EXPECT_TRUE(phase_shift(0.0).matrix().isIdentity());
  const GaussianState s(Vec::Zero(2), Eigen::Vector2d(2.0, 3.0).asDiagonal().toDenseMatrix());
  const GaussianState out = apply(phase_shift(std::numbers::pi / 2), s);
  EXPECT_NEAR(out.cov()(0, 0), 3.0, 1e-12);
  EXPECT_NEAR(out.cov()(1, 1), 2.0, 1e-12);
  const GaussianState rot = apply(phase_shift(0.37), apply(single_mode_squeezer(kR), vacuum(1)));
  Eigen::SelfAdjointEigenSolver<Mat> es(rot.cov());
  EXPECT_NEAR(es.eigenvalues()(0), std::exp(-2 * kR), 1e-12);
}

TEST(Apply, DisplacementMovesMeanOnly) {
  const GaussianState s = apply(SymplecticOp::displacement(1, 0, 2.5, -1.0), vacuum(1));
  EXPECT_DOUBLE_EQ(s.mean()(0), 2.5);
  EXPECT_DOUBLE_EQ(s.mean()(1), -1.0);
  EXPECT_TRUE(s.cov().isIdentity());
  EXPECT_EQ(apply(SymplecticOp::identity(1), s), s);
}

TEST(Apply, RejectsModeMismatch) {
  EXPECT_THROW(apply(single_mode_squeezer(0.1), vacuum(2)), DimensionError);
  EXPECT_THROW(beam_splitter(0.1, 0, 0, 2), DimensionError);
  EXPECT_THROW(beam_splitter(0.1, 0, 2, 2), DimensionError);
}

TEST(SymplecticOp, RejectsNonSymplectic) {
  EXPECT_THROW(SymplecticOp(2.0 * Mat::Identity(2, 2), Vec::Zero(2)), std::invalid_argument);
}

TEST(TensorAndTrace, RoundTrip) {
  const GaussianState a = apply(single_mode_squeezer(0.3), vacuum(1));
  const GaussianState b = apply(SymplecticOp::displacement(1, 0, 1.0), vacuum(1));
  EXPECT_EQ(tensor(vacuum(1), vacuum(1)), vacuum(2));
  const std::vector<std::size_t> first{0}, second{1};
  EXPECT_EQ(partial_trace(tensor(a, b), first), a);
  EXPECT_EQ(partial_trace(tensor(a, b), second), b);
}

TEST(TensorAndTrace, TmsvMarginalIsThermal) {
  const GaussianState s = apply(two_mode_squeezer(kR), vacuum(2));
  const std::vector<std::size_t> keep{1};
  const GaussianState m = partial_trace(s, keep);
  EXPECT_TRUE(m.cov().isApprox(std::cosh(2 * kR) * Mat::Identity(2, 2), 1e-12));
}

TEST(Validity, Examples) {
  EXPECT_TRUE(is_valid_cm(Mat::Identity(2, 2)));
  EXPECT_TRUE(is_pure(Mat::Identity(2, 2)));
  EXPECT_FALSE(is_valid_cm(0.5 * Mat::Identity(2, 2)));
  const Mat sq = Eigen::Vector2d(std::exp(-1.4), std::exp(1.4)).asDiagonal();
  EXPECT_TRUE(is_valid_cm(sq));
  EXPECT_TRUE(is_pure(sq));
  EXPECT_FALSE(is_pure(2.0 * Mat::Identity(2, 2)));
}

TEST(SymplecticEigenvalues, ThermalAndPure) {
  EXPECT_NEAR(symplectic_eigenvalues(3.0 * Mat::Identity(2, 2))(0), 3.0, 1e-12);
  const GaussianState s = apply(two_mode_squeezer(kR), vacuum(2));
  const Eigen::VectorXd nu = symplectic_eigenvalues(s.cov());
  EXPECT_NEAR(nu(0), 1.0, 1e-10);
  EXPECT_NEAR(nu(1), 1.0, 1e-10);
}

TEST(Wigner, NormalizedAtOrigin) {
  const double peak = 1.0 / (2.0 * std::numbers::pi);
  EXPECT_NEAR(wigner(vacuum(1), Vec::Zero(2)), peak, 1e-15);
  const GaussianState moved = apply(SymplecticOp::displacement(1, 0, 1.5, -0.5), vacuum(1));
  EXPECT_NEAR(wigner(moved, moved.mean()), peak, 1e-15);
}

TEST(Wigner, IntegratesToOne) {
  const GaussianState s = apply(SymplecticOp::displacement(1, 0, 0.4), apply(single_mode_squeezer(0.5), vacuum(1)));
  const double h = 0.02;
  double total = 0.0;
  for (double x = -8.0; x <= 8.0; x += h) {
    for (double p = -12.0; p <= 12.0; p += h) total += wigner(s, Eigen::Vector2d(x, p)) * h * h;
  }
  EXPECT_NEAR(total, 1.0, 1e-3);
}

TEST(Overlap, Examples) {
  EXPECT_NEAR(pure_overlap(vacuum(1), vacuum(1)), 1.0, 1e-15);
  const GaussianState disp = apply(SymplecticOp::displacement(1, 0, 2.0), vacuum(1));
  EXPECT_NEAR(pure_overlap(vacuum(1), disp), std::exp(-1.0), 1e-12);
  const GaussianState sq = apply(single_mode_squeezer(kR), vacuum(1));
  EXPECT_NEAR(pure_overlap(vacuum(1), sq), 1.0 / std::cosh(kR), 1e-12);
  EXPECT_NEAR(overlap_trace(sq, sq), 1.0, 1e-12);
  EXPECT_THROW(pure_overlap(vacuum(1), GaussianState(Vec::Zero(2), 2.0 * Mat::Identity(2, 2))),
               std::invalid_argument);
}

TEST(Overlap, MixedStatePurity) {
  const GaussianState thermal(Vec::Zero(2), 3.0 * Mat::Identity(2, 2));
  EXPECT_NEAR(overlap_trace(thermal, thermal), 1.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace cvgauss
