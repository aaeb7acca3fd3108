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

// Finite convex mixtures of Gaussian states and interval post-selected
// homodyne conditioning on them.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "cvgauss/symplectic.h"

namespace cvgauss {

enum class Norm { kNormalized, kSubnormalized };

struct Branch {
  double weight;
  GaussianState state;
};

/// Weighted list of Gaussian branches sharing one mode count.
///
/// A normalized mixture has weights summing to one; a subnormalized one
/// carries total weight in (0, 1], which is how post-selection success
/// probabilities propagate through later steps.
class GaussianMixture {
 public:
  GaussianMixture(std::vector<Branch> branches, Norm norm);
  explicit GaussianMixture(GaussianState state);

  const std::vector<Branch>& branches() const { return branches_; }
  Norm norm() const { return norm_; }
  std::size_t size() const { return branches_.size(); }
  std::size_t n_modes() const { return branches_.front().state.n_modes(); }
  double total_weight() const;

 private:
  std::vector<Branch> branches_;
  Norm norm_;
};

/// Thrown when post-selection leaves nothing behind.
class ZeroProbabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Half-open accept window (lo, hi]. lo == hi means conditioning on the
/// single outcome lo.
struct AcceptInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Measurement of q = l^T x followed by removal of `measured_modes`.
struct HomodyneSpec {
  Vec functional;
  AcceptInterval accept;
  std::vector<std::size_t> measured_modes;

  /// x quadrature of one mode.
  static HomodyneSpec x_quadrature(std::size_t n_modes, std::size_t mode, AcceptInterval accept);
  /// (x_a + x_b)/sqrt2 on two modes, both of which are removed.
  static HomodyneSpec x_plus(std::size_t n_modes, std::size_t mode_a, std::size_t mode_b, AcceptInterval accept);

  void validate(std::size_t n_modes) const;
};

struct GridPolicy {
  std::size_t nodes = 64;
  /// Support truncation, in standard deviations of the widest branch.
  double support_sigmas = 8.0;
};

enum class ConditioningPath {
  kAuto,   // exact when the uncorrelated criterion holds, grid otherwise
  kExact,  // require the exact path; throw if the criterion fails
  kGrid,   // always discretize
};

GaussianMixture apply_op(const SymplecticOp& op, const GaussianMixture& m);
GaussianMixture tensor_mix(const GaussianMixture& a, const GaussianMixture& b);
GaussianMixture partial_trace_mix(const GaussianMixture& m, std::span<const std::size_t> keep_modes);

/// Marginal of one branch along a quadrature functional.
struct OutcomeMoments {
  double mean;
  double variance;
};
std::vector<OutcomeMoments> outcome_density(const GaussianMixture& m, const Vec& functional);

/// Covariance update and gain of a partial selective homodyne measurement.
///
/// With cov = [[A, B], [B^T, C]] split into kept and measured modes and P the
/// measured projector, cov' = A - B (PCP)^+ B^T and gain = B (PCP)^+, so that
/// mean' = m_A + gain (P q - P m_B) for an outcome vector q.
struct SelectiveHomodyne {
  Mat cov;
  Mat gain;
};
SelectiveHomodyne selective_homodyne(const Mat& cov, std::span<const std::size_t> kept,
                                     std::span<const std::size_t> measured, const Mat& projector);

Mat pseudo_inverse(const Mat& m);
/// diag(1, 0, 1, 0, ...): the x quadratures of `n_modes` modes.
Mat x_projector(std::size_t n_modes);

/// True when, in every branch, the kept modes have zero covariance with l^T x.
bool kept_modes_uncorrelated(const GaussianMixture& m, const HomodyneSpec& spec, double tolerance = 1e-10);

struct ConditionResult {
  GaussianMixture mixture;
  /// Accepted mass relative to the input's total weight.
  double success_prob;
  ConditioningPath path_taken;
};

ConditionResult homodyne_condition(const GaussianMixture& m, const HomodyneSpec& spec, const GridPolicy& grid = {},
                                   ConditioningPath path = ConditioningPath::kAuto, bool renormalize = false);

struct Moments {
  Vec mean;
  Mat cov;
};
Moments moments(const GaussianMixture& m, bool renormalize = false);
double quadrature_variance(const GaussianMixture& m, const Vec& functional, bool renormalize = false);

/// Sum_k w_k Tr[rho_k psi] against a pure target.
double fidelity_to_pure(const GaussianMixture& m, const GaussianState& target, bool renormalize = false);

GaussianMixture prune(const GaussianMixture& m, double tolerance = 1e-12);
GaussianMixture renormalize(const GaussianMixture& m);

}  // namespace cvgauss
