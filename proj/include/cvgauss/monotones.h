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

// Resource measures for the squeezing and two-mode entanglement theories.
//
// kappa(V) is the least t >= 1 such that tV is a free covariance matrix. The
// free sets are {V : V >= 1} for squeezing and the PPT (separable) two-mode
// covariance matrices for entanglement.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvgauss/mixture.h"
#include "cvgauss/symplectic.h"

namespace cvgauss {

enum class Theory { kSqueezing, kEntanglement1x1 };

std::string_view to_string(Theory theory);

struct MonotoneReport {
  std::string measure;
  double value = 0.0;
  /// Scaling factor t for kappa-type measures.
  std::optional<double> scaling;
  /// Unit quadrature direction attaining the minimum variance.
  std::optional<Vec> direction;
  /// (weight, kappa) of each branch in the decomposition used.
  std::vector<std::pair<double, double>> decomposition;

  std::string witness() const;
  /// "measure=<name> value=<v> witness=<...>"
  std::string line() const;
};

/// PPT test: Lambda V Lambda + i Omega >= -slack with Lambda = diag(1, 1, 1, -1).
bool is_separable_1x1(const Mat& cov, double slack = 1e-9);
bool is_free(const Mat& cov, Theory theory);

MonotoneReport kappa_squeeze(const Mat& cov);
MonotoneReport kappa_ent(const Mat& cov);
MonotoneReport kappa(const Mat& cov, Theory theory);

/// Sum_k w_k kappa(V_k) over the mixture's own decomposition. This bounds the
/// convex-roof measure from above; it is not the infimum.
MonotoneReport kappa_tilde_ub(const GaussianMixture& m, Theory theory);

/// Smallest eigenvalue of the aggregate covariance.
MonotoneReport m_var(const GaussianMixture& m);
/// min(1, m_var).
MonotoneReport m_var_bar(const GaussianMixture& m);

}  // namespace cvgauss
