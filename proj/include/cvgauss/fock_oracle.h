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

// Brute-force number-basis reference for one and two modes.
//
// States are built by exponentiating truncated ladder-operator generators, and
// homodyne statistics come from position wavefunctions (Hermite functions with
// vacuum <x^2> = 1). Nothing here calls into the Gaussian closed forms, so it
// can be used to check them.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "cvgauss/mixture.h"

namespace cvgauss::fock {

inline constexpr double kNormTolerance = 1e-8;

/// Amplitudes in the number basis. Two-mode vectors are stored row-major:
/// index m * (cutoff + 1) + n for |m>|n>.
struct FockVector {
  std::size_t cutoff = 0;
  std::size_t n_modes = 1;
  Eigen::VectorXcd amplitudes;

  std::size_t dim() const { return cutoff + 1; }
  double norm_squared() const { return amplitudes.squaredNorm(); }
  /// False when the truncated norm falls short of 1 by more than kNormTolerance.
  bool norm_ok() const { return 1.0 - norm_squared() < kNormTolerance; }
};

/// D(d) S(r)|0> with mean x = d.
FockVector fock_squeezed_displaced(double r, double d, std::size_t cutoff);

/// Two-mode squeezed vacuum, amplitudes (-tanh r)^n / cosh r on |n, n>, which
/// is squeezed in x_0 + x_1 and p_0 - p_1.
FockVector fock_tmsv(double r, std::size_t cutoff);

/// Displaces one mode of a state along x by d.
FockVector fock_displace(const FockVector& v, std::size_t mode, double d);

double oracle_overlap(const FockVector& a, const FockVector& b);

/// Position wavefunction of a single-mode state at x.
std::complex<double> wavefunction(const FockVector& v, double x);

/// Probability that x lands in (lo, hi]; integration is clipped to [-10, 10].
double oracle_interval_prob(const FockVector& v, double lo, double hi);

struct OracleConditioned {
  /// Normalised single-mode density matrix of mode 0.
  Eigen::MatrixXcd rho;
  /// Interval probability; zero for point conditioning.
  double prob;
  /// Outcome density at the point for point conditioning; zero otherwise.
  double density;
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
};

/// Conditions mode 0 of a two-mode state on x of mode 1 in (lo, hi], or on the
/// single outcome lo when lo == hi.
OracleConditioned oracle_condition(const FockVector& v, double lo, double hi);

/// First and second moments of a single-mode density matrix.
void moments_of(const Eigen::MatrixXcd& rho, Eigen::Vector2d& mean, Eigen::Matrix2d& cov);

/// Worst engine-vs-oracle deviations over the pinned validation matrix.
struct ValidationReport {
  double overlap = 0.0;
  double interval_prob = 0.0;
  double conditioned_moments = 0.0;
  double point_conditioning = 0.0;
  double cutoff_doubling = 0.0;
  std::size_t cases = 0;
};

/// r in {0, 0.35, 0.7}, d in {0, 1, 2, 4}, intervals (-inf, 0], (-1, 1],
/// (0.5, 2]; cutoff 60 (40 for the point-conditioning check).
ValidationReport validate_pinned_matrix(bool check_cutoff_doubling = false);

}  // namespace cvgauss::fock
