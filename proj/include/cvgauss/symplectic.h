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

// Single-mode and multi-mode Gaussian states in the hbar = 2 convention.
//
// Quadratures are ordered (x_1, p_1, ..., x_n, p_n), so mode k owns rows
// 2k and 2k+1 of every vector and matrix. The vacuum has covariance equal to
// the identity and a covariance matrix V is physical iff V + i*Omega >= 0.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cvgauss {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace tol {
inline constexpr double kSymmetry = 1e-10;
inline constexpr double kSymplectic = 1e-10;
inline constexpr double kPhysical = 1e-9;
inline constexpr double kPurity = 1e-8;
}  // namespace tol

/// Thrown when inputs disagree in mode count or index range.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symplectic form for n modes: block diagonal with [[0, 1], [-1, 0]].
Mat symplectic_form(std::size_t n_modes);

/// Index of the x (offset 0) or p (offset 1) quadrature of a mode.
constexpr std::size_t quad_index(std::size_t mode, std::size_t offset) { return 2 * mode + offset; }

/// Mean vector plus covariance matrix of an n-mode Gaussian state.
///
/// Construction validates symmetry and the uncertainty relation; any value
/// that exists is physical.
class GaussianState {
 public:
  GaussianState(Vec mean, Mat cov);

  const Vec& mean() const { return mean_; }
  const Mat& cov() const { return cov_; }
  std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size()) / 2; }

  friend bool operator==(const GaussianState& a, const GaussianState& b) {
    return a.mean_ == b.mean_ && a.cov_ == b.cov_;
  }

 private:
  Vec mean_;
  Mat cov_;
};

/// Affine symplectic map x -> S x + d.
class SymplecticOp {
 public:
  SymplecticOp(Mat s, Vec d);

  const Mat& matrix() const { return s_; }
  const Vec& displacement() const { return d_; }
  std::size_t n_modes() const { return static_cast<std::size_t>(s_.rows()) / 2; }

  static SymplecticOp identity(std::size_t n_modes);
  static SymplecticOp displacement(Vec d);
  /// Displacement along a single quadrature of one mode.
  static SymplecticOp displacement(std::size_t n_modes, std::size_t mode, double dx, double dp = 0.0);

 private:
  Mat s_;
  Vec d_;
};

/// `outer` applied after `inner`.
SymplecticOp compose(const SymplecticOp& outer, const SymplecticOp& inner);

/// diag(e^{-r}, e^{r}) on `mode`; squeezes x for r > 0.
SymplecticOp single_mode_squeezer(double r, std::size_t mode = 0, std::size_t n_modes = 1);

/// Two-mode squeezer on (mode_a, mode_b). Acting on the vacuum it gives
/// Var((x_a + x_b)/sqrt2) = Var((p_a - p_b)/sqrt2) = e^{-2r}.
SymplecticOp two_mode_squeezer(double r, std::size_t mode_a = 0, std::size_t mode_b = 1,
                               std::size_t n_modes = 2);

/// Beam splitter with transmissivity cos^2(theta):
/// a -> cos(theta) a + sin(theta) b, b -> -sin(theta) a + cos(theta) b
/// on both quadratures.
SymplecticOp beam_splitter(double theta, std::size_t mode_a, std::size_t mode_b, std::size_t n_modes);

/// Rotation x -> cos(phi) x + sin(phi) p, p -> -sin(phi) x + cos(phi) p.
SymplecticOp phase_shift(double phi, std::size_t mode = 0, std::size_t n_modes = 1);

GaussianState vacuum(std::size_t n_modes);
GaussianState apply(const SymplecticOp& op, const GaussianState& state);
GaussianState tensor(const GaussianState& a, const GaussianState& b);
/// Keeps `keep_modes` in the given order.
GaussianState partial_trace(const GaussianState& state, std::span<const std::size_t> keep_modes);

/// Gathers the rows/columns of the listed modes.
Mat select_modes(const Mat& cov, std::span<const std::size_t> modes);
Vec select_modes(const Vec& mean, std::span<const std::size_t> modes);
Mat cross_block(const Mat& cov, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

double min_eigenvalue(const Mat& symmetric);
/// Smallest eigenvalue of the Hermitian matrix cov + i*Omega.
double uncertainty_margin(const Mat& cov);
Eigen::VectorXd symplectic_eigenvalues(const Mat& cov);

bool is_valid_cm(const Mat& cov, double slack = tol::kPhysical);
bool is_pure(const Mat& cov, double tolerance = tol::kPurity);

/// Wigner function, normalised to unit integral over phase space.
double wigner(const GaussianState& state, const Vec& point);

/// Tr[rho_a rho_b] for two Gaussian states (no purity requirement).
double overlap_trace(const GaussianState& a, const GaussianState& b);
/// |<psi_a|psi_b>|^2; both inputs must be pure.
double pure_overlap(const GaussianState& a, const GaussianState& b);

}  // namespace cvgauss
