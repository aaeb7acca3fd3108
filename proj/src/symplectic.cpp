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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace cvgauss {

namespace {

void require_mode(std::size_t mode, std::size_t n_modes) {
  if (mode >= n_modes) {
    throw DimensionError("mode index " + std::to_string(mode) + " out of range for " +
                         std::to_string(n_modes) + " modes");
  }
}

bool is_symmetric(const Mat& m) {
  return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= tol::kSymmetry;
}

}  // namespace

Mat symplectic_form(std::size_t n_modes) {
  Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

GaussianState::GaussianState(Vec mean, Mat cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw DimensionError("mean vector must have positive even length");
  }
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw DimensionError("covariance shape does not match mean length");
  }
  if (!is_symmetric(cov_)) {
    throw std::invalid_argument("covariance matrix is not symmetric");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  if (uncertainty_margin(cov_) < -tol::kPhysical) {
    throw std::invalid_argument("covariance matrix violates the uncertainty relation");
  }
}

SymplecticOp::SymplecticOp(Mat s, Vec d) : s_(std::move(s)), d_(std::move(d)) {
  if (s_.rows() != s_.cols() || s_.rows() % 2 != 0 || s_.rows() == 0) {
    throw DimensionError("symplectic matrix must be square with even positive size");
  }
  if (d_.size() != s_.rows()) {
    throw DimensionError("displacement length does not match symplectic matrix");
  }
  const Mat omega = symplectic_form(n_modes());
  const double err = (s_ * omega * s_.transpose() - omega).cwiseAbs().maxCoeff();
  if (err > tol::kSymplectic) {
    throw std::invalid_argument("matrix is not symplectic (|S Omega S^T - Omega| = " + std::to_string(err) + ")");
  }
}

SymplecticOp SymplecticOp::identity(std::size_t n_modes) {
  if (n_modes == 0) throw DimensionError("n_modes must be positive");
  return {Mat::Identity(2 * n_modes, 2 * n_modes), Vec::Zero(2 * n_modes)};
}

SymplecticOp SymplecticOp::displacement(Vec d) {
  const auto n = d.size();
  return {Mat::Identity(n, n), std::move(d)};
}

SymplecticOp SymplecticOp::displacement(std::size_t n_modes, std::size_t mode, double dx, double dp) {
  require_mode(mode, n_modes);
  Vec d = Vec::Zero(2 * n_modes);
  d(quad_index(mode, 0)) = dx;
  d(quad_index(mode, 1)) = dp;
  return displacement(std::move(d));
}

SymplecticOp compose(const SymplecticOp& outer, const SymplecticOp& inner) {
  if (outer.n_modes() != inner.n_modes()) throw DimensionError("compose: mode count mismatch");
  return {outer.matrix() * inner.matrix(), outer.matrix() * inner.displacement() + outer.displacement()};
}

SymplecticOp single_mode_squeezer(double r, std::size_t mode, std::size_t n_modes) {
  if (!std::isfinite(r)) throw std::invalid_argument("squeezing parameter must be finite");
  require_mode(mode, n_modes);
  Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
  s(quad_index(mode, 0), quad_index(mode, 0)) = std::exp(-r);
  s(quad_index(mode, 1), quad_index(mode, 1)) = std::exp(r);
  return {std::move(s), Vec::Zero(2 * n_modes)};
}

SymplecticOp two_mode_squeezer(double r, std::size_t mode_a, std::size_t mode_b, std::size_t n_modes) {
  if (!std::isfinite(r)) throw std::invalid_argument("squeezing parameter must be finite");
  require_mode(mode_a, n_modes);
  require_mode(mode_b, n_modes);
  if (mode_a == mode_b) throw DimensionError("two_mode_squeezer needs distinct modes");
  const double c = std::cosh(r);
  const double sh = std::sinh(r);
  Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
  const std::size_t xa = quad_index(mode_a, 0), pa = quad_index(mode_a, 1);
  const std::size_t xb = quad_index(mode_b, 0), pb = quad_index(mode_b, 1);
  // [[c I, -s Z], [-s Z, c I]] with Z = diag(1, -1).
  s(xa, xa) = c;
  s(pa, pa) = c;
  s(xb, xb) = c;
  s(pb, pb) = c;
  s(xa, xb) = -sh;
  s(pa, pb) = sh;
  s(xb, xa) = -sh;
  s(pb, pa) = sh;
  return {std::move(s), Vec::Zero(2 * n_modes)};
}

SymplecticOp beam_splitter(double theta, std::size_t mode_a, std::size_t mode_b, std::size_t n_modes) {
  require_mode(mode_a, n_modes);
  require_mode(mode_b, n_modes);
  if (mode_a == mode_b) throw DimensionError("beam_splitter needs distinct modes");
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
  for (std::size_t q = 0; q < 2; ++q) {
    const std::size_t a = quad_index(mode_a, q), b = quad_index(mode_b, q);
    s(a, a) = c;
    s(a, b) = sn;
    s(b, a) = -sn;
    s(b, b) = c;
  }
  return {std::move(s), Vec::Zero(2 * n_modes)};
}

SymplecticOp phase_shift(double phi, std::size_t mode, std::size_t n_modes) {
  require_mode(mode, n_modes);
  const double c = std::cos(phi);
  const double sn = std::sin(phi);
  Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
  const std::size_t x = quad_index(mode, 0), p = quad_index(mode, 1);
  s(x, x) = c;
  s(x, p) = sn;
  s(p, x) = -sn;
  s(p, p) = c;
  return {std::move(s), Vec::Zero(2 * n_modes)};
}

GaussianState vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw DimensionError("vacuum needs at least one mode");
  return {Vec::Zero(2 * n_modes), Mat::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState apply(const SymplecticOp& op, const GaussianState& state) {
  if (op.n_modes() != state.n_modes()) {
    throw DimensionError("apply: operation acts on " + std::to_string(op.n_modes()) + " modes, state has " +
                         std::to_string(state.n_modes()));
  }
  Mat cov = op.matrix() * state.cov() * op.matrix().transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {op.matrix() * state.mean() + op.displacement(), std::move(cov)};
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const auto na = a.mean().size(), nb = b.mean().size();
  Vec mean(na + nb);
  mean << a.mean(), b.mean();
  Mat cov = Mat::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return {std::move(mean), std::move(cov)};
}

Mat select_modes(const Mat& cov, std::span<const std::size_t> modes) {
  return cross_block(cov, modes, modes);
}

Vec select_modes(const Vec& mean, std::span<const std::size_t> modes) {
  const std::size_t n = static_cast<std::size_t>(mean.size()) / 2;
  Vec out(2 * modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    require_mode(modes[i], n);
    out(2 * i) = mean(quad_index(modes[i], 0));
    out(2 * i + 1) = mean(quad_index(modes[i], 1));
  }
  return out;
}

Mat cross_block(const Mat& cov, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  const std::size_t n = static_cast<std::size_t>(cov.rows()) / 2;
  Mat out(2 * rows.size(), 2 * cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_mode(rows[i], n);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      require_mode(cols[j], n);
      out.block<2, 2>(2 * i, 2 * j) = cov.block<2, 2>(2 * rows[i], 2 * cols[j]);
    }
  }
  return out;
}

GaussianState partial_trace(const GaussianState& state, std::span<const std::size_t> keep_modes) {
  if (keep_modes.empty()) throw DimensionError("partial_trace: keep set is empty");
  std::vector<std::size_t> sorted(keep_modes.begin(), keep_modes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DimensionError("partial_trace: duplicate mode in keep set");
  }
  return {select_modes(state.mean(), keep_modes), select_modes(state.cov(), keep_modes)};
}

double min_eigenvalue(const Mat& symmetric) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double uncertainty_margin(const Mat& cov) {
  using C = std::complex<double>;
  const std::size_t n = static_cast<std::size_t>(cov.rows()) / 2;
  Eigen::MatrixXcd h = cov.cast<C>() + C(0.0, 1.0) * symplectic_form(n).cast<C>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

Eigen::VectorXd symplectic_eigenvalues(const Mat& cov) {
  // With M = V^{1/2}, M Omega M is antisymmetric with eigenvalues +-i nu_k,
  // so (M Omega M)^T (M Omega M) carries each nu_k^2 twice.
  const std::size_t n = static_cast<std::size_t>(cov.rows()) / 2;
  Eigen::SelfAdjointEigenSolver<Mat> sqrt_solver(cov);
  if (sqrt_solver.eigenvalues()(0) <= 0.0) {
    throw std::invalid_argument("symplectic_eigenvalues: covariance is not positive definite");
  }
  const Mat root = sqrt_solver.operatorSqrt();
  const Mat a = root * symplectic_form(n) * root;
  Eigen::SelfAdjointEigenSolver<Mat> solver(a.transpose() * a, Eigen::EigenvaluesOnly);
  Eigen::VectorXd nu(n);
  for (std::size_t k = 0; k < n; ++k) nu(k) = std::sqrt(std::max(0.0, solver.eigenvalues()(2 * k)));
  return nu;
}

bool is_valid_cm(const Mat& cov, double slack) {
  if (!is_symmetric(cov)) throw std::invalid_argument("is_valid_cm: matrix is not symmetric");
  if (cov.rows() == 0 || cov.rows() % 2 != 0) throw DimensionError("is_valid_cm: size must be even");
  return uncertainty_margin(cov) >= -slack;
}

bool is_pure(const Mat& cov, double tolerance) {
  if (!is_valid_cm(cov)) return false;
  const Eigen::VectorXd nu = symplectic_eigenvalues(cov);
  return (nu.array() - 1.0).abs().maxCoeff() <= tolerance;
}

double wigner(const GaussianState& state, const Vec& point) {
  if (point.size() != state.mean().size()) throw DimensionError("wigner: point dimension mismatch");
  const Eigen::LDLT<Mat> ldlt(state.cov());
  const double det = state.cov().determinant();
  if (ldlt.info() != Eigen::Success || !(det > 0.0)) {
    throw std::invalid_argument("wigner: covariance is singular");
  }
  const Vec delta = point - state.mean();
  const double quad = delta.dot(ldlt.solve(delta));
  const double n = static_cast<double>(state.n_modes());
  return std::exp(-0.5 * quad) / (std::pow(2.0 * std::numbers::pi, n) * std::sqrt(det));
}

double overlap_trace(const GaussianState& a, const GaussianState& b) {
  if (a.n_modes() != b.n_modes()) throw DimensionError("overlap: mode count mismatch");
  const Mat sum = a.cov() + b.cov();
  const Eigen::LDLT<Mat> ldlt(sum);
  const Vec delta = a.mean() - b.mean();
  const double quad = delta.dot(ldlt.solve(delta));
  const double n = static_cast<double>(a.n_modes());
  return std::pow(2.0, n) / std::sqrt(sum.determinant()) * std::exp(-0.5 * quad);
}

double pure_overlap(const GaussianState& a, const GaussianState& b) {
  if (!is_pure(a.cov()) || !is_pure(b.cov())) {
    throw std::invalid_argument("pure_overlap: both states must be pure");
  }
  return std::clamp(overlap_trace(a, b), 0.0, 1.0);
}

}  // namespace cvgauss
