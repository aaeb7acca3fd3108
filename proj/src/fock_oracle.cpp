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

#include "cvgauss/fock_oracle.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "cvgauss/quadrature.h"

namespace cvgauss::fock {

namespace {

using C = std::complex<double>;

constexpr double kClip = 10.0;
constexpr double kSimpsonTolerance = 1e-9;

std::size_t padded(std::size_t cutoff) { return cutoff + 1 + std::max<std::size_t>(80, cutoff); }

Mat annihilation(std::size_t dim) {
  Mat a = Mat::Zero(dim, dim);
  for (std::size_t n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// exp(alpha (a^dag - a)) on a padded space; alpha = d/2 gives mean x = d.
Mat displacement_matrix(double d, std::size_t dim) {
  const Mat a = annihilation(dim);
  const Mat gen = 0.5 * d * (a.transpose() - a);
  return gen.exp();
}

/// exp(r/2 (a^2 - a^dag^2)); squeezes x for r > 0.
Mat squeezing_matrix(double r, std::size_t dim) {
  const Mat a = annihilation(dim);
  const Mat a2 = a * a;
  const Mat gen = 0.5 * r * (a2 - a2.transpose());
  return gen.exp();
}

void require_cutoff(std::size_t cutoff) {
  if (cutoff < 2) throw std::invalid_argument("fock oracle: cutoff must be at least 2");
}

/// Hermite functions phi_0..phi_{dim-1} at x, scaled so vacuum <x^2> = 1.
Eigen::VectorXd hermite_functions(double x, std::size_t dim) {
  const double u = x / std::numbers::sqrt2;
  const double scale = std::pow(2.0, -0.25);
  Eigen::VectorXd h(dim);
  h(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  if (dim > 1) h(1) = std::numbers::sqrt2 * u * h(0);
  for (std::size_t n = 1; n + 1 < dim; ++n) {
    const double nn = static_cast<double>(n);
    h(n + 1) = std::sqrt(2.0 / (nn + 1.0)) * u * h(n) - std::sqrt(nn / (nn + 1.0)) * h(n - 1);
  }
  return scale * h;
}

/// Adaptive Simpson for matrix-valued integrands, max-abs error control.
class MatrixSimpson {
 public:
  MatrixSimpson(std::size_t dim, double tolerance) : dim_(dim), tolerance_(tolerance) {}

  Mat integrate(double a, double b) const {
    constexpr int kSeedPanels = 16;
    Mat total = Mat::Zero(dim_, dim_);
    const double h = (b - a) / kSeedPanels;
    for (int i = 0; i < kSeedPanels; ++i) {
      const double lo = a + i * h, hi = (i + 1 == kSeedPanels) ? b : a + (i + 1) * h;
      const Mat fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
      const Mat whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
      total += step(lo, hi, fa, fm, fb, whole, tolerance_ / kSeedPanels, 40);
    }
    return total;
  }

 private:
  Mat f(double x) const {
    const Eigen::VectorXd phi = hermite_functions(x, dim_);
    return phi * phi.transpose();
  }

  Mat step(double a, double b, const Mat& fa, const Mat& fm, const Mat& fb, const Mat& whole, double tol,
           int depth) const {
    const double m = 0.5 * (a + b);
    const Mat flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    const Mat left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Mat right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Mat delta = left + right - whole;
    if (depth <= 0 || delta.cwiseAbs().maxCoeff() <= 15.0 * tol) return left + right + delta / 15.0;
    return step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  std::size_t dim_;
  double tolerance_;
};

/// Gram matrix G_{mn} = int_lo^hi phi_m phi_n dx.
Mat interval_gram(std::size_t dim, double lo, double hi) {
  const double a = std::max(lo, -kClip), b = std::min(hi, kClip);
  if (!(b > a)) return Mat::Zero(dim, dim);
  return MatrixSimpson(dim, kSimpsonTolerance).integrate(a, b);
}

Eigen::MatrixXcd as_matrix(const FockVector& v) {
  const auto dim = static_cast<Eigen::Index>(v.dim());
  Eigen::MatrixXcd c(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m) {
    for (Eigen::Index n = 0; n < dim; ++n) c(m, n) = v.amplitudes(m * dim + n);
  }
  return c;
}

}  // namespace

FockVector fock_squeezed_displaced(double r, double d, std::size_t cutoff) {
  require_cutoff(cutoff);
  const std::size_t big = padded(cutoff);
  Eigen::VectorXd vac = Eigen::VectorXd::Zero(big);
  vac(0) = 1.0;
  const Eigen::VectorXd full = displacement_matrix(d, big) * (squeezing_matrix(r, big) * vac);
  return {cutoff, 1, full.head(cutoff + 1).cast<C>()};
}

FockVector fock_tmsv(double r, std::size_t cutoff) {
  require_cutoff(cutoff);
  const std::size_t dim = cutoff + 1;
  FockVector v{cutoff, 2, Eigen::VectorXcd::Zero(dim * dim)};
  const double lambda = -std::tanh(r);
  double coeff = 1.0 / std::cosh(r);
  for (std::size_t n = 0; n < dim; ++n) {
    v.amplitudes(n * dim + n) = coeff;
    coeff *= lambda;
  }
  return v;
}

FockVector fock_displace(const FockVector& v, std::size_t mode, double d) {
  if (mode >= v.n_modes) throw DimensionError("fock_displace: mode out of range");
  const auto dim = static_cast<Eigen::Index>(v.dim());
  const Eigen::MatrixXcd block = displacement_matrix(d, padded(v.cutoff)).topLeftCorner(dim, dim).cast<C>();
  FockVector out = v;
  if (v.n_modes == 1) {
    out.amplitudes = block * v.amplitudes;
    return out;
  }
  const Eigen::MatrixXcd c = as_matrix(v);
  const Eigen::MatrixXcd moved = mode == 0 ? Eigen::MatrixXcd(block * c) : Eigen::MatrixXcd(c * block.transpose());
  for (Eigen::Index m = 0; m < dim; ++m) {
    for (Eigen::Index n = 0; n < dim; ++n) out.amplitudes(m * dim + n) = moved(m, n);
  }
  return out;
}

double oracle_overlap(const FockVector& a, const FockVector& b) {
  if (a.cutoff != b.cutoff || a.n_modes != b.n_modes) throw DimensionError("oracle_overlap: shape mismatch");
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

std::complex<double> wavefunction(const FockVector& v, double x) {
  if (v.n_modes != 1) throw std::invalid_argument("wavefunction: single-mode state expected");
  return (v.amplitudes.array() * hermite_functions(x, v.dim()).cast<C>().array()).sum();
}

double oracle_interval_prob(const FockVector& v, double lo, double hi) {
  if (v.n_modes != 1) throw std::invalid_argument("oracle_interval_prob: single-mode state expected");
  const double a = std::max(lo, -kClip), b = std::min(hi, kClip);
  const std::size_t dim = v.dim();
  return adaptive_simpson(
      [&](double x) { return std::norm(v.amplitudes.dot(hermite_functions(x, dim).cast<C>())); }, a, b,
      kSimpsonTolerance);
}

void moments_of(const Eigen::MatrixXcd& rho, Eigen::Vector2d& mean, Eigen::Matrix2d& cov) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  const Eigen::MatrixXcd a = annihilation(dim).cast<C>();
  const Eigen::MatrixXcd x = a + a.adjoint();
  const Eigen::MatrixXcd p = C(0.0, -1.0) * (a - a.adjoint());
  auto expect = [&](const Eigen::MatrixXcd& op) { return (rho * op).trace().real(); };
  mean << expect(x), expect(p);
  cov(0, 0) = expect(x * x) - mean(0) * mean(0);
  cov(1, 1) = expect(p * p) - mean(1) * mean(1);
  cov(0, 1) = cov(1, 0) = 0.5 * expect(x * p + p * x) - mean(0) * mean(1);
}

OracleConditioned oracle_condition(const FockVector& v, double lo, double hi) {
  if (v.n_modes != 2) throw std::invalid_argument("oracle_condition: two-mode state expected");
  if (lo > hi) throw std::invalid_argument("oracle_condition: empty interval");
  const std::size_t dim = v.dim();
  const Eigen::MatrixXcd c = as_matrix(v);
  OracleConditioned out;
  if (lo == hi) {
    const Eigen::VectorXcd phi = c * hermite_functions(lo, dim).cast<C>();
    out.density = phi.squaredNorm();
    out.prob = 0.0;
    if (!(out.density > 0.0)) throw ZeroProbabilityError("oracle_condition: zero outcome density");
    out.rho = phi * phi.adjoint() / out.density;
  } else {
    // rho_0 = C G C^dag with G the interval Gram matrix of mode-1 wavefunctions.
    const Eigen::MatrixXcd rho = c * interval_gram(dim, lo, hi).cast<C>() * c.adjoint();
    out.prob = rho.trace().real();
    out.density = 0.0;
    if (!(out.prob > 0.0)) throw ZeroProbabilityError("oracle_condition: zero interval probability");
    out.rho = rho / out.prob;
  }
  moments_of(out.rho, out.mean, out.cov);
  return out;
}

namespace {

GaussianState engine_squeezed_displaced(double r, double d) {
  return apply(SymplecticOp::displacement(1, 0, d), apply(single_mode_squeezer(r), vacuum(1)));
}

GaussianState engine_displaced_tmsv(double r, double d) {
  return apply(SymplecticOp::displacement(2, 0, d), apply(two_mode_squeezer(r), vacuum(2)));
}

struct OracleValues {
  std::vector<double> overlaps, probs;
  std::vector<Eigen::Vector2d> means;
  std::vector<Eigen::Matrix2d> covs;
};

constexpr double kRs[] = {0.0, 0.35, 0.7};
constexpr double kDs[] = {0.0, 1.0, 2.0, 4.0};
constexpr AcceptInterval kIntervals[] = {
    {-std::numeric_limits<double>::infinity(), 0.0}, {-1.0, 1.0}, {0.5, 2.0}};

OracleValues oracle_matrix(std::size_t cutoff) {
  OracleValues out;
  const FockVector vac = fock_squeezed_displaced(0.0, 0.0, cutoff);
  for (double r : kRs) {
    const FockVector sq = fock_squeezed_displaced(r, 0.0, cutoff);
    const FockVector tmsv = fock_tmsv(r, cutoff);
    for (double d : kDs) {
      const FockVector sqd = fock_squeezed_displaced(r, d, cutoff);
      out.overlaps.push_back(oracle_overlap(vac, sqd));
      out.overlaps.push_back(oracle_overlap(sq, sqd));
      const FockVector two = fock_displace(tmsv, 0, d);
      for (const AcceptInterval& iv : kIntervals) {
        out.probs.push_back(oracle_interval_prob(sqd, iv.lo, iv.hi));
        const OracleConditioned cond = oracle_condition(two, iv.lo, iv.hi);
        out.probs.push_back(cond.prob);
        out.means.push_back(cond.mean);
        out.covs.push_back(cond.cov);
      }
    }
  }
  return out;
}

}  // namespace

ValidationReport validate_pinned_matrix(bool check_cutoff_doubling) {
  constexpr std::size_t kCutoff = 60;
  ValidationReport report;
  const OracleValues oracle = oracle_matrix(kCutoff);

  std::size_t io = 0, ip = 0, im = 0;
  const GaussianState vac = vacuum(1);
  for (double r : kRs) {
    const GaussianState sq = engine_squeezed_displaced(r, 0.0);
    for (double d : kDs) {
      const GaussianState sqd = engine_squeezed_displaced(r, d);
      report.overlap = std::max(report.overlap, std::abs(pure_overlap(vac, sqd) - oracle.overlaps[io++]));
      report.overlap = std::max(report.overlap, std::abs(pure_overlap(sq, sqd) - oracle.overlaps[io++]));
      const GaussianMixture two(engine_displaced_tmsv(r, d));
      for (const AcceptInterval& iv : kIntervals) {
        const OutcomeMoments om = outcome_density(GaussianMixture(sqd), Vec::Unit(2, 0)).front();
        const double engine_prob = normal_interval_mass(om.mean, om.variance, iv.lo, iv.hi);
        report.interval_prob = std::max(report.interval_prob, std::abs(engine_prob - oracle.probs[ip++]));

        const ConditionResult cond = homodyne_condition(two, HomodyneSpec::x_quadrature(2, 1, iv), {},
                                                        ConditioningPath::kGrid, /*renormalize=*/true);
        report.interval_prob = std::max(report.interval_prob, std::abs(cond.success_prob - oracle.probs[ip++]));
        const Moments mom = moments(cond.mixture);
        report.conditioned_moments =
            std::max({report.conditioned_moments, (mom.mean - oracle.means[im]).cwiseAbs().maxCoeff(),
                      (mom.cov - oracle.covs[im]).cwiseAbs().maxCoeff()});
        ++im;
        ++report.cases;
      }
    }
  }

  // Point conditioning of a TMSV on x_1 = 0 leaves diag(1/cosh 2r, cosh 2r).
  {
    constexpr double r = 0.5;
    Eigen::Matrix2d expected = Eigen::Vector2d(1.0 / std::cosh(2.0 * r), std::cosh(2.0 * r)).asDiagonal();
    const OracleConditioned cond = oracle_condition(fock_tmsv(r, 40), 0.0, 0.0);
    report.point_conditioning = (cond.cov - expected).cwiseAbs().maxCoeff();
    const ConditionResult engine =
        homodyne_condition(GaussianMixture(engine_displaced_tmsv(r, 0.0)), HomodyneSpec::x_quadrature(2, 1, {0.0, 0.0}));
    report.point_conditioning =
        std::max(report.point_conditioning, (moments(engine.mixture).cov - expected).cwiseAbs().maxCoeff());
  }

  if (check_cutoff_doubling) {
    const OracleValues doubled = oracle_matrix(2 * kCutoff);
    auto worst = [](const auto& a, const auto& b, auto diff) {
      double w = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, diff(a[i], b[i]));
      return w;
    };
    auto scalar = [](double x, double y) { return std::abs(x - y); };
    auto mat = [](const auto& x, const auto& y) { return (x - y).cwiseAbs().maxCoeff(); };
    report.cutoff_doubling = std::max({worst(oracle.overlaps, doubled.overlaps, scalar),
                                       worst(oracle.probs, doubled.probs, scalar),
                                       worst(oracle.means, doubled.means, mat), worst(oracle.covs, doubled.covs, mat)});
  }
  return report;
}

}  // namespace cvgauss::fock
