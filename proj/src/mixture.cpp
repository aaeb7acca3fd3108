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

#include "cvgauss/mixture.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cvgauss/quadrature.h"

namespace cvgauss {

namespace {

constexpr double kNormSlack = 1e-9;

std::vector<std::size_t> complement_modes(std::size_t n_modes, std::span<const std::size_t> removed) {
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < n_modes; ++k) {
    if (std::find(removed.begin(), removed.end(), k) == removed.end()) kept.push_back(k);
  }
  return kept;
}

Vec select_quadratures(const Vec& v, std::span<const std::size_t> modes) { return select_modes(v, modes); }

}  // namespace

GaussianMixture::GaussianMixture(std::vector<Branch> branches, Norm norm)
    : branches_(std::move(branches)), norm_(norm) {
  if (branches_.empty()) throw std::invalid_argument("mixture needs at least one branch");
  const std::size_t n = branches_.front().state.n_modes();
  for (const Branch& b : branches_) {
    if (!(b.weight > 0.0) || !std::isfinite(b.weight)) {
      throw std::invalid_argument("mixture weights must be positive and finite");
    }
    if (b.state.n_modes() != n) throw DimensionError("mixture branches disagree in mode count");
  }
  const double total = total_weight();
  if (norm_ == Norm::kNormalized && std::abs(total - 1.0) > kNormSlack) {
    throw std::invalid_argument("normalized mixture weights sum to " + std::to_string(total));
  }
  if (norm_ == Norm::kSubnormalized && total > 1.0 + kNormSlack) {
    throw std::invalid_argument("subnormalized mixture weights sum to " + std::to_string(total));
  }
}

GaussianMixture::GaussianMixture(GaussianState state)
    : GaussianMixture(std::vector<Branch>{{1.0, std::move(state)}}, Norm::kNormalized) {}

double GaussianMixture::total_weight() const {
  double total = 0.0;
  for (const Branch& b : branches_) total += b.weight;
  return total;
}

HomodyneSpec HomodyneSpec::x_quadrature(std::size_t n_modes, std::size_t mode, AcceptInterval accept) {
  Vec l = Vec::Zero(2 * n_modes);
  l(quad_index(mode, 0)) = 1.0;
  return {std::move(l), accept, {mode}};
}

HomodyneSpec HomodyneSpec::x_plus(std::size_t n_modes, std::size_t mode_a, std::size_t mode_b,
                                  AcceptInterval accept) {
  Vec l = Vec::Zero(2 * n_modes);
  l(quad_index(mode_a, 0)) = std::numbers::sqrt2 / 2.0;
  l(quad_index(mode_b, 0)) = std::numbers::sqrt2 / 2.0;
  return {std::move(l), accept, {mode_a, mode_b}};
}

void HomodyneSpec::validate(std::size_t n_modes) const {
  if (functional.size() != static_cast<Eigen::Index>(2 * n_modes)) {
    throw DimensionError("homodyne functional length does not match mode count");
  }
  if (measured_modes.empty() || measured_modes.size() >= n_modes) {
    throw DimensionError("homodyne must measure at least one mode and keep at least one");
  }
  for (std::size_t m : measured_modes) {
    if (m >= n_modes) throw DimensionError("measured mode out of range");
  }
  if (functional.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("homodyne functional is zero");
  const auto kept = complement_modes(n_modes, measured_modes);
  if (select_quadratures(functional, kept).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("homodyne functional touches unmeasured modes");
  }
  if (std::isnan(accept.lo) || std::isnan(accept.hi) || accept.lo > accept.hi) {
    throw std::invalid_argument("accept interval is empty");
  }
  if (accept.lo == accept.hi && !std::isfinite(accept.lo)) {
    throw std::invalid_argument("degenerate accept interval must be finite");
  }
}

GaussianMixture apply_op(const SymplecticOp& op, const GaussianMixture& m) {
  std::vector<Branch> out;
  out.reserve(m.size());
  for (const Branch& b : m.branches()) out.push_back({b.weight, apply(op, b.state)});
  return {std::move(out), m.norm()};
}

GaussianMixture tensor_mix(const GaussianMixture& a, const GaussianMixture& b) {
  std::vector<Branch> out;
  out.reserve(a.size() * b.size());
  for (const Branch& x : a.branches()) {
    for (const Branch& y : b.branches()) out.push_back({x.weight * y.weight, tensor(x.state, y.state)});
  }
  const Norm norm =
      (a.norm() == Norm::kNormalized && b.norm() == Norm::kNormalized) ? Norm::kNormalized : Norm::kSubnormalized;
  return {std::move(out), norm};
}

GaussianMixture partial_trace_mix(const GaussianMixture& m, std::span<const std::size_t> keep_modes) {
  std::vector<Branch> out;
  out.reserve(m.size());
  for (const Branch& b : m.branches()) out.push_back({b.weight, partial_trace(b.state, keep_modes)});
  return {std::move(out), m.norm()};
}

std::vector<OutcomeMoments> outcome_density(const GaussianMixture& m, const Vec& functional) {
  if (functional.size() != static_cast<Eigen::Index>(2 * m.n_modes())) {
    throw DimensionError("outcome_density: functional length mismatch");
  }
  if (functional.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("outcome_density: zero functional");
  std::vector<OutcomeMoments> out;
  out.reserve(m.size());
  for (const Branch& b : m.branches()) {
    out.push_back({functional.dot(b.state.mean()), functional.dot(b.state.cov() * functional)});
  }
  return out;
}

Mat pseudo_inverse(const Mat& m) {
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(m);
  cod.setThreshold(1e-12);
  return cod.pseudoInverse();
}

Mat x_projector(std::size_t n_modes) {
  Mat p = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) p(2 * k, 2 * k) = 1.0;
  return p;
}

SelectiveHomodyne selective_homodyne(const Mat& cov, std::span<const std::size_t> kept,
                                     std::span<const std::size_t> measured, const Mat& projector) {
  const Mat a = select_modes(cov, kept);
  const Mat b = cross_block(cov, kept, measured);
  const Mat c = select_modes(cov, measured);
  if (projector.rows() != c.rows() || projector.cols() != c.cols()) {
    throw DimensionError("selective_homodyne: projector shape mismatch");
  }
  const Mat gain = b * pseudo_inverse(projector * c * projector);
  Mat updated = a - gain * b.transpose();
  updated = 0.5 * (updated + updated.transpose()).eval();
  return {std::move(updated), gain};
}

bool kept_modes_uncorrelated(const GaussianMixture& m, const HomodyneSpec& spec, double tolerance) {
  spec.validate(m.n_modes());
  const auto kept = complement_modes(m.n_modes(), spec.measured_modes);
  const Vec l_b = select_quadratures(spec.functional, spec.measured_modes);
  for (const Branch& b : m.branches()) {
    const Vec cross = cross_block(b.state.cov(), kept, spec.measured_modes) * l_b;
    if (cross.cwiseAbs().maxCoeff() > tolerance) return false;
  }
  return true;
}

ConditionResult homodyne_condition(const GaussianMixture& m, const HomodyneSpec& spec, const GridPolicy& grid,
                                   ConditioningPath path, bool renormalize_output) {
  const std::size_t n = m.n_modes();
  spec.validate(n);
  if (grid.nodes == 0) throw std::invalid_argument("grid policy needs at least one node");

  const auto kept = complement_modes(n, spec.measured_modes);
  const auto moments_per_branch = outcome_density(m, spec.functional);
  const bool uncorrelated = kept_modes_uncorrelated(m, spec);
  const bool degenerate = spec.accept.lo == spec.accept.hi;

  if (path == ConditioningPath::kExact && !uncorrelated) {
    throw std::runtime_error("exact homodyne path requested but kept modes correlate with the measured quadrature");
  }
  const ConditioningPath taken =
      (path == ConditioningPath::kGrid || degenerate || !uncorrelated) ? ConditioningPath::kGrid
                                                                        : ConditioningPath::kExact;

  const double input_weight = m.total_weight();
  std::vector<Branch> out;
  double accepted = 0.0;

  if (taken == ConditioningPath::kExact) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Branch& b = m.branches()[i];
      const double mass = normal_interval_mass(moments_per_branch[i].mean, moments_per_branch[i].variance,
                                               spec.accept.lo, spec.accept.hi);
      const double w = b.weight * mass;
      accepted += w;
      if (w > 0.0) out.push_back({w, partial_trace(b.state, kept)});
    }
  } else {
    const Vec l_b = select_quadratures(spec.functional, spec.measured_modes);
    const double l_norm = l_b.norm();
    const Vec u = l_b / l_norm;
    const Mat projector = u * u.transpose();
    double widest = 0.0;
    for (const auto& om : moments_per_branch) widest = std::max(widest, om.variance);
    const double half_width = grid.support_sigmas * std::sqrt(widest);

    for (std::size_t i = 0; i < m.size(); ++i) {
      const Branch& b = m.branches()[i];
      const double mu = moments_per_branch[i].mean;
      const double s = moments_per_branch[i].variance;
      const SelectiveHomodyne upd = selective_homodyne(b.state.cov(), kept, spec.measured_modes, projector);
      const Vec m_a = select_quadratures(b.state.mean(), kept);
      const Vec shift = upd.gain * u;
      const double mean_b_along_u = u.dot(select_quadratures(b.state.mean(), spec.measured_modes));
      auto conditioned = [&](double q) {
        return GaussianState(m_a + shift * (q / l_norm - mean_b_along_u), upd.cov);
      };

      if (degenerate) {
        const double w = b.weight * normal_density(spec.accept.lo, mu, s);
        if (w > 0.0) out.push_back({w, conditioned(spec.accept.lo)});
        continue;
      }

      const double mass = normal_interval_mass(mu, s, spec.accept.lo, spec.accept.hi);
      accepted += b.weight * mass;
      const double lo = std::max(spec.accept.lo, mu - half_width);
      const double hi = std::min(spec.accept.hi, mu + half_width);
      if (!(mass > 0.0) || !(hi > lo)) continue;

      const auto nodes = gauss_legendre(grid.nodes, lo, hi);
      std::vector<double> raw(nodes.size());
      double raw_total = 0.0;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        raw[k] = nodes[k].w * normal_density(nodes[k].x, mu, s);
        raw_total += raw[k];
      }
      if (!(raw_total > 0.0)) continue;
      // Rescale the rule so each branch carries exactly its interval mass.
      const double scale = b.weight * mass / raw_total;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double w = raw[k] * scale;
        if (w > 0.0) out.push_back({w, conditioned(nodes[k].x)});
      }
    }
  }

  if (out.empty()) {
    throw ZeroProbabilityError("homodyne post-selection has zero success probability");
  }
  if (degenerate) {
    // Branch weights are densities here; the conditional state is their
    // normalised mixture and the acceptance probability is zero.
    double total = 0.0;
    for (const Branch& b : out) total += b.weight;
    for (Branch& b : out) b.weight /= total;
    return {GaussianMixture(std::move(out), Norm::kNormalized), 0.0, taken};
  }
  GaussianMixture result(std::move(out), Norm::kSubnormalized);
  const double success = accepted / input_weight;
  if (renormalize_output) return {renormalize(result), success, taken};
  return {std::move(result), success, taken};
}

Moments moments(const GaussianMixture& m, bool renormalize_input) {
  if (m.norm() != Norm::kNormalized && !renormalize_input) {
    throw std::invalid_argument("moments: mixture is subnormalized; renormalize first");
  }
  const double total = m.total_weight();
  const auto dim = static_cast<Eigen::Index>(2 * m.n_modes());
  Vec mean = Vec::Zero(dim);
  Mat second = Mat::Zero(dim, dim);
  for (const Branch& b : m.branches()) {
    const double w = b.weight / total;
    mean += w * b.state.mean();
    second += w * (b.state.cov() + b.state.mean() * b.state.mean().transpose());
  }
  Mat cov = second - mean * mean.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {std::move(mean), std::move(cov)};
}

double quadrature_variance(const GaussianMixture& m, const Vec& functional, bool renormalize_input) {
  if (functional.size() != static_cast<Eigen::Index>(2 * m.n_modes())) {
    throw DimensionError("quadrature_variance: functional length mismatch");
  }
  // Evaluated branchwise along l to avoid forming the full aggregate matrix.
  if (m.norm() != Norm::kNormalized && !renormalize_input) {
    throw std::invalid_argument("quadrature_variance: mixture is subnormalized; renormalize first");
  }
  const double total = m.total_weight();
  double first = 0.0, second = 0.0;
  for (const Branch& b : m.branches()) {
    const double w = b.weight / total;
    const double mu = functional.dot(b.state.mean());
    first += w * mu;
    second += w * (functional.dot(b.state.cov() * functional) + mu * mu);
  }
  return second - first * first;
}

double fidelity_to_pure(const GaussianMixture& m, const GaussianState& target, bool renormalize_input) {
  if (!is_pure(target.cov())) throw std::invalid_argument("fidelity_to_pure: target must be pure");
  if (m.norm() != Norm::kNormalized && !renormalize_input) {
    throw std::invalid_argument("fidelity_to_pure: mixture is subnormalized; renormalize first");
  }
  if (target.n_modes() != m.n_modes()) throw DimensionError("fidelity_to_pure: mode count mismatch");
  const double total = m.total_weight();
  double f = 0.0;
  for (const Branch& b : m.branches()) f += b.weight * overlap_trace(b.state, target);
  return std::clamp(f / total, 0.0, 1.0);
}

GaussianMixture prune(const GaussianMixture& m, double tolerance) {
  if (!(tolerance >= 0.0)) throw std::invalid_argument("prune tolerance must be non-negative");
  if (tolerance == 0.0) return m;
  const double cutoff = tolerance * m.total_weight();
  std::vector<Branch> kept;
  for (const Branch& b : m.branches()) {
    if (b.weight >= cutoff) kept.push_back(b);
  }
  if (kept.empty()) throw std::invalid_argument("prune removed every branch");
  double total = 0.0;
  for (const Branch& b : kept) total += b.weight;
  const Norm norm =
      (m.norm() == Norm::kNormalized && std::abs(total - 1.0) <= kNormSlack) ? Norm::kNormalized : Norm::kSubnormalized;
  return {std::move(kept), norm};
}

GaussianMixture renormalize(const GaussianMixture& m) {
  const double total = m.total_weight();
  std::vector<Branch> out;
  out.reserve(m.size());
  for (const Branch& b : m.branches()) out.push_back({b.weight / total, b.state});
  return {std::move(out), Norm::kNormalized};
}

}  // namespace cvgauss
