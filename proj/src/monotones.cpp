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

#include "cvgauss/monotones.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cvgauss {

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void require_valid(const Mat& cov, const char* who) {
  if (!is_valid_cm(cov)) throw std::invalid_argument(std::string(who) + ": covariance matrix is not physical");
}

constexpr double kBisectionTolerance = 1e-9;
constexpr int kMaxBracketDoublings = 60;

}  // namespace

std::string_view to_string(Theory theory) {
  return theory == Theory::kSqueezing ? "squeezing" : "entanglement_1x1";
}

std::string MonotoneReport::witness() const {
  std::ostringstream os;
  const auto sep = [&os] {
    if (os.tellp() > 0) os << ";";
  };
  if (scaling) os << "t=" << fmt9(*scaling);
  if (direction) {
    sep();
    os << "direction=[";
    for (Eigen::Index i = 0; i < direction->size(); ++i) os << (i ? "," : "") << fmt9((*direction)(i));
    os << "]";
  }
  if (!decomposition.empty()) {
    sep();
    os << "decomposition=[";
    for (std::size_t i = 0; i < decomposition.size(); ++i) {
      os << (i ? "," : "") << fmt9(decomposition[i].first) << ":" << fmt9(decomposition[i].second);
    }
    os << "]";
  }
  return os.str();
}

std::string MonotoneReport::line() const {
  return "measure=" + measure + " value=" + fmt9(value) + " witness=" + witness();
}

bool is_separable_1x1(const Mat& cov, double slack) {
  if (cov.rows() != 4 || cov.cols() != 4) throw DimensionError("is_separable_1x1 needs a two-mode covariance");
  require_valid(cov, "is_separable_1x1");
  Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  const Mat transposed = flip.asDiagonal() * cov * flip.asDiagonal();
  return uncertainty_margin(transposed) >= -slack;
}

bool is_free(const Mat& cov, Theory theory) {
  if (theory == Theory::kSqueezing) {
    require_valid(cov, "is_free");
    return min_eigenvalue(cov) >= 1.0 - 1e-9;
  }
  return is_separable_1x1(cov);
}

MonotoneReport kappa_squeeze(const Mat& cov) {
  require_valid(cov, "kappa_squeeze");
  const Eigen::SelfAdjointEigenSolver<Mat> solver(cov);
  const double t = std::max(1.0, 1.0 / solver.eigenvalues()(0));
  return {.measure = "kappa_squeeze",
          .value = t,
          .scaling = t,
          .direction = Vec(solver.eigenvectors().col(0)),
          .decomposition = {}};
}

MonotoneReport kappa_ent(const Mat& cov) {
  if (cov.rows() != 4) throw DimensionError("kappa_ent needs a two-mode covariance");
  require_valid(cov, "kappa_ent");
  auto report = [](double t) {
    return MonotoneReport{.measure = "kappa_ent", .value = t, .scaling = t, .direction = {}, .decomposition = {}};
  };
  if (is_separable_1x1(cov)) return report(1.0);
  double lo = 1.0, hi = 2.0;
  int doublings = 0;
  while (!is_separable_1x1(hi * cov)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > kMaxBracketDoublings) throw std::runtime_error("kappa_ent: no separable scaling found");
  }
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    (is_separable_1x1(mid * cov) ? hi : lo) = mid;
  }
  return report(hi);
}

MonotoneReport kappa(const Mat& cov, Theory theory) {
  return theory == Theory::kSqueezing ? kappa_squeeze(cov) : kappa_ent(cov);
}

MonotoneReport kappa_tilde_ub(const GaussianMixture& m, Theory theory) {
  if (m.norm() != Norm::kNormalized) throw std::invalid_argument("kappa_tilde_ub: mixture must be normalized");
  MonotoneReport out;
  out.measure = theory == Theory::kSqueezing ? "kappa_tilde_ub_squeeze" : "kappa_tilde_ub_ent";
  for (const Branch& b : m.branches()) {
    const double k = kappa(b.state.cov(), theory).value;
    out.value += b.weight * k;
    out.decomposition.emplace_back(b.weight, k);
  }
  return out;
}

MonotoneReport m_var(const GaussianMixture& m) {
  if (m.norm() != Norm::kNormalized) throw std::invalid_argument("m_var: mixture must be normalized");
  const Moments mom = moments(m);
  Eigen::SelfAdjointEigenSolver<Mat> solver(mom.cov);
  MonotoneReport out;
  out.measure = "m_var";
  out.value = solver.eigenvalues()(0);
  out.direction = solver.eigenvectors().col(0);
  return out;
}

MonotoneReport m_var_bar(const GaussianMixture& m) {
  MonotoneReport out = m_var(m);
  out.measure = "m_var_bar";
  out.value = std::min(1.0, out.value);
  return out;
}

}  // namespace cvgauss
