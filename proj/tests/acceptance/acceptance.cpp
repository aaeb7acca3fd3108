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


// Acceptance runner. With no argument every criterion runs; with a number
// only that one. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cvgauss/experiment.h"
#include "cvgauss/fock_oracle.h"
#include "cvgauss/matrix_io.h"
#include "cvgauss/monotones.h"
#include "cvgauss/protocols.h"
#include "support/property_suites.h"

namespace cvgauss {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) { return format_number(v, 6); }

SweepConfig load(const char* name) {
  return parse_config_file(std::string(CVGAUSS_CONFIG_DIR) + "/" + name).sweep;
}

// Independent oracle: least t on a 1e-4 grid with t V - 1 positive definite
// (Cholesky), refined by bisection.
double squeeze_scan_oracle(const Mat& v) {
  const Mat id = Mat::Identity(v.rows(), v.cols());
  auto free_at = [&](double t) { return Eigen::LLT<Mat>(t * v - id + 1e-13 * id).info() == Eigen::Success; };
  double hi = 1.0;
  while (!free_at(hi) && hi < 10.0) hi += 1e-4;
  double lo = hi - 1e-4;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (free_at(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Independent oracle: bisection on the smallest symplectic eigenvalue of the
// partially transposed matrix, from the spectrum of i Omega V.
double ent_bisection_oracle(const Mat& v) {
  const Eigen::Vector4d flip(1, 1, 1, -1);
  const Mat pt = flip.asDiagonal() * v * flip.asDiagonal();
  const Eigen::MatrixXcd w = std::complex<double>(0, 1) * (symplectic_form(2) * pt).cast<std::complex<double>>();
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(w).eigenvalues();
  double nu = ev.cwiseAbs().minCoeff();
  double lo = 1.0, hi = 2.0;
  while (hi * nu < 1.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * nu >= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

Outcome criterion1() {
  std::ostringstream d;
  bool ok = true;
  for (double r : {0.35, 0.7}) {
    const double exact = std::exp(2 * r);
    const Mat sq = apply(single_mode_squeezer(r), vacuum(1)).cov();
    const Mat tm = apply(two_mode_squeezer(r), vacuum(2)).cov();
    const double ks = kappa_squeeze(sq).value, ke = kappa_ent(tm).value;
    const double os = squeeze_scan_oracle(sq), oe = ent_bisection_oracle(tm);
    const double err = std::max({std::abs(ks - exact), std::abs(ke - exact), std::abs(ks - os), std::abs(ke - oe)});
    ok = ok && err <= 1e-6;
    d << "r=" << r << " max|err|=" << format_number(err, 3) << "; ";
  }
  return {ok, d.str()};
}

Outcome criterion2() {
  const double kmax = std::exp(1.4) + 1e-9, vmin = std::exp(-1.4) - 1e-9;
  std::size_t rows = 0, bad = 0;
  double worst_k = 0.0, worst_v = 1e9;
  for (const char* cfg : {"multicopy_squeeze.cfg", "multicopy_ent.cfg"}) {
    SweepConfig c = load(cfg);
    c.track_kappa = true;
    for (const SweepRow& row : sweep(c)) {
      ++rows;
      worst_k = std::max(worst_k, row.max_branch_kappa);
      worst_v = std::min(worst_v, row.variance);
      if (!(row.max_branch_kappa <= kmax) || !(row.variance >= vmin)) ++bad;
    }
  }
  return {bad == 0, std::to_string(rows) + " points, max kappa " + num(worst_k) + ", min variance " + num(worst_v) +
                        ", violations " + std::to_string(bad)};
}

Outcome criterion3() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const double fs = multicopy_squeeze(SqueezeNoiseModel::from_ratio(0.7, 0.5, 30.0), 5).final().fidelity;
  const auto t1 = clock::now();
  const double fe = multicopy_ent(EntNoiseModel::from_ratio(0.7, 0.5, 30.0), 5).final().fidelity;
  const auto t2 = clock::now();
  const double s1 = std::chrono::duration<double>(t1 - t0).count();
  const double s2 = std::chrono::duration<double>(t2 - t1).count();
  return {fs >= 0.99 && fe >= 0.99 && s1 < 30.0 && s2 < 30.0,
          "squeeze F=" + num(fs) + " (" + num(s1) + " s), ent F=" + num(fe) + " (" + num(s2) + " s)"};
}

Outcome criterion4() {
  const double expected = 0.25 * std::erf(1.0 / std::numbers::sqrt2);
  const double s = multicopy_squeeze(SqueezeNoiseModel::from_ratio(0.7, 0.5, 30.0), 2).final().cumulative_success;
  const bool asym = std::abs(s - expected) <= 0.02;
  SweepConfig c = load("multicopy_squeeze.cfg");
  std::vector<double> grid;
  for (double x : c.d_over_sigma) {
    if (x >= 10.0) grid.push_back(x);
  }
  c.d_over_sigma = grid;
  c.copies = {2, 3, 4, 5};
  const auto rows = sweep(c);
  std::size_t bad = 0;
  for (std::size_t i = grid.size(); i < rows.size(); ++i) {
    if (rows[i].success_prob > rows[i - grid.size()].success_prob) ++bad;
  }
  return {asym && bad == 0, "N=2 success " + num(s) + " vs " + num(expected) + ", monotonicity violations " +
                                std::to_string(bad) + " over " + std::to_string(grid.size()) + " points"};
}

Outcome criterion5() {
  const double t90 = theta_from_transmissivity(0.9), t65 = theta_from_transmissivity(0.65);
  const auto run = [](double ratio, double theta) {
    return one_shot_squeeze(SqueezeNoiseModel::from_ratio(0.7, 0.5, ratio), theta);
  };
  const ProtocolResult a = run(1.0, t90);
  const bool pa = a.final().fidelity < a.input_fidelity;
  const ProtocolResult b = run(20.0, t90);
  const bool pb = b.final().variance < 1.0 && b.final().fidelity > 1.0 / std::cosh(0.7);
  bool mid_win = false;
  for (double ratio = 1.0; ratio <= 15.0; ratio += 0.5) mid_win = mid_win || run(ratio, t65).final().fidelity > run(ratio, t90).final().fidelity;
  const double f65 = run(20.0, t65).final().fidelity;
  const bool pc = mid_win && b.final().fidelity > f65;
  std::ostringstream d;
  d << "(a) " << (pa ? "ok" : "no") << " F=" << num(a.final().fidelity) << " vs input " << num(a.input_fidelity)
    << "; (b) " << (pb ? "ok" : "no") << " Var=" << num(b.final().variance) << " F=" << num(b.final().fidelity)
    << " vs sech(0.7)=" << num(1.0 / std::cosh(0.7)) << "; (c) " << (pc ? "ok" : "no")
    << " mid-range t=0.65 win " << (mid_win ? "yes" : "no") << ", at d/sigma=20 F(0.9)=" << num(b.final().fidelity)
    << " F(0.65)=" << num(f65);
  return {pa && pb && pc, d.str()};
}

Outcome criterion6() {
  const auto sq = sweep(load("multicopy_squeeze.cfg"));
  const auto en = sweep(load("multicopy_ent.cfg"));
  std::size_t bad = 0;
  double worst = -1.0, where_d = 0.0;
  std::size_t where_n = 0;
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double gap = en[i].fidelity - sq[i].fidelity;
    if (gap > 1e-6) ++bad;
    if (gap > worst) {
      worst = gap;
      where_d = sq[i].d_over_sigma;
      where_n = sq[i].copies;
    }
  }
  return {bad == 0, std::to_string(bad) + " of " + std::to_string(sq.size()) +
                        " points with F_ent > F_sq + 1e-6; largest excess " + num(worst) + " at N=" +
                        std::to_string(where_n) + ", d/sigma=" + num(where_d)};
}

Outcome criterion7() {
  const fock::ValidationReport r = fock::validate_pinned_matrix(true);
  bool norms = true;
  for (double rr : {0.0, 0.35, 0.7, 0.8}) {
    for (double d : {0.0, 1.0, 2.0, 4.0}) norms = norms && fock::fock_squeezed_displaced(rr, d, 60).norm_ok();
  }
  const bool ok = norms && r.overlap <= 1e-5 && r.interval_prob <= 1e-5 && r.conditioned_moments <= 1e-5 &&
                  r.point_conditioning <= 1e-4 && r.cutoff_doubling < 1e-7;
  return {ok, std::to_string(r.cases) + " cases; overlap " + format_number(r.overlap, 3) + ", interval " +
                  format_number(r.interval_prob, 3) + ", moments " + format_number(r.conditioned_moments, 3) +
                  ", point " + format_number(r.point_conditioning, 3) + ", cutoff doubling " +
                  format_number(r.cutoff_doubling, 3) + (norms ? "" : ", norm deficit too large")};
}

Outcome criterion8() {
  using namespace cvgauss::testing;
  const std::pair<const char*, SuiteResult> suites[] = {
      {"symplectic", symplectic_identity_suite()},   {"physicality", physicality_suite()},
      {"upward-closed", upward_closed_suite()},      {"tensor-max", tensor_max_suite()},
      {"homodyne-free", free_set_homodyne_suite()}, {"m_var_bar", m_var_bar_suite()},
      {"protocol-bound", protocol_bound_suite()},
  };
  bool ok = true;
  std::ostringstream d;
  for (const auto& [name, r] : suites) {
    ok = ok && r.violations == 0;
    d << name << " " << r.violations << "/" << r.cases << "; ";
  }
  return {ok, d.str()};
}

Outcome criterion9() {
  bool ok = true;
  std::ostringstream d;
  for (const char* cfg : {"one_shot_squeeze.cfg", "multicopy_squeeze.cfg", "multicopy_ent.cfg"}) {
    std::ostringstream a, b;
    write_csv(a, sweep(load(cfg)));
    write_csv(b, sweep(load(cfg)));
    const bool same = a.str() == b.str();
    ok = ok && same;
    d << cfg << (same ? " identical" : " DIFFERS") << " (" << a.str().size() << " bytes); ";
  }
  return {ok, d.str()};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const Criterion kCriteria[] = {
    {"monotone exactness", criterion1},
    {"distillation ceiling", criterion2},
    {"bound saturation", criterion3},
    {"success-probability asymptote", criterion4},
    {"one-shot crossover", criterion5},
    {"entanglement vs squeezing ordering", criterion6},
    {"oracle equivalence", criterion7},
    {"property suites", criterion8},
    {"determinism", criterion9},
};

}  // namespace
}  // namespace cvgauss

int main(int argc, char** argv) {
  using cvgauss::kCriteria;
  constexpr int kCount = static_cast<int>(std::size(kCriteria));
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > kCount) {
      std::fprintf(stderr, "usage: %s [1-%d]\n", argv[0], kCount);
      return 2;
    }
  }
  bool all_ok = true;
  for (int i = 1; i <= kCount; ++i) {
    if (only != 0 && i != only) continue;
    cvgauss::Outcome o{false, ""};
    try {
      o = kCriteria[i - 1].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_ok = all_ok && o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", i, kCriteria[i - 1].title, o.detail.c_str());
  }
  return all_ok ? 0 : 1;
}
