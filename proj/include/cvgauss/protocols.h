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

// Squeezing and entanglement distillation from mixtures of randomly
// displaced squeezed states.
//
// Noise model: with probability p the state is displaced by d along x (of
// mode 0 for the two-mode case). d is usually given as a multiple of the
// squeezed variance sigma = e^{-2r}.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvgauss/errors.h"
#include "cvgauss/mixture.h"

namespace cvgauss {

struct SqueezeNoiseModel {
  double r = 0.7;
  double p = 0.5;
  double d = 0.0;

  static SqueezeNoiseModel from_ratio(double r, double p, double d_over_sigma);
  double sigma() const;
  /// (1-p)|0,r><0,r| + p|d,r><d,r|
  GaussianMixture state() const;
  /// |0,r>
  GaussianState target() const;
};

struct EntNoiseModel {
  double r = 0.7;
  double p = 0.5;
  double d = 0.0;

  static EntNoiseModel from_ratio(double r, double p, double d_over_sigma);
  double sigma() const;
  /// (1-p)|psi_r><psi_r| + p D_0(d)|psi_r><psi_r|D_0(d)^dag on modes (0, 1).
  GaussianMixture state() const;
  /// Two-mode squeezed vacuum |psi_r>.
  GaussianState target() const;
};

struct IterationRecord {
  /// Subnormalized; its total weight is the cumulative success probability.
  GaussianMixture output;
  double cumulative_success;
  double fidelity;
  /// Variance of the protocol's target quadrature (x, or x_+ for two modes).
  double variance;
  ConditioningPath path;
};

struct ProtocolResult {
  double input_fidelity;
  double input_variance;
  std::vector<IterationRecord> iterations;

  const IterationRecord& final() const { return iterations.back(); }
};

double theta_from_transmissivity(double t);

/// Deterministic single-copy protocol: beam splitter with a vacuum pointer,
/// x homodyne on the pointer split at -(d/2) sin(theta), and a displacement of
/// -d cos(theta) on the system when the outcome lands at or below it.
ProtocolResult one_shot_squeeze(const SqueezeNoiseModel& model, double theta, const GridPolicy& grid = {},
                                double prune_tol = 1e-12);

/// Probabilistic multi-copy protocol with N-1 sequential iterations. Each one
/// mixes the current system with a fresh copy on a 50:50 beam splitter and
/// keeps the system when the pointer's x falls in (-delta', delta'].
/// `delta_prime` may hold one threshold per iteration (extra entries are
/// ignored), or a single value for all of them; empty selects e^{-r}.
ProtocolResult multicopy_squeeze(const SqueezeNoiseModel& model, std::size_t copies,
                                 std::span<const double> delta_prime = {}, double prune_tol = 1e-12);

/// Two-mode counterpart: beam splitters on both local pairs and a joint
/// measurement of x_+ = (x_0 + x_1)/sqrt2 on the measured copy.
ProtocolResult multicopy_ent(const EntNoiseModel& model, std::size_t copies,
                             std::span<const double> delta_prime = {}, double prune_tol = 1e-12);

enum class Protocol { kOneShotSqueeze, kMulticopySqueeze, kMulticopyEnt };

std::string to_string(Protocol protocol);
std::optional<Protocol> parse_protocol(const std::string& name);

struct SweepConfig {
  Protocol protocol = Protocol::kMulticopySqueeze;
  double r = 0.7;
  double p = 0.5;
  std::vector<double> d_over_sigma;
  std::vector<std::size_t> copies;         // multi-copy only
  std::vector<double> transmissivities;    // one-shot only
  std::vector<double> delta_prime;         // empty: e^{-r}
  GridPolicy grid;
  double prune_tol = 1e-12;
  unsigned threads = 0;  // 0: hardware concurrency
  /// Also evaluate kappa on every output branch.
  bool track_kappa = false;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct SweepRow {
  Protocol protocol;
  double r;
  double p;
  double t;
  std::size_t copies;
  double d_over_sigma;
  double fidelity;
  double variance;
  double success_prob;
  /// Largest per-branch kappa in the output (when tracked), else NaN.
  double max_branch_kappa;
  std::size_t branch_count;
};

/// One row per (t or N, d/sigma) point, in input-grid order (outer loop over
/// t or N). Points may run concurrently; the result order never depends on it.
std::vector<SweepRow> sweep(const SweepConfig& config);

SweepRow run_point(const SweepConfig& config, double t_or_zero, std::size_t copies, double d_over_sigma);

}  // namespace cvgauss
