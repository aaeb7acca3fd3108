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

#include "cvgauss/protocols.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "cvgauss/monotones.h"

namespace cvgauss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_noise(double r, double p, double d) {
  if (!std::isfinite(r) || !std::isfinite(d)) throw std::invalid_argument("noise model parameters must be finite");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("displacement probability must lie in [0, 1]");
}

GaussianMixture two_branch(double p, GaussianState clean, GaussianState displaced) {
  std::vector<Branch> branches;
  if (p < 1.0) branches.push_back({1.0 - p, std::move(clean)});
  if (p > 0.0) branches.push_back({p, std::move(displaced)});
  return {std::move(branches), Norm::kNormalized};
}

Vec x_functional(std::size_t n_modes, std::size_t mode) {
  Vec l = Vec::Zero(2 * n_modes);
  l(quad_index(mode, 0)) = 1.0;
  return l;
}

Vec x_plus_functional() {
  Vec l = Vec::Zero(4);
  l(0) = l(2) = std::numbers::sqrt2 / 2.0;
  return l;
}

std::vector<double> thresholds(std::span<const double> delta_prime, std::size_t iterations, double r) {
  if (delta_prime.empty()) return std::vector<double>(iterations, std::exp(-r));
  if (delta_prime.size() == 1) return std::vector<double>(iterations, delta_prime[0]);
  if (delta_prime.size() < iterations) {
    throw std::invalid_argument("delta_prime needs one value per iteration (" + std::to_string(iterations) + ")");
  }
  return {delta_prime.begin(), delta_prime.begin() + static_cast<std::ptrdiff_t>(iterations)};
}

IterationRecord record(GaussianMixture output, const GaussianState& target, const Vec& functional,
                       ConditioningPath path) {
  const double total = output.total_weight();
  const double fidelity = fidelity_to_pure(output, target, /*renormalize=*/true);
  const double variance = quadrature_variance(output, functional, /*renormalize=*/true);
  return {std::move(output), total, fidelity, variance, path};
}

}  // namespace

SqueezeNoiseModel SqueezeNoiseModel::from_ratio(double r, double p, double d_over_sigma) {
  return {r, p, d_over_sigma * std::exp(-2.0 * r)};
}

double SqueezeNoiseModel::sigma() const { return std::exp(-2.0 * r); }

GaussianState SqueezeNoiseModel::target() const { return apply(single_mode_squeezer(r), vacuum(1)); }

GaussianMixture SqueezeNoiseModel::state() const {
  check_noise(r, p, d);
  const GaussianState clean = target();
  return two_branch(p, clean, apply(SymplecticOp::displacement(1, 0, d), clean));
}

EntNoiseModel EntNoiseModel::from_ratio(double r, double p, double d_over_sigma) {
  return {r, p, d_over_sigma * std::exp(-2.0 * r)};
}

double EntNoiseModel::sigma() const { return std::exp(-2.0 * r); }

GaussianState EntNoiseModel::target() const { return apply(two_mode_squeezer(r), vacuum(2)); }

GaussianMixture EntNoiseModel::state() const {
  check_noise(r, p, d);
  const GaussianState clean = target();
  return two_branch(p, clean, apply(SymplecticOp::displacement(2, 0, d), clean));
}

double theta_from_transmissivity(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("transmissivity must lie strictly inside (0, 1)");
  return std::acos(std::sqrt(t));
}

ProtocolResult one_shot_squeeze(const SqueezeNoiseModel& model, double theta, const GridPolicy& grid,
                                double prune_tol) {
  const double t = std::cos(theta) * std::cos(theta);
  if (!(t > 1e-15 && t < 1.0 - 1e-15)) {
    throw std::invalid_argument("one_shot_squeeze: transmissivity cos^2(theta) must lie strictly inside (0, 1)");
  }
  const GaussianMixture input = model.state();
  const GaussianState target = model.target();
  const Vec x_sys = x_functional(1, 0);

  // System on mode 0, vacuum pointer on mode 1.
  const GaussianMixture joint =
      apply_op(beam_splitter(theta, 0, 1, 2), tensor_mix(input, GaussianMixture(vacuum(1))));
  const double split = -0.5 * model.d * std::sin(theta);
  const SymplecticOp correction = SymplecticOp::displacement(1, 0, -model.d * std::cos(theta));

  std::vector<Branch> branches;
  ConditioningPath path = ConditioningPath::kGrid;
  auto region = [&](AcceptInterval accept, const SymplecticOp* fix) {
    try {
      ConditionResult res = homodyne_condition(joint, HomodyneSpec::x_quadrature(2, 1, accept), grid);
      path = res.path_taken;
      for (const Branch& b : res.mixture.branches()) {
        branches.push_back({b.weight, fix ? apply(*fix, b.state) : b.state});
      }
    } catch (const ZeroProbabilityError&) {
      // The whole mass fell on the other side of the split.
    }
  };
  region({-kInf, split}, &correction);
  region({split, kInf}, nullptr);

  GaussianMixture output =
      renormalize(prune(renormalize(GaussianMixture(std::move(branches), Norm::kSubnormalized)), prune_tol));
  ProtocolResult result{fidelity_to_pure(input, target), quadrature_variance(input, x_sys), {}};
  result.iterations.push_back(record(std::move(output), target, x_sys, path));
  return result;
}

ProtocolResult multicopy_squeeze(const SqueezeNoiseModel& model, std::size_t copies,
                                 std::span<const double> delta_prime, double prune_tol) {
  if (copies < 2) throw std::invalid_argument("multicopy_squeeze needs at least two copies");
  const auto cuts = thresholds(delta_prime, copies - 1, model.r);
  const GaussianMixture fresh = model.state();
  const GaussianState target = model.target();
  const Vec x_sys = x_functional(1, 0);
  // theta = -pi/4 sends (x_sys + x_copy)/sqrt2 to the pointer (mode 1) and
  // (x_sys - x_copy)/sqrt2 to the kept mode 0.
  const SymplecticOp mixer = beam_splitter(-std::numbers::pi / 4.0, 0, 1, 2);

  ProtocolResult result{fidelity_to_pure(fresh, target), quadrature_variance(fresh, x_sys), {}};
  GaussianMixture system = fresh;
  for (double cut : cuts) {
    if (!(cut > 0.0)) throw std::invalid_argument("acceptance threshold must be positive");
    const GaussianMixture joint = apply_op(mixer, tensor_mix(system, fresh));
    ConditionResult res = homodyne_condition(joint, HomodyneSpec::x_quadrature(2, 1, {-cut, cut}), {},
                                             ConditioningPath::kExact);
    system = prune(res.mixture, prune_tol);
    result.iterations.push_back(record(system, target, x_sys, res.path_taken));
  }
  return result;
}

ProtocolResult multicopy_ent(const EntNoiseModel& model, std::size_t copies, std::span<const double> delta_prime,
                             double prune_tol) {
  if (copies < 2) throw std::invalid_argument("multicopy_ent needs at least two copies");
  const auto cuts = thresholds(delta_prime, copies - 1, model.r);
  const GaussianMixture fresh = model.state();
  const GaussianState target = model.target();
  const Vec x_plus = x_plus_functional();
  // System on modes (0 Bob, 1 Alice), fresh copy on (2 Bob, 3 Alice). Each
  // local beam splitter puts the sum port on the system slot, which is measured.
  const SymplecticOp mixer =
      compose(beam_splitter(std::numbers::pi / 4.0, 1, 3, 4), beam_splitter(std::numbers::pi / 4.0, 0, 2, 4));

  ProtocolResult result{fidelity_to_pure(fresh, target), quadrature_variance(fresh, x_plus), {}};
  GaussianMixture system = fresh;
  for (double cut : cuts) {
    if (!(cut > 0.0)) throw std::invalid_argument("acceptance threshold must be positive");
    const GaussianMixture joint = apply_op(mixer, tensor_mix(system, fresh));
    ConditionResult res =
        homodyne_condition(joint, HomodyneSpec::x_plus(4, 0, 1, {-cut, cut}), {}, ConditioningPath::kExact);
    system = prune(res.mixture, prune_tol);
    result.iterations.push_back(record(system, target, x_plus, res.path_taken));
  }
  return result;
}

std::string to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::kOneShotSqueeze:
      return "one_shot_squeeze";
    case Protocol::kMulticopySqueeze:
      return "multicopy_squeeze";
    case Protocol::kMulticopyEnt:
      return "multicopy_ent";
  }
  return "unknown";
}

std::optional<Protocol> parse_protocol(const std::string& name) {
  for (Protocol p : {Protocol::kOneShotSqueeze, Protocol::kMulticopySqueeze, Protocol::kMulticopyEnt}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("r", 0, "must be a positive finite number");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p", 0, "must lie in [0, 1]");
  if (d_over_sigma.empty()) throw ConfigError("d_over_sigma", 0, "grid is empty");
  for (double v : d_over_sigma) {
    if (!std::isfinite(v)) throw ConfigError("d_over_sigma", 0, "values must be finite");
  }
  if (grid.nodes < 8) throw ConfigError("grid_points", 0, "must be at least 8");
  if (!(prune_tol >= 0.0)) throw ConfigError("prune_tol", 0, "must be non-negative");
  if (protocol == Protocol::kOneShotSqueeze) {
    if (transmissivities.empty()) throw ConfigError("t_list", 0, "one_shot_squeeze needs a nonempty t_list");
    for (double t : transmissivities) {
      if (!(t > 0.0 && t < 1.0)) throw ConfigError("t_list", 0, "transmissivities must lie strictly inside (0, 1)");
    }
  } else {
    if (copies.empty()) throw ConfigError("N_list", 0, "multi-copy protocols need a nonempty N_list");
    for (std::size_t n : copies) {
      if (n < 2) throw ConfigError("N_list", 0, "copy counts must be at least 2");
      if (delta_prime.size() > 1 && delta_prime.size() < n - 1) {
        throw ConfigError("delta_prime", 0, "needs a single value or one value per iteration (N-1 for the largest N)");
      }
    }
  }
  for (double v : delta_prime) {
    if (!(v > 0.0)) throw ConfigError("delta_prime", 0, "thresholds must be positive");
  }
}

SweepRow run_point(const SweepConfig& config, double t, std::size_t copies, double d_over_sigma) {
  ProtocolResult res = [&] {
    switch (config.protocol) {
      case Protocol::kOneShotSqueeze:
        return one_shot_squeeze(SqueezeNoiseModel::from_ratio(config.r, config.p, d_over_sigma),
                                theta_from_transmissivity(t), config.grid, config.prune_tol);
      case Protocol::kMulticopySqueeze:
        return multicopy_squeeze(SqueezeNoiseModel::from_ratio(config.r, config.p, d_over_sigma), copies,
                                 config.delta_prime, config.prune_tol);
      case Protocol::kMulticopyEnt:
        break;
    }
    return multicopy_ent(EntNoiseModel::from_ratio(config.r, config.p, d_over_sigma), copies, config.delta_prime,
                         config.prune_tol);
  }();
  const IterationRecord& last = res.final();
  double max_kappa = std::numeric_limits<double>::quiet_NaN();
  if (config.track_kappa) {
    const Theory theory = config.protocol == Protocol::kMulticopyEnt ? Theory::kEntanglement1x1 : Theory::kSqueezing;
    max_kappa = 1.0;
    for (const Branch& b : last.output.branches()) max_kappa = std::max(max_kappa, kappa(b.state.cov(), theory).value);
  }
  return {config.protocol, config.r,      config.p,      t,         copies,
          d_over_sigma,    last.fidelity, last.variance, last.cumulative_success, max_kappa, last.output.size()};
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
  config.validate();
  struct Task {
    double t;
    std::size_t copies;
    double d_over_sigma;
  };
  std::vector<Task> tasks;
  if (config.protocol == Protocol::kOneShotSqueeze) {
    for (double t : config.transmissivities) {
      for (double d : config.d_over_sigma) tasks.push_back({t, 1, d});
    }
  } else {
    for (std::size_t n : config.copies) {
      for (double d : config.d_over_sigma) tasks.push_back({0.5, n, d});
    }
  }

  std::vector<std::optional<SweepRow>> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = run_point(config, tasks[i].t, tasks[i].copies, tasks[i].d_over_sigma);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::make_exception_ptr(std::runtime_error(
              to_string(config.protocol) + " at t=" + std::to_string(tasks[i].t) +
              " N=" + std::to_string(tasks[i].copies) + " d_over_sigma=" + std::to_string(tasks[i].d_over_sigma) +
              ": " + e.what()));
        }
        next = tasks.size();
      }
    }
  };
  unsigned n_threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRow> out;
  out.reserve(rows.size());
  for (auto& row : rows) out.push_back(*row);
  return out;
}

}  // namespace cvgauss
