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

#include "cvgauss/cli.h"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "cvgauss/experiment.h"
#include "cvgauss/fock_oracle.h"
#include "cvgauss/matrix_io.h"
#include "cvgauss/monotones.h"

namespace cvgauss {

namespace {

const char* const kMeasures[] = {"kappa_squeeze", "kappa_ent", "kappa_tilde_ub_squeeze", "kappa_tilde_ub_ent",
                                 "m_var",         "m_var_bar"};

GaussianMixture as_mixture(const std::variant<GaussianState, GaussianMixture>& v) {
  if (const auto* s = std::get_if<GaussianState>(&v)) return GaussianMixture(*s);
  return std::get<GaussianMixture>(v);
}

MonotoneReport evaluate(const std::string& measure, const std::variant<GaussianState, GaussianMixture>& input) {
  if (measure == "kappa_squeeze" || measure == "kappa_ent") {
    const GaussianMixture m = as_mixture(input);
    if (m.size() != 1) throw FileFormatError(measure + " needs a single Gaussian state, got a mixture");
    const Mat& cov = m.branches().front().state.cov();
    return measure == "kappa_squeeze" ? kappa_squeeze(cov) : kappa_ent(cov);
  }
  if (measure == "kappa_tilde_ub_squeeze") return kappa_tilde_ub(as_mixture(input), Theory::kSqueezing);
  if (measure == "kappa_tilde_ub_ent") return kappa_tilde_ub(as_mixture(input), Theory::kEntanglement1x1);
  if (measure == "m_var") return m_var(as_mixture(input));
  return m_var_bar(as_mixture(input));
}

int simulate(const std::string& config_path, const std::string& output_flag, std::size_t grid_points, bool quiet,
             std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config_file(config_path);
    if (!output_flag.empty()) cfg.output = output_flag;
    if (grid_points > 0) {
      cfg.sweep.grid.nodes = grid_points;
      cfg.sweep.validate();
    }
  } catch (const ConfigError& e) {
    err << "config error: " << config_path << ": " << e.what() << '\n';
    return kExitConfig;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "config error: cannot write output '" << cfg.output << "'\n";
      return kExitConfig;
    }
  }

  std::vector<SweepRow> rows;
  try {
    rows = sweep(cfg.sweep);
  } catch (const std::exception& e) {
    err << "engine error: " << e.what() << '\n';
    return kExitEngine;
  }

  std::ostream& csv = cfg.output.empty() ? out : static_cast<std::ostream&>(file);
  write_csv(csv, rows);
  csv.flush();
  if (!csv) {
    err << "engine error: failed writing CSV\n";
    return kExitEngine;
  }
  if (!quiet) {
    std::ostream& summary = cfg.output.empty() ? err : out;
    summary << "simulate: " << to_string(cfg.sweep.protocol) << ", " << rows.size() << " rows";
    if (!cfg.output.empty()) summary << " -> " << cfg.output;
    summary << '\n';
  }
  return kExitOk;
}

int monotone(const std::string& measure, const std::string& path, std::ostream& out, std::ostream& err) {
  std::variant<GaussianState, GaussianMixture> input = GaussianState(Vec::Zero(2), Mat::Identity(2, 2));
  try {
    input = read_state_file(path);
  } catch (const FileFormatError& e) {
    err << "input error: " << path << ": " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    out << evaluate(measure, input).line() << '\n';
  } catch (const FileFormatError& e) {
    err << "input error: " << path << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "engine error: " << e.what() << '\n';
    return kExitEngine;
  }
  return kExitOk;
}

int validate_oracle(bool doubling, std::ostream& out, std::ostream& err) {
  try {
    const fock::ValidationReport r = fock::validate_pinned_matrix(doubling);
    out << "cases=" << r.cases << '\n'
        << "max_dev_overlap=" << format_number(r.overlap, 3) << '\n'
        << "max_dev_interval_prob=" << format_number(r.interval_prob, 3) << '\n'
        << "max_dev_conditioned_moments=" << format_number(r.conditioned_moments, 3) << '\n'
        << "max_dev_point_conditioning=" << format_number(r.point_conditioning, 3) << '\n';
    if (doubling) out << "max_change_cutoff_doubling=" << format_number(r.cutoff_doubling, 3) << '\n';
  } catch (const std::exception& e) {
    err << "engine error: " << e.what() << '\n';
    return kExitEngine;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian-mixture simulator for squeezing and entanglement distillation"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress the run summary");
  app.fallthrough();

  std::string config_path, output;
  std::size_t grid_points = 0;
  CLI::App* sim = app.add_subcommand("simulate", "Run a parameter sweep and write CSV");
  sim->add_option("config", config_path, "Config file")->required();
  sim->add_option("-o,--output", output, "CSV path (overrides the config)");
  sim->add_option("--grid-points", grid_points, "Homodyne quadrature nodes (overrides the config)");
  sim->footer(config_help());
  sim->fallthrough();

  std::string measure, state_path;
  CLI::App* mono = app.add_subcommand("monotone", "Evaluate a monotone on a matrix or mixture file");
  mono->add_option("measure", measure, "Measure name")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kMeasures), std::end(kMeasures))));
  mono->add_option("file", state_path, "State file")->required()->check(CLI::ExistingFile);

  std::string target;
  bool doubling = false;
  CLI::App* val = app.add_subcommand("validate", "");
  val->group("");
  val->add_option("target", target, "")->required()->check(CLI::IsMember({"oracle"}));
  val->add_flag("--cutoff-doubling", doubling, "");

  std::ostringstream help_out, help_err;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*sim) return simulate(config_path, output, grid_points, quiet, out, err);
  if (*mono) return monotone(measure, state_path, out, err);
  return validate_oracle(doubling, out, err);
}

}  // namespace cvgauss
