// Copyright 2026 The pcokde Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pcokde/risk.hpp"

namespace pcokde {

/// Flat key = value configuration. Lists are comma-separated; '#' starts a comment.
struct ExperimentConfig {
  /// Abbreviations, or "all".
  std::vector<std::string> densities{"all"};
  /// Empty selects default_methods(dim).
  std::vector<std::string> methods;
  std::string kernel = "gaussian";
  std::vector<std::size_t> dims{1};
  std::vector<std::size_t> ns{100};
  std::size_t trials = 20;
  double lambda = 1.0;
  /// Sweep values; empty selects default_lambdas().
  std::vector<double> lambdas;
  std::string grid = "diagonal";
  /// 0 selects the default size for each dimension.
  std::size_t grid_size = 0;
  std::uint64_t master_seed = 20240101;
  std::string output_dir = ".";
};

/// Throws kInvalidArgument on unknown keys or unparsable values.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
/// Text that parse_config maps back to `config`.
std::string format_config(const ExperimentConfig& config);
/// Densities exist, methods parse, trials >= 1, lambdas finite.
void validate(const ExperimentConfig& config);

std::vector<std::string> default_methods(std::size_t dim);
std::vector<double> default_lambdas();
std::vector<BenchmarkDensity> resolve_densities(const ExperimentConfig& config, std::size_t dim);
MethodSpec method_spec(const ExperimentConfig& config, std::string_view method, double lambda);

/// Shortest round-trip decimal form.
std::string format_number(double value);

void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& reports);
/// Wide table: density, then <method> and <method>_bold (1 when mean <= 1.05 x row minimum).
void write_aggregate_csv(std::ostream& out, const std::vector<RiskReport>& reports);
/// Long table: density, method, mean, r_med, r_meth_min; trailing rows carry r_bar.
void write_ratio_csv(std::ostream& out, const std::vector<RiskReport>& reports);

/// One report per (dim, n, density, method), in that nesting order.
std::vector<RiskReport> run_simulation(const ExperimentConfig& config, std::size_t threads);
/// PCO only; one report per (dim, n, density, lambda).
std::vector<RiskReport> run_lambda_sweep(const ExperimentConfig& config, std::size_t threads);
/// density, dim, n, lambda, trials, failures, mean_ise, mean_ise_sqrt.
void write_sweep_csv(std::ostream& out, const std::vector<RiskReport>& reports);

/// Writes config.txt, risk_d<d>_n<n>.csv, table_d<d>_n<n>.csv and ratios_d<d>_n<n>.csv. Returns the files written.
std::vector<std::filesystem::path> simulate_to_directory(const ExperimentConfig& config, std::size_t threads);
/// Writes config.txt, lambda_sweep.csv and lambda_sweep_trials.csv.
std::vector<std::filesystem::path> lambda_sweep_to_directory(const ExperimentConfig& config, std::size_t threads);

}  // namespace pcokde
