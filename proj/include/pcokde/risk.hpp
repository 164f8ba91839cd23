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
#include <string>
#include <vector>

#include "pcokde/density_zoo.hpp"
#include "pcokde/kernels.hpp"
#include "pcokde/methods.hpp"

namespace pcokde {

struct IseResult {
  double value = 0.0;
  /// Monte-Carlo standard error of `value`; zero for deterministic paths.
  double standard_error = 0.0;
};

/// int f_a f_b for two mixture components.
double component_overlap(const MixtureComponent& a, const MixtureComponent& b);
/// int f^2.
double density_squared_norm(const BenchmarkDensity& density);
/// int f_hat f.
IseResult kde_density_inner(const BenchmarkDensity& density, const Sample& sample, const Kernel& kernel,
                            const Bandwidth& bw);

/// ||f_hat - f||^2. Throws kQuadratureNotConverged when a quasi-Monte-Carlo term has relative error above 1%.
IseResult ise_detailed(const BenchmarkDensity& density, const Sample& sample, const Kernel& kernel,
                       const Bandwidth& bw);
double ise(const BenchmarkDensity& density, const Sample& sample, const Kernel& kernel, const Bandwidth& bw);

/// hash(master, density id, n, trial). The method is deliberately absent so every method sees the same samples.
std::uint64_t trial_seed(std::uint64_t master_seed, const BenchmarkDensity& density, std::size_t n,
                         std::size_t trial);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double ise_sqrt = 0.0;
  std::vector<double> chosen_vech;
  bool ok = true;
  /// "ok" or "failed: <message>".
  std::string status = "ok";
};

struct RiskReport {
  std::string density;
  std::size_t dim = 1;
  std::string method;
  std::string kernel;
  std::string grid;
  double lambda = 1.0;
  std::size_t n = 0;
  std::vector<TrialRecord> trials;
  double mean = 0.0;
  double median = 0.0;
  std::size_t failures = 0;
  /// False when more than 10% of the trials failed.
  bool valid = true;

  /// Recomputes mean, median, failures and valid from `trials`.
  void recompute();
};

RiskReport monte_carlo_risk(const BenchmarkDensity& density, const MethodSpec& spec, std::size_t n,
                            std::size_t trials, std::uint64_t master_seed, std::size_t threads = 1);

struct RatioTable {
  std::vector<std::string> densities;
  std::vector<std::string> methods;
  /// [density][method]; NaN when the cell is missing.
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> r_med;
  std::vector<std::vector<double>> r_meth_min;
  /// Per method, average of r_meth_min over densities.
  std::vector<double> r_bar;
};

/// Paired ratio statistics. `reference` is the method in the r_med denominator.
RatioTable ratio_stats(const std::vector<RiskReport>& reports, const std::string& reference = "pco");

double median_of(std::vector<double> values);

}  // namespace pcokde
