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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcokde/pairwise.hpp"
#include "pcokde/rng.hpp"
#include "pcokde/smallmat.hpp"

namespace pcokde {

enum class ComponentKind { kGaussian, kBox, kBall, kExponential };

class MixtureComponent {
 public:
  /// Non-SPD covariances are projected by clamping eigenvalues at 1e-8; see projected().
  static MixtureComponent gaussian(double weight, std::vector<double> mean, const SymMatrix& covariance);
  static MixtureComponent box(double weight, std::vector<double> lower, std::vector<double> upper);
  static MixtureComponent ball(double weight, std::vector<double> center, double radius);
  /// Rate-`rate` exponential on [0, inf); d = 1.
  static MixtureComponent exponential(double weight, double rate);

  ComponentKind kind() const noexcept { return kind_; }
  double weight() const noexcept { return weight_; }
  std::size_t dim() const noexcept { return dim_; }
  /// Gaussian mean or ball centre.
  const std::vector<double>& location() const noexcept { return location_; }
  const SymMatrix& covariance() const noexcept { return covariance_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double radius() const noexcept { return radius_; }
  double rate() const noexcept { return rate_; }
  bool projected() const noexcept { return projected_; }
  /// 1 / Lebesgue measure of the support for box and ball.
  double uniform_height() const;

  double pdf(std::span<const double> x) const;
  double cdf(double x) const;
  void draw(Rng& rng, std::span<double> out) const;
  std::vector<double> mean() const;
  /// Covariance of the component itself.
  SymMatrix second_central_moment() const;

 private:
  ComponentKind kind_ = ComponentKind::kGaussian;
  double weight_ = 0.0;
  std::size_t dim_ = 1;
  std::vector<double> location_;
  SymMatrix covariance_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  double radius_ = 0.0;
  double rate_ = 0.0;
  bool projected_ = false;
  std::optional<GaussianDensity> density_;
  SquareMatrix chol_;
};

class BenchmarkDensity {
 public:
  BenchmarkDensity(std::string name, std::string abbreviation, std::size_t dim,
                   std::vector<MixtureComponent> components);

  const std::string& name() const noexcept { return name_; }
  const std::string& abbreviation() const noexcept { return abbreviation_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<MixtureComponent>& components() const noexcept { return components_; }
  /// True when some table covariance had to be projected to SPD.
  bool projected() const noexcept;
  bool all_gaussian() const noexcept;
  /// Stable identifier: FNV-1a of "<abbreviation>/<dim>".
  std::uint64_t id() const noexcept;

  double pdf(std::span<const double> x) const;
  /// Mixture CDF; d = 1.
  double cdf(double x) const;
  Sample sample(std::size_t n, std::uint64_t seed) const;
  std::vector<double> mean() const;
  SymMatrix covariance() const;

 private:
  std::string name_;
  std::string abbreviation_;
  std::size_t dim_;
  std::vector<MixtureComponent> components_;
  std::vector<double> weights_;
};

/// 19 densities for d = 1, 14 for d in {2, 3, 4}.
std::vector<BenchmarkDensity> zoo(std::size_t dim);
BenchmarkDensity find_density(std::size_t dim, std::string_view abbreviation);
/// JSON catalog of the zoo in dimension `dim`.
std::string zoo_catalog_json(std::size_t dim);

}  // namespace pcokde
