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
#include <span>
#include <vector>

#include "pcokde/smallmat.hpp"

namespace pcokde {

/// Density of N(0, covariance): precision and normalising constant cached.
class GaussianDensity {
 public:
  explicit GaussianDensity(const SymMatrix& covariance);

  std::size_t dim() const noexcept { return precision_.dim(); }
  const SymMatrix& precision() const noexcept { return precision_; }
  double determinant() const noexcept { return det_; }
  /// Value at the origin, (2 pi)^{-d/2} det^{-1/2}.
  double peak() const noexcept { return peak_; }
  double operator()(std::span<const double> u) const noexcept;

 private:
  SymMatrix precision_;
  double det_;
  double peak_;
};

/// Coordinate differences X_i - X_j over the n(n-1)/2 pairs i < j, laid out
/// as structure-of-arrays together with the products u_a u_b (a <= b) that a
/// Gaussian quadratic form needs. Double sums over all n^2 ordered pairs are
/// assembled from the diagonal plus twice the i < j sum.
class PairDifferences {
 public:
  explicit PairDifferences(const Sample& sample);

  std::size_t sample_size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t pair_count() const noexcept { return pairs_; }
  std::span<const double> difference(std::size_t axis) const noexcept { return diffs_[axis]; }

  /// sum_{i<j} exp(-u^T Q u / 2)
  double exp_quadratic_sum(const SymMatrix& precision) const;
  /// sum over all n^2 ordered pairs (i = j included) of phi_S(X_i - X_j).
  double gaussian_sum(const SymMatrix& covariance) const;
  double gaussian_sum(const GaussianDensity& density) const;

 private:
  std::size_t n_;
  std::size_t dim_;
  std::size_t pairs_;
  std::vector<std::vector<double>> diffs_;
  std::vector<std::vector<double>> products_;
};

}  // namespace pcokde
