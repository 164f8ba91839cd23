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
#include <vector>

#include "pcokde/kernels.hpp"
#include "pcokde/smallmat.hpp"

namespace pcokde {

/// Candidate bandwidths; `members` always contains the minimal bandwidth at `h_min_index`.
struct BandwidthGrid {
  std::size_t dim = 1;
  std::vector<Bandwidth> members;
  std::size_t h_min_index = 0;
  /// Orthogonal P of a rotated grid (members are P^T D P); identity otherwise.
  SquareMatrix rotation;
  /// Set when the empirical covariance had eigenvalues below 1e-12 * max.
  bool degenerate_covariance = false;

  std::size_t size() const noexcept { return members.size(); }
  const Bandwidth& h_min() const { return members.at(h_min_index); }
};

/// Grid from explicit members; `h_min` is appended unless already present. Exact duplicates are dropped.
BandwidthGrid make_grid(const std::vector<Bandwidth>& members, const Bandwidth& h_min);

/// `count` Sobol points rescaled to [1/n, 1] plus h_min = ||K||_inf / n.
BandwidthGrid univariate_grid(std::size_t n, const Kernel& kernel, std::size_t count = 400);

/// Entry lower bound ||K||_inf / n^{1/d} (univariate sup norm).
double grid_lower_bound(std::size_t n, std::size_t d, const Kernel& kernel);

/// 16^d, except 256 for d = 4.
std::size_t default_grid_size(std::size_t d);

/// Diagonal members with entries from d-dimensional Sobol points in [lower bound, 1].
/// `count` = 0 selects default_grid_size(d).
BandwidthGrid diagonal_grid(std::size_t n, std::size_t d, const Kernel& kernel, std::size_t count = 0);

/// Diagonal grid rotated into the eigenbasis of the empirical covariance.
BandwidthGrid rotated_grid(const Sample& sample, std::size_t n, const Kernel& kernel, std::size_t count = 0);

}  // namespace pcokde
