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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcokde/grids.hpp"
#include "pcokde/kernels.hpp"
#include "pcokde/pairwise.hpp"

namespace pcokde {

struct SelectionResult {
  Bandwidth chosen;
  std::string method;
  /// Criterion value per grid member (grid order); empty for closed-form selectors.
  std::vector<double> criterion;
  std::optional<std::size_t> chosen_index;
  std::vector<std::string> warnings;
  int iterations = 0;
};

/// sum over all ordered pairs (i = j included) of K_H(X_i - X_j).
double kernel_pair_sum(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw);

/// ||f_{H_min} - f_H||^2 + pen_lambda(H).
double pco_criterion(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw,
                     const Bandwidth& bw_min, double lambda);

/// (1/n^2) sum_{i,j} [K_H * K_H - 2 K_H](X_i - X_j) + (2/n) K_H(0).
double ucv_criterion(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw);

/// ||K||^2/(n det H) + (1/n^2) sum_{i,j} [phi_{2H^2+2G^2} - 2 phi_{H^2+2G^2} + phi_{2G^2}](X_i - X_j).
double scv_criterion(const PairDifferences& pairs, const Bandwidth& bw, const Bandwidth& pilot);

/// Smallest finite value; ties go to the smaller det(H), then the earlier member.
std::size_t grid_argmin(const BandwidthGrid& grid, std::span<const double> values);

SelectionResult grid_selection(std::string method, const BandwidthGrid& grid, std::vector<double> values);

}  // namespace pcokde
