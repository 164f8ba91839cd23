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

#include "pcokde/selection.hpp"

#include <cmath>
#include <limits>

#include "pcokde/error.hpp"

namespace pcokde {

double kernel_pair_sum(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw) {
  if (bw.dim() != pairs.dim()) throw Error(ErrorCode::kDimensionMismatch, "bandwidth vs sample dimension");
  kernel.require_dimension(bw.dim());
  if (kernel.is_gaussian()) return pairs.gaussian_sum(bw.covariance());
  const double h = bw.scalar();
  double off = 0.0;
  for (const double u : pairs.difference(0)) off += kernel.profile(u / h);
  return (static_cast<double>(pairs.sample_size()) * kernel.profile(0.0) + 2.0 * off) / h;
}

double pco_criterion(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw,
                     const Bandwidth& bw_min, double lambda) {
  const double n = static_cast<double>(pairs.sample_size());
  const double comparison = (convolution_pair_sum(pairs, kernel, bw, bw) -
                             2.0 * convolution_pair_sum(pairs, kernel, bw, bw_min) +
                             convolution_pair_sum(pairs, kernel, bw_min, bw_min)) /
                            (n * n);
  return comparison + pco_penalty(kernel, bw, bw_min, lambda, pairs.sample_size());
}

double ucv_criterion(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw) {
  const double n = static_cast<double>(pairs.sample_size());
  const std::vector<double> origin(bw.dim(), 0.0);
  return (convolution_pair_sum(pairs, kernel, bw, bw) - 2.0 * kernel_pair_sum(pairs, kernel, bw)) / (n * n) +
         2.0 * kernel_eval(kernel, bw, origin) / n;
}

double scv_criterion(const PairDifferences& pairs, const Bandwidth& bw, const Bandwidth& pilot) {
  if (bw.dim() != pairs.dim() || pilot.dim() != pairs.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "bandwidth vs sample dimension");
  }
  const double n = static_cast<double>(pairs.sample_size());
  const SymMatrix& h2 = bw.covariance();
  const SymMatrix g2 = pilot.covariance() * 2.0;
  const double sum = pairs.gaussian_sum(h2 * 2.0 + g2) - 2.0 * pairs.gaussian_sum(h2 + g2) + pairs.gaussian_sum(g2);
  const Kernel gauss;
  return gauss.squared_norm(bw.dim()) / (n * bw.determinant()) + sum / (n * n);
}

std::size_t grid_argmin(const BandwidthGrid& grid, std::span<const double> values) {
  if (grid.members.empty()) throw Error(ErrorCode::kEmptyGrid, "empty bandwidth grid");
  if (values.size() != grid.members.size()) throw Error(ErrorCode::kDimensionMismatch, "criterion length vs grid");
  std::size_t best = grid.members.size();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) continue;
    if (best == grid.members.size() || values[k] < values[best] ||
        (values[k] == values[best] && grid.members[k].determinant() < grid.members[best].determinant())) {
      best = k;
    }
  }
  if (best == grid.members.size()) throw Error(ErrorCode::kEmptyGrid, "no finite criterion value on the grid");
  return best;
}

SelectionResult grid_selection(std::string method, const BandwidthGrid& grid, std::vector<double> values) {
  const std::size_t k = grid_argmin(grid, values);
  SelectionResult result{grid.members[k], std::move(method), std::move(values), k, {}, 0};
  return result;
}

}  // namespace pcokde
