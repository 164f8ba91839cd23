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

#include "pcokde/grids.hpp"

#include <cmath>
#include <set>
#include <string>

#include "pcokde/error.hpp"
#include "pcokde/sobol.hpp"

namespace pcokde {
namespace {

void check_h_min(const Bandwidth& h_min, std::size_t n, const Kernel& kernel) {
  const double bound = kernel.sup_norm(h_min.dim()) * kernel.l1_norm() / static_cast<double>(n);
  if (h_min.determinant() < bound * (1.0 - 1e-12)) {
    throw Error(ErrorCode::kInvalidArgument, "det(H_min) below ||K||_inf ||K||_1 / n");
  }
}

std::vector<double> diagonal_entries(std::size_t d, std::size_t count, double lo) {
  std::vector<double> pts = sobol(d, count);
  for (double& v : pts) v = lo + (1.0 - lo) * v;
  return pts;
}

}  // namespace

BandwidthGrid make_grid(const std::vector<Bandwidth>& members, const Bandwidth& h_min) {
  BandwidthGrid grid;
  grid.dim = h_min.dim();
  grid.rotation = SquareMatrix::identity(grid.dim);
  grid.members.reserve(members.size() + 1);
  bool have_min = false;
  std::set<std::vector<double>> seen;
  for (const Bandwidth& m : members) {
    if (m.dim() != grid.dim) throw Error(ErrorCode::kDimensionMismatch, "grid member dimension");
    if (!seen.insert(vech(m.matrix())).second) continue;
    if (m.matrix() == h_min.matrix()) {
      have_min = true;
      grid.h_min_index = grid.members.size();
    }
    grid.members.push_back(m);
  }
  if (!have_min) {
    grid.h_min_index = grid.members.size();
    grid.members.push_back(h_min);
  }
  return grid;
}

BandwidthGrid univariate_grid(std::size_t n, const Kernel& kernel, std::size_t count) {
  if (n < 2) throw Error(ErrorCode::kInsufficientData, "univariate grid needs n >= 2");
  if (count < 1) throw Error(ErrorCode::kEmptyGrid, "grid count must be positive");
  const double lo = 1.0 / static_cast<double>(n);
  std::vector<Bandwidth> members;
  members.reserve(count);
  for (const double u : sobol(1, count)) members.emplace_back(lo + (1.0 - lo) * u);
  const Bandwidth h_min(kernel.sup_norm(1) / static_cast<double>(n));
  check_h_min(h_min, n, kernel);
  return make_grid(members, h_min);
}

double grid_lower_bound(std::size_t n, std::size_t d, const Kernel& kernel) {
  return kernel.sup_norm(1) / std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d));
}

std::size_t default_grid_size(std::size_t d) {
  if (d == 4) return 256;
  std::size_t size = 1;
  for (std::size_t a = 0; a < d; ++a) size *= 16;
  return size;
}

BandwidthGrid diagonal_grid(std::size_t n, std::size_t d, const Kernel& kernel, std::size_t count) {
  if (d < 1 || d > kMaxDim) throw Error(ErrorCode::kUnsupportedDimension, "unsupported dimension " + std::to_string(d));
  if (n < 2) throw Error(ErrorCode::kInsufficientData, "grid needs n >= 2");
  kernel.require_dimension(d);
  if (count == 0) count = default_grid_size(d);
  const double lo = grid_lower_bound(n, d, kernel);
  const std::vector<double> entries = diagonal_entries(d, count, lo);
  std::vector<Bandwidth> members;
  members.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    members.emplace_back(SymMatrix::diagonal(std::span<const double>(entries.data() + i * d, d)));
  }
  const Bandwidth h_min(SymMatrix::scalar(d, lo));
  check_h_min(h_min, n, kernel);
  return make_grid(members, h_min);
}

BandwidthGrid rotated_grid(const Sample& sample, std::size_t n, const Kernel& kernel, std::size_t count) {
  const std::size_t d = sample.dim();
  if (n < 2) throw Error(ErrorCode::kInsufficientData, "grid needs n >= 2");
  kernel.require_dimension(d);
  if (count == 0) count = default_grid_size(d);
  const SymMatrix cov = empirical_covariance(sample);

  SquareMatrix rotation = SquareMatrix::identity(d);
  bool degenerate = false;
  if (!cov.is_diagonal()) {
    const EigenDecomposition eig = sym_eig(cov);
    rotation = eig.rotation;
    const double top = eig.eigenvalues[0];
    for (std::size_t a = 0; a < d; ++a) {
      if (eig.eigenvalues[a] < 1e-12 * top) degenerate = true;
    }
  } else {
    double top = 0.0;
    for (std::size_t a = 0; a < d; ++a) top = std::max(top, cov(a, a));
    for (std::size_t a = 0; a < d; ++a) {
      if (cov(a, a) < 1e-12 * top) degenerate = true;
    }
  }

  const double lo = grid_lower_bound(n, d, kernel);
  const std::vector<double> entries = diagonal_entries(d, count, lo);
  std::vector<Bandwidth> members;
  members.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    members.emplace_back(rotate_diagonal(rotation, std::span<const double>(entries.data() + i * d, d)));
  }
  const Bandwidth h_min(SymMatrix::scalar(d, lo));
  check_h_min(h_min, n, kernel);
  BandwidthGrid grid = make_grid(members, h_min);
  grid.rotation = rotation;
  grid.degenerate_covariance = degenerate;
  return grid;
}

}  // namespace pcokde
