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
#include <string>
#include <string_view>

#include "pcokde/grids.hpp"
#include "pcokde/kernels.hpp"
#include "pcokde/selection.hpp"

namespace pcokde {

enum class Method { kPco, kRot, kRot0, kUcv, kBcv, kSjSte, kSjDpi, kScv, kPi };
enum class GridKind { kDiagonal, kRotated };

Method parse_method(std::string_view name);
std::string_view to_string(Method method) noexcept;
GridKind parse_grid_kind(std::string_view name);
std::string_view to_string(GridKind kind) noexcept;
bool uses_grid(Method method) noexcept;

struct MethodSpec {
  Method method = Method::kPco;
  Kernel kernel;
  double lambda = 1.0;
  GridKind grid = GridKind::kDiagonal;
  /// 0 selects the default size: 400 in d = 1, default_grid_size(d) otherwise.
  std::size_t grid_size = 0;
};

/// Grid the method would search for this sample.
BandwidthGrid build_grid(const Sample& sample, const MethodSpec& spec);

/// Runs one selector. Univariate-only methods throw kUnsupportedDimension for d >= 2.
SelectionResult select_bandwidth(const Sample& sample, const MethodSpec& spec);

}  // namespace pcokde
