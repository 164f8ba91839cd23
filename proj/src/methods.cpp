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

#include "pcokde/methods.hpp"

#include <string>

#include "pcokde/error.hpp"
#include "pcokde/select1d.hpp"
#include "pcokde/selectmd.hpp"

namespace pcokde {

Method parse_method(std::string_view name) {
  if (name == "pco") return Method::kPco;
  if (name == "rot") return Method::kRot;
  if (name == "rot0") return Method::kRot0;
  if (name == "ucv") return Method::kUcv;
  if (name == "bcv") return Method::kBcv;
  if (name == "sjste") return Method::kSjSte;
  if (name == "sjdpi") return Method::kSjDpi;
  if (name == "scv") return Method::kScv;
  if (name == "pi") return Method::kPi;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::kPco: return "pco";
    case Method::kRot: return "rot";
    case Method::kRot0: return "rot0";
    case Method::kUcv: return "ucv";
    case Method::kBcv: return "bcv";
    case Method::kSjSte: return "sjste";
    case Method::kSjDpi: return "sjdpi";
    case Method::kScv: return "scv";
    case Method::kPi: return "pi";
  }
  return "unknown";
}

GridKind parse_grid_kind(std::string_view name) {
  if (name == "diagonal") return GridKind::kDiagonal;
  if (name == "rotated") return GridKind::kRotated;
  throw Error(ErrorCode::kInvalidArgument, "unknown grid kind '" + std::string(name) + "'");
}

std::string_view to_string(GridKind kind) noexcept {
  return kind == GridKind::kDiagonal ? "diagonal" : "rotated";
}

bool uses_grid(Method method) noexcept {
  return method == Method::kPco || method == Method::kUcv || method == Method::kScv || method == Method::kPi;
}

BandwidthGrid build_grid(const Sample& sample, const MethodSpec& spec) {
  const std::size_t n = sample.size();
  if (sample.dim() == 1) return univariate_grid(n, spec.kernel, spec.grid_size == 0 ? 400 : spec.grid_size);
  if (spec.grid == GridKind::kRotated) return rotated_grid(sample, n, spec.kernel, spec.grid_size);
  return diagonal_grid(n, sample.dim(), spec.kernel, spec.grid_size);
}

SelectionResult select_bandwidth(const Sample& sample, const MethodSpec& spec) {
  const std::size_t d = sample.dim();
  spec.kernel.require_dimension(d);
  auto univariate_only = [&]() {
    if (d != 1) {
      throw Error(ErrorCode::kUnsupportedDimension,
                  std::string(to_string(spec.method)) + " is univariate only, got d=" + std::to_string(d));
    }
  };
  switch (spec.method) {
    case Method::kRot:
      return d == 1 ? rot_select(sample, RotVariant::kRot) : rot_select_md(sample);
    case Method::kRot0:
      univariate_only();
      return rot_select(sample, RotVariant::kRot0);
    case Method::kBcv:
      univariate_only();
      return bcv_select(sample, spec.kernel);
    case Method::kSjSte:
      univariate_only();
      return sj_select(sample, spec.kernel, SjMode::kSte);
    case Method::kSjDpi:
      univariate_only();
      return sj_select(sample, spec.kernel, SjMode::kDpi);
    default:
      break;
  }
  const BandwidthGrid grid = build_grid(sample, spec);
  switch (spec.method) {
    case Method::kPco:
      return pco_select(sample, spec.kernel, grid, spec.lambda);
    case Method::kUcv:
      return ucv_select(sample, spec.kernel, grid);
    case Method::kScv:
    case Method::kPi: {
      if (!spec.kernel.is_gaussian()) {
        throw Error(ErrorCode::kInvalidArgument, std::string(to_string(spec.method)) + " requires the gaussian kernel");
      }
      if (spec.method == Method::kScv) return scv_select_md(sample, grid, PilotSpec::normal_reference(sample));
      return pi_select_md(sample, grid, PilotSpec::psi4_normal_reference(sample));
    }
    default:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "unhandled method");
}

}  // namespace pcokde
