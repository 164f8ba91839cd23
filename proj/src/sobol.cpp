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

#include "pcokde/sobol.hpp"

#include <bit>
#include <string>

#include "pcokde/error.hpp"

namespace pcokde {
namespace {

struct Primitive {
  unsigned s;
  unsigned a;
  std::array<std::uint32_t, 3> m;
};

constexpr std::array<Primitive, 3> kTable{{
    {1, 0, {1, 0, 0}},
    {2, 1, {1, 3, 0}},
    {3, 1, {1, 3, 1}},
}};

constexpr double kScale = 0x1.0p-32;

}  // namespace

SobolSequence::SobolSequence(std::size_t dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::kUnsupportedDimension, "sobol dimension " + std::to_string(dim));
  }
  for (unsigned i = 1; i <= 32; ++i) v_[0][i - 1] = 1u << (32 - i);
  for (std::size_t d = 1; d < dim_; ++d) {
    const Primitive& p = kTable[d - 1];
    auto& v = v_[d];
    for (unsigned i = 1; i <= p.s; ++i) v[i - 1] = p.m[i - 1] << (32 - i);
    for (unsigned i = p.s + 1; i <= 32; ++i) {
      std::uint32_t value = v[i - p.s - 1] ^ (v[i - p.s - 1] >> p.s);
      for (unsigned k = 1; k + 1 <= p.s; ++k) {
        if ((p.a >> (p.s - 1 - k)) & 1u) value ^= v[i - k - 1];
      }
      v[i - 1] = value;
    }
  }
}

std::array<std::uint32_t, kMaxDim> SobolSequence::next_bits() {
  // Rightmost zero bit of the current index selects the direction number.
  const unsigned c = static_cast<unsigned>(std::countr_one(index_));
  if (c >= 32) throw Error(ErrorCode::kInvalidArgument, "sobol sequence exhausted");
  for (std::size_t d = 0; d < dim_; ++d) x_[d] ^= v_[d][c];
  ++index_;
  return x_;
}

void SobolSequence::next(std::span<double> out) {
  const auto bits = next_bits();
  for (std::size_t d = 0; d < dim_; ++d) out[d] = static_cast<double>(bits[d]) * kScale;
}

std::vector<double> sobol(std::size_t dim, std::size_t count) {
  SobolSequence seq(dim);
  std::vector<double> points(dim * count);
  for (std::size_t i = 0; i < count; ++i) seq.next(std::span<double>(points.data() + i * dim, dim));
  return points;
}

std::vector<double> sobol_shifted(std::size_t dim, std::size_t count, std::span<const std::uint32_t> shift) {
  if (shift.size() < dim) throw Error(ErrorCode::kDimensionMismatch, "sobol shift length");
  SobolSequence seq(dim);
  std::vector<double> points(dim * count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto bits = seq.next_bits();
    for (std::size_t d = 0; d < dim; ++d) {
      points[i * dim + d] = (static_cast<double>(bits[d] ^ shift[d]) + 0.5) * kScale;
    }
  }
  return points;
}

}  // namespace pcokde
