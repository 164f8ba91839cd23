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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcokde/smallmat.hpp"

namespace pcokde {

/// Sobol sequence in up to four dimensions, Gray-code ordering, 32-bit
/// resolution. Direction numbers (new-joe-kuo-6.21201):
///
///   dim  s  a  m_i
///   1    -  -  (van der Corput)
///   2    1  0  1
///   3    2  1  1 3
///   4    3  1  1 3 1
///
/// The all-zero initial point is skipped, so dim 1 starts 0.5, 0.75, 0.25.
class SobolSequence {
 public:
  explicit SobolSequence(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  /// Raw 32-bit coordinates of the next point.
  std::array<std::uint32_t, kMaxDim> next_bits();
  void next(std::span<double> out);

 private:
  std::size_t dim_;
  std::uint32_t index_ = 0;
  std::array<std::array<std::uint32_t, 32>, kMaxDim> v_{};
  std::array<std::uint32_t, kMaxDim> x_{};
};

/// `count` points, row-major count x dim.
std::vector<double> sobol(std::size_t dim, std::size_t count);

/// Points XOR-ed with `shift` (random digital shift), mapped to the open cell centres.
std::vector<double> sobol_shifted(std::size_t dim, std::size_t count, std::span<const std::uint32_t> shift);

}  // namespace pcokde
