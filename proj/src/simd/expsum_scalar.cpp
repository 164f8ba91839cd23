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

#include <cmath>

#include "pcokde/simd/expsum.hpp"

namespace pcokde::simd::scalar {

double sum_exp_neg_linear(std::span<const double* const> features, std::span<const double> coefs,
                          std::size_t count) {
  const std::size_t m = coefs.size();
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    double q = 0.0;
    for (std::size_t j = 0; j < m; ++j) q += coefs[j] * features[j][k];
    total += std::exp(-q);
  }
  return total;
}

}  // namespace pcokde::simd::scalar
