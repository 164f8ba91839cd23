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

#include <atomic>
#include <cstdlib>
#include <string>

#include "pcokde/simd/expsum.hpp"

namespace pcokde::simd {
namespace {

Isa probe() {
  if (const char* env = std::getenv("PCOKDE_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::kScalar;
  }
  if (avx2::compiled() && avx2::cpu_supported()) return Isa::kAvx2;
  return Isa::kScalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !(avx2::compiled() && avx2::cpu_supported())) isa = Isa::kScalar;
  selected().store(isa, std::memory_order_relaxed);
}

double sum_exp_neg_linear(std::span<const double* const> features, std::span<const double> coefs,
                          std::size_t count) {
  if (active_isa() == Isa::kAvx2) return avx2::sum_exp_neg_linear(features, coefs, count);
  return scalar::sum_exp_neg_linear(features, coefs, count);
}

}  // namespace pcokde::simd
