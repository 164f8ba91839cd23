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

// Vectorised reduction at the heart of every pairwise Gaussian double sum:
//
//   sum_k exp(-(c_0 f_0[k] + c_1 f_1[k] + ... + c_{m-1} f_{m-1}[k]))
//
// where the f_j are precomputed per-pair features (products of coordinate
// differences) and the c_j encode a precision matrix. The scalar variant is the
// reference; the AVX2 variant is selected at runtime when the CPU supports it.

#include <cstddef>
#include <span>
#include <string_view>

namespace pcokde::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

/// Best ISA supported by this CPU and build, unless PCOKDE_SIMD=scalar is set.
Isa detected_isa();
/// Currently selected variant (defaults to detected_isa()).
Isa active_isa();
/// Override for tests and benchmarks; requesting an unsupported ISA falls back to scalar.
void set_active_isa(Isa isa);

/// `features` holds m pointers to arrays of length `count`; `coefs` has m entries.
/// Callers guarantee every exponent argument is >= 0 (i.e. the sum is of exp(-q), q >= 0).
double sum_exp_neg_linear(std::span<const double* const> features, std::span<const double> coefs,
                          std::size_t count);

namespace scalar {
double sum_exp_neg_linear(std::span<const double* const> features, std::span<const double> coefs,
                          std::size_t count);
}  // namespace scalar

namespace avx2 {
bool compiled() noexcept;
bool cpu_supported() noexcept;
double sum_exp_neg_linear(std::span<const double* const> features, std::span<const double> coefs,
                          std::size_t count);
}  // namespace avx2

}  // namespace pcokde::simd
