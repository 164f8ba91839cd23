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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace pcokde {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of `text`.
std::uint64_t fnv1a(std::string_view text) noexcept;

/// Order-dependent combination of 64-bit words through mix64.
std::uint64_t hash_words(std::span<const std::uint64_t> words) noexcept;

/// Seeded stream: std::mt19937_64 for bits, portable transforms on top
/// (std distributions are implementation-defined, so none are used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal by Box-Muller; the second variate of each pair is cached.
  double normal();
  double exponential(double rate);
  /// Index drawn from unnormalised non-negative weights.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pcokde
