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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pcokde/pairwise.hpp"
#include "pcokde/simd/expsum.hpp"
#include "support/random_cases.hpp"

using namespace pcokde;

namespace {

struct Case {
  std::vector<std::vector<double>> features;
  std::vector<const double*> ptrs;
  std::vector<double> coefs;
  std::size_t count;
};

Case random_case(std::mt19937_64& rng, std::size_t m, std::size_t count) {
  std::uniform_real_distribution<double> u(0.0, 3.0);
  Case c;
  c.count = count;
  c.features.assign(m, std::vector<double>(count));
  for (auto& f : c.features)
    for (double& v : f) v = u(rng) * u(rng);
  for (std::size_t j = 0; j < m; ++j) c.coefs.push_back(u(rng));
  for (auto& f : c.features) c.ptrs.push_back(f.data());
  return c;
}

double naive(const Case& c) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < c.count; ++k) {
    double q = 0.0;
    for (std::size_t j = 0; j < c.coefs.size(); ++j) q += c.coefs[j] * c.features[j][k];
    s += std::exp(-q);
  }
  return static_cast<double>(s);
}

struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("scalar reduction matches a naive sum") {
  std::mt19937_64 rng(31);
  for (std::size_t m = 1; m <= 10; ++m)
    for (std::size_t count : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
      const Case c = random_case(rng, m, count);
      REQUIRE(simd::scalar::sum_exp_neg_linear(c.ptrs, c.coefs, count) ==
              doctest::Approx(naive(c)).epsilon(1e-13).scale(1e-300));
    }
}

TEST_CASE("AVX2 reduction is equivalent to the scalar reference") {
  if (!(simd::avx2::compiled() && simd::avx2::cpu_supported())) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(32);
  for (std::size_t m = 1; m <= 10; ++m)
    for (std::size_t count : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 13u, 100u, 4950u}) {
      const Case c = random_case(rng, m, count);
      const double s = simd::scalar::sum_exp_neg_linear(c.ptrs, c.coefs, count);
      const double v = simd::avx2::sum_exp_neg_linear(c.ptrs, c.coefs, count);
      REQUIRE(v == doctest::Approx(s).epsilon(1e-13).scale(1e-300));
    }
  // Tail of the exponential: arguments beyond the underflow threshold contribute exactly zero.
  std::vector<double> f{0.0, 10.0, 700.0, 709.0, 800.0, 1e6};
  const double* p[] = {f.data()};
  const double one[] = {1.0};
  const double s = simd::scalar::sum_exp_neg_linear(p, one, f.size());
  CHECK(simd::avx2::sum_exp_neg_linear(p, one, f.size()) == doctest::Approx(s).epsilon(1e-14));
}

TEST_CASE("dispatch selects a variant and pairwise sums agree across variants") {
  IsaGuard guard;
  std::mt19937_64 rng(33);
  for (std::size_t d = 1; d <= 4; ++d) {
    const Sample s = testing::normal_sample(123, d, rng);
    const PairDifferences pairs(s);
    const SymMatrix cov = testing::random_spd(d, rng, 0.2);
    simd::set_active_isa(simd::Isa::kScalar);
    CHECK(simd::active_isa() == simd::Isa::kScalar);
    const double a = pairs.gaussian_sum(cov);
    simd::set_active_isa(simd::Isa::kAvx2);
    const double b = pairs.gaussian_sum(cov);
    CHECK(b == doctest::Approx(a).epsilon(1e-13));
    if (simd::avx2::cpu_supported()) CHECK(simd::active_isa() == simd::Isa::kAvx2);
  }
}
