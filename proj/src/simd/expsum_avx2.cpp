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

// Built with -mavx2 -mfma; only entered after a runtime CPU check.

#include "pcokde/simd/expsum.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

#include <cmath>

namespace pcokde::simd::avx2 {
namespace {

// exp(x) for x <= 0. Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, then a
// degree-12 Taylor polynomial (truncation error < 2e-16 relative). Arguments
// below -708 flush to zero.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d lower = _mm256_set1_pd(-708.0);

  const __m256d underflow = _mm256_cmp_pd(x, lower, _CMP_LT_OQ);
  x = _mm256_max_pd(x, lower);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  __m256d p = _mm256_set1_pd(1.0 / 479001600.0);
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // 2^n via the exponent field; n is in [-1022, 0] here.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_cvtepi32_epi64(n32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  const __m256d scale = _mm256_castsi256_pd(bits);

  return _mm256_andnot_pd(underflow, _mm256_mul_pd(p, scale));
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

bool compiled() noexcept { return true; }

bool cpu_supported() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double sum_exp_neg_linear(std::span<const double* const> features, std::span<const double> coefs,
                          std::size_t count) {
  const std::size_t m = coefs.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= count; k += 8) {
    __m256d q0 = _mm256_setzero_pd();
    __m256d q1 = _mm256_setzero_pd();
    for (std::size_t j = 0; j < m; ++j) {
      const __m256d c = _mm256_set1_pd(coefs[j]);
      q0 = _mm256_fmadd_pd(c, _mm256_loadu_pd(features[j] + k), q0);
      q1 = _mm256_fmadd_pd(c, _mm256_loadu_pd(features[j] + k + 4), q1);
    }
    acc0 = _mm256_add_pd(acc0, exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), q0)));
    acc1 = _mm256_add_pd(acc1, exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), q1)));
  }
  for (; k + 4 <= count; k += 4) {
    __m256d q = _mm256_setzero_pd();
    for (std::size_t j = 0; j < m; ++j) {
      q = _mm256_fmadd_pd(_mm256_set1_pd(coefs[j]), _mm256_loadu_pd(features[j] + k), q);
    }
    acc0 = _mm256_add_pd(acc0, exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), q)));
  }
  double total = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; k < count; ++k) {
    double q = 0.0;
    for (std::size_t j = 0; j < m; ++j) q += coefs[j] * features[j][k];
    total += std::exp(-q);
  }
  return total;
}

}  // namespace pcokde::simd::avx2

#else

#include "pcokde/error.hpp"

namespace pcokde::simd::avx2 {

bool compiled() noexcept { return false; }
bool cpu_supported() noexcept { return false; }

double sum_exp_neg_linear(std::span<const double* const>, std::span<const double>, std::size_t) {
  throw Error(ErrorCode::kInvalidArgument, "AVX2 kernels were not compiled into this build");
}

}  // namespace pcokde::simd::avx2

#endif
