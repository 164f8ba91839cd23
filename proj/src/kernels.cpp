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

#include "pcokde/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pcokde/error.hpp"

namespace pcokde {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Profile polynomials on [-1, 1], coefficients of u^0 .. u^4.
using Poly = std::array<double, 9>;

Poly profile_poly(KernelFamily family) {
  switch (family) {
    case KernelFamily::kEpanechnikov: return {0.75, 0.0, -0.75, 0, 0, 0, 0, 0, 0};
    case KernelFamily::kBiweight: return {15.0 / 16.0, 0.0, -30.0 / 16.0, 0.0, 15.0 / 16.0, 0, 0, 0, 0};
    case KernelFamily::kGaussian: break;
  }
  return {};
}

// (K_{h1} * K_{h2})(u) for a compactly supported polynomial profile, by exact
// integration of the product polynomial over the overlap of the supports.
double polynomial_convolution(const Poly& k, double h1, double h2, double u) {
  double hs = std::min(h1, h2);
  double hl = std::max(h1, h2);
  u = std::abs(u);
  if (u >= hs + hl) return 0.0;
  const double lo = std::max(-hs, u - hl);
  const double hi = std::min(hs, u + hl);
  const double s_lo = lo / hs;
  const double s_hi = hi / hs;
  const double a = u / hl;
  const double b = hs / hl;

  std::array<double, 5> apow{1.0};
  std::array<double, 5> bpow{1.0};
  for (int j = 1; j <= 4; ++j) {
    apow[j] = apow[j - 1] * a;
    bpow[j] = bpow[j - 1] * -b;
  }
  // q(s) = k(a - b s)
  Poly q{};
  for (int deg = 0; deg <= 4; ++deg) {
    if (k[deg] == 0.0) continue;
    double binom = 1.0;
    for (int j = 0; j <= deg; ++j) {
      q[j] += k[deg] * binom * apow[deg - j] * bpow[j];
      binom = binom * (deg - j) / (j + 1);
    }
  }
  // Moments int_{s_lo}^{s_hi} s^m ds for m = 0..8.
  std::array<double, 9> moment{};
  double hi_pow = s_hi;
  double lo_pow = s_lo;
  for (int m = 0; m <= 8; ++m) {
    moment[m] = (hi_pow - lo_pow) / (m + 1);
    hi_pow *= s_hi;
    lo_pow *= s_lo;
  }
  double total = 0.0;
  for (int i = 0; i <= 4; ++i) {
    if (k[i] == 0.0) continue;
    for (int j = 0; j <= 4; ++j) total += k[i] * q[j] * moment[i + j];
  }
  return total / hl;
}

SymMatrix sum_cov(const Bandwidth& a, const Bandwidth& b) { return a.covariance() + b.covariance(); }

}  // namespace

Kernel Kernel::parse(std::string_view name) {
  if (name == "gaussian") return Kernel(KernelFamily::kGaussian);
  if (name == "epanechnikov") return Kernel(KernelFamily::kEpanechnikov);
  if (name == "biweight") return Kernel(KernelFamily::kBiweight);
  throw Error(ErrorCode::kInvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

std::string_view Kernel::name() const noexcept {
  switch (family_) {
    case KernelFamily::kGaussian: return "gaussian";
    case KernelFamily::kEpanechnikov: return "epanechnikov";
    case KernelFamily::kBiweight: return "biweight";
  }
  return "unknown";
}

void Kernel::require_dimension(std::size_t dim) const {
  if (dim >= 2 && !is_gaussian()) {
    throw Error(ErrorCode::kUnsupportedKernelDimension,
                std::string(name()) + " kernel is univariate only, got d=" + std::to_string(dim));
  }
}

double Kernel::squared_norm(std::size_t dim) const {
  require_dimension(dim);
  switch (family_) {
    case KernelFamily::kGaussian: return std::pow(2.0 * std::sqrt(std::numbers::pi), -static_cast<double>(dim));
    case KernelFamily::kEpanechnikov: return 3.0 / 5.0;
    case KernelFamily::kBiweight: return 5.0 / 7.0;
  }
  return 0.0;
}

double Kernel::second_moment() const noexcept {
  switch (family_) {
    case KernelFamily::kGaussian: return 1.0;
    case KernelFamily::kEpanechnikov: return 1.0 / 5.0;
    case KernelFamily::kBiweight: return 1.0 / 7.0;
  }
  return 0.0;
}

double Kernel::sup_norm(std::size_t dim) const {
  require_dimension(dim);
  switch (family_) {
    case KernelFamily::kGaussian: return std::pow(kInvSqrt2Pi, static_cast<double>(dim));
    case KernelFamily::kEpanechnikov: return 0.75;
    case KernelFamily::kBiweight: return 15.0 / 16.0;
  }
  return 0.0;
}

double Kernel::support_radius() const noexcept {
  return is_gaussian() ? std::numeric_limits<double>::infinity() : 1.0;
}

double Kernel::profile(double u) const noexcept {
  switch (family_) {
    case KernelFamily::kGaussian: return kInvSqrt2Pi * std::exp(-0.5 * u * u);
    case KernelFamily::kEpanechnikov: return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case KernelFamily::kBiweight: {
      if (std::abs(u) > 1.0) return 0.0;
      const double t = 1.0 - u * u;
      return 15.0 / 16.0 * t * t;
    }
  }
  return 0.0;
}

Bandwidth::Bandwidth(double h) : Bandwidth(SymMatrix::scalar(1, h)) {}

Bandwidth::Bandwidth(const SymMatrix& h)
    : matrix_(h), covariance_(square(h)), det_(pcokde::determinant(h)), eigen_(sym_eig(h)) {
  for (std::size_t k = 0; k < h.dim(); ++k) {
    if (!(eigen_.eigenvalues[k] > 0.0) || !std::isfinite(eigen_.eigenvalues[k])) {
      throw Error(ErrorCode::kNotPositiveDefinite, "bandwidth eigenvalue " + std::to_string(eigen_.eigenvalues[k]));
    }
  }
}

Bandwidth Bandwidth::from_covariance(const SymMatrix& covariance) { return Bandwidth(spd_sqrt(covariance)); }

double Bandwidth::scalar() const {
  if (dim() != 1) throw Error(ErrorCode::kDimensionMismatch, "scalar() on a matrix bandwidth");
  return matrix_(0, 0);
}

double kernel_eval(const Kernel& kernel, const Bandwidth& bw, std::span<const double> u) {
  if (u.size() != bw.dim()) throw Error(ErrorCode::kDimensionMismatch, "kernel_eval point dimension");
  kernel.require_dimension(bw.dim());
  if (kernel.is_gaussian()) return GaussianDensity(bw.covariance())(u);
  const double h = bw.scalar();
  return kernel.profile(u[0] / h) / h;
}

double kde_eval(const Sample& sample, const Kernel& kernel, const Bandwidth& bw, std::span<const double> x) {
  if (sample.dim() != bw.dim() || x.size() != bw.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "kde_eval: sample, bandwidth and point must share a dimension");
  }
  kernel.require_dimension(bw.dim());
  const std::size_t d = bw.dim();
  std::array<double, kMaxDim> u{};
  double total = 0.0;
  if (kernel.is_gaussian()) {
    const GaussianDensity g(bw.covariance());
    for (std::size_t i = 0; i < sample.size(); ++i) {
      for (std::size_t a = 0; a < d; ++a) u[a] = x[a] - sample(i, a);
      total += g(std::span<const double>(u.data(), d));
    }
  } else {
    const double h = bw.scalar();
    for (std::size_t i = 0; i < sample.size(); ++i) total += kernel.profile((x[0] - sample(i, 0)) / h) / h;
  }
  return total / static_cast<double>(sample.size());
}

double kernel_self_convolution(const Kernel& kernel, double h1, double h2, double u) {
  if (!(h1 > 0.0) || !(h2 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "convolution bandwidths must be positive");
  if (kernel.is_gaussian()) {
    const double var = h1 * h1 + h2 * h2;
    return kInvSqrt2Pi / std::sqrt(var) * std::exp(-0.5 * u * u / var);
  }
  return polynomial_convolution(profile_poly(kernel.family()), h1, h2, u);
}

double kernel_cross_product(const Kernel& kernel, const Bandwidth& a, const Bandwidth& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "bandwidth dimensions differ");
  kernel.require_dimension(a.dim());
  if (kernel.is_gaussian()) return GaussianDensity(sum_cov(a, b)).peak();
  return kernel_self_convolution(kernel, a.scalar(), b.scalar(), 0.0);
}

double pco_penalty(const Kernel& kernel, const Bandwidth& bw, const Bandwidth& bw_min, double lambda,
                   std::size_t n) {
  if (bw.dim() != bw_min.dim()) throw Error(ErrorCode::kDimensionMismatch, "bandwidth dimensions differ");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "pco_penalty needs n >= 1");
  const double norm = kernel.squared_norm(bw.dim());
  const double kh = norm / bw.determinant();
  const double kmin = norm / bw_min.determinant();
  const double comparison = kh + kmin - 2.0 * kernel_cross_product(kernel, bw, bw_min);
  return (lambda * kh - comparison) / static_cast<double>(n);
}

double convolution_pair_sum(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& a,
                            const Bandwidth& b) {
  if (a.dim() != pairs.dim() || b.dim() != pairs.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "bandwidth vs sample dimension");
  }
  kernel.require_dimension(pairs.dim());
  if (kernel.is_gaussian()) return pairs.gaussian_sum(sum_cov(a, b));

  const double h1 = a.scalar();
  const double h2 = b.scalar();
  const Poly k = profile_poly(kernel.family());
  double off = 0.0;
  for (const double u : pairs.difference(0)) off += polynomial_convolution(k, h1, h2, u);
  const double diag = polynomial_convolution(k, h1, h2, 0.0);
  return static_cast<double>(pairs.sample_size()) * diag + 2.0 * off;
}

double pairwise_comparison_norm(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw,
                                const Bandwidth& bw_min) {
  const double n = static_cast<double>(pairs.sample_size());
  const double total = convolution_pair_sum(pairs, kernel, bw, bw) -
                       2.0 * convolution_pair_sum(pairs, kernel, bw, bw_min) +
                       convolution_pair_sum(pairs, kernel, bw_min, bw_min);
  return std::max(0.0, total / (n * n));
}

double pairwise_comparison_norm(const Sample& sample, const Kernel& kernel, const Bandwidth& bw,
                                const Bandwidth& bw_min) {
  if (sample.dim() != bw.dim()) throw Error(ErrorCode::kDimensionMismatch, "sample vs bandwidth dimension");
  return pairwise_comparison_norm(PairDifferences(sample), kernel, bw, bw_min);
}

}  // namespace pcokde
