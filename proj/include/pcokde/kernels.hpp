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

#include <cstddef>
#include <span>
#include <string_view>

#include "pcokde/pairwise.hpp"
#include "pcokde/smallmat.hpp"

namespace pcokde {

enum class KernelFamily { kGaussian, kEpanechnikov, kBiweight };

/// A second-order kernel with its analytic constants. Epanechnikov and
/// biweight are univariate only; the Gaussian is the standard d-variate normal.
class Kernel {
 public:
  constexpr explicit Kernel(KernelFamily family = KernelFamily::kGaussian) : family_(family) {}

  static Kernel parse(std::string_view name);

  KernelFamily family() const noexcept { return family_; }
  bool is_gaussian() const noexcept { return family_ == KernelFamily::kGaussian; }
  std::string_view name() const noexcept;

  /// ||K||^2 in dimension d.
  double squared_norm(std::size_t dim = 1) const;
  /// mu_2(K) = int u^2 K(u) du.
  double second_moment() const noexcept;
  /// ||K||_inf in dimension d.
  double sup_norm(std::size_t dim = 1) const;
  double l1_norm() const noexcept { return 1.0; }
  /// Half-width of the support; infinite for the Gaussian.
  double support_radius() const noexcept;

  /// Univariate profile K(u).
  double profile(double u) const noexcept;

  /// Throws kUnsupportedKernelDimension for a non-Gaussian kernel with d >= 2.
  void require_dimension(std::size_t dim) const;

  bool operator==(const Kernel&) const = default;

 private:
  KernelFamily family_;
};

/// Scalar h (d = 1) or SPD matrix H. The covariance H^2, det(H) and the
/// eigendecomposition are cached at construction.
class Bandwidth {
 public:
  explicit Bandwidth(double h);
  explicit Bandwidth(const SymMatrix& h);
  /// H = S^{1/2}.
  static Bandwidth from_covariance(const SymMatrix& covariance);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const SymMatrix& matrix() const noexcept { return matrix_; }
  const SymMatrix& covariance() const noexcept { return covariance_; }
  double determinant() const noexcept { return det_; }
  const EigenDecomposition& eigen() const noexcept { return eigen_; }
  /// The scalar bandwidth; d = 1 only.
  double scalar() const;

 private:
  SymMatrix matrix_;
  SymMatrix covariance_;
  double det_;
  EigenDecomposition eigen_;
};

/// K_H(u) = det(H)^{-1} K(H^{-1} u).
double kernel_eval(const Kernel& kernel, const Bandwidth& bw, std::span<const double> u);

/// (1/n) sum_i K_H(x - X_i).
double kde_eval(const Sample& sample, const Kernel& kernel, const Bandwidth& bw, std::span<const double> x);

/// Exact (K_{h1} * K_{h2})(u) for d = 1.
double kernel_self_convolution(const Kernel& kernel, double h1, double h2, double u);

/// int K_H K_{H'}: the convolution at the origin, any dimension for the Gaussian.
double kernel_cross_product(const Kernel& kernel, const Bandwidth& a, const Bandwidth& b);

/// (lambda ||K_H||^2 - ||K_{H_min} - K_H||^2) / n
double pco_penalty(const Kernel& kernel, const Bandwidth& bw, const Bandwidth& bw_min, double lambda, std::size_t n);

/// sum over all ordered pairs (i = j included) of (K_{h1} * K_{h2})(X_i - X_j).
double convolution_pair_sum(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& a,
                            const Bandwidth& b);

/// ||f_{H_min} - f_H||^2 through the closed-form double sum.
double pairwise_comparison_norm(const PairDifferences& pairs, const Kernel& kernel, const Bandwidth& bw,
                                const Bandwidth& bw_min);
double pairwise_comparison_norm(const Sample& sample, const Kernel& kernel, const Bandwidth& bw,
                                const Bandwidth& bw_min);

}  // namespace pcokde
