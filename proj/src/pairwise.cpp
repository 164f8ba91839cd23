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

#include "pcokde/pairwise.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "pcokde/error.hpp"
#include "pcokde/simd/expsum.hpp"

namespace pcokde {

GaussianDensity::GaussianDensity(const SymMatrix& covariance)
    : precision_(inverse(covariance)), det_(pcokde::determinant(covariance)) {
  if (!(det_ > 0.0)) throw Error(ErrorCode::kNotPositiveDefinite, "Gaussian covariance has non-positive determinant");
  peak_ = std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(dim())) / std::sqrt(det_);
}

double GaussianDensity::operator()(std::span<const double> u) const noexcept {
  return peak_ * std::exp(-0.5 * precision_.quadratic_form(u));
}

PairDifferences::PairDifferences(const Sample& sample)
    : n_(sample.size()), dim_(sample.dim()), pairs_(n_ * (n_ > 0 ? n_ - 1 : 0) / 2) {
  diffs_.assign(dim_, std::vector<double>(pairs_));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j, ++k)
      for (std::size_t a = 0; a < dim_; ++a) diffs_[a][k] = sample(i, a) - sample(j, a);

  products_.reserve(vech_length(dim_));
  for (std::size_t b = 0; b < dim_; ++b)
    for (std::size_t a = b; a < dim_; ++a) {
      std::vector<double> p(pairs_);
      for (std::size_t q = 0; q < pairs_; ++q) p[q] = diffs_[a][q] * diffs_[b][q];
      products_.push_back(std::move(p));
    }
}

double PairDifferences::exp_quadratic_sum(const SymMatrix& precision) const {
  if (precision.dim() != dim_) throw Error(ErrorCode::kDimensionMismatch, "precision vs sample dimension");
  std::array<const double*, vech_length(kMaxDim)> features{};
  std::array<double, vech_length(kMaxDim)> coefs{};
  std::size_t m = 0;
  for (std::size_t b = 0; b < dim_; ++b)
    for (std::size_t a = b; a < dim_; ++a, ++m) {
      features[m] = products_[m].data();
      coefs[m] = a == b ? 0.5 * precision(a, b) : precision(a, b);
    }
  return simd::sum_exp_neg_linear(std::span<const double* const>(features.data(), m),
                                  std::span<const double>(coefs.data(), m), pairs_);
}

double PairDifferences::gaussian_sum(const GaussianDensity& density) const {
  const double off = exp_quadratic_sum(density.precision());
  return density.peak() * (static_cast<double>(n_) + 2.0 * off);
}

double PairDifferences::gaussian_sum(const SymMatrix& covariance) const {
  return gaussian_sum(GaussianDensity(covariance));
}

}  // namespace pcokde
