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
#include <vector>

#include "pcokde/selection.hpp"

namespace pcokde {

/// Gaussian pilot L_G.
struct PilotSpec {
  Bandwidth bandwidth;

  /// G^2 = (4 / (n (d + 2)))^{2/(d+4)} Sigma_hat.
  static PilotSpec normal_reference(const Sample& sample);
  /// Normal-reference AMSE pilot for the fourth-derivative functional:
  /// G^2 = g^2 Sigma_hat, g = (2^{4+d/2} / (n (d + 4)))^{1/(d+6)}. At d = 1 this is 1.24 sd n^{-1/7}.
  static PilotSpec psi4_normal_reference(const Sample& sample);
};

/// Fourth Kronecker derivative estimate, d^2 x d^2, row (a, b), column (c, e).
class Psi4Matrix {
 public:
  explicit Psi4Matrix(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t e) const noexcept {
    return entries_[((a * dim_ + b) * dim_ + c) * dim_ + e];
  }
  double& at(std::size_t a, std::size_t b, std::size_t c, std::size_t e) noexcept {
    return entries_[((a * dim_ + b) * dim_ + c) * dim_ + e];
  }
  /// Entry of the d^2 x d^2 matrix.
  double matrix(std::size_t row, std::size_t col) const noexcept { return entries_[row * dim_ * dim_ + col]; }
  /// D_d^T Psi D_d: the matrix of the quadratic form in vech(H^2), row-major.
  std::vector<double> vech_form() const;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

/// (1/n^2) sum_{i,j} D^{(x)4} L_G(X_i - X_j), diagonal included.
Psi4Matrix psi4_hat(const Sample& sample, const PilotSpec& pilot);

/// (1/4) mu_2^2 vech(H^2)^T Psi vech(H^2); `psi_vech` from Psi4Matrix::vech_form().
double pi_bias_term(const std::vector<double>& psi_vech, const Bandwidth& bw);
/// Estimated AMISE for the Gaussian kernel.
double pi_criterion(const std::vector<double>& psi_vech, const Bandwidth& bw, std::size_t n);

SelectionResult pco_select_md(const Sample& sample, const BandwidthGrid& grid, double lambda = 1.0);
/// (4 / (n (d + 2)))^{1/(d+4)} Sigma_hat^{1/2}.
SelectionResult rot_select_md(const Sample& sample);
SelectionResult ucv_select_md(const Sample& sample, const BandwidthGrid& grid);
SelectionResult scv_select_md(const Sample& sample, const BandwidthGrid& grid, const PilotSpec& pilot);
SelectionResult pi_select_md(const Sample& sample, const BandwidthGrid& grid, const PilotSpec& pilot);

}  // namespace pcokde
