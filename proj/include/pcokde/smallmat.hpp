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

// Dense linear algebra for the small dimensions (d <= 4) used by bandwidth
// matrices, covariances and Hessian-shaped objects.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pcokde {

inline constexpr std::size_t kMaxDim = 4;

/// Row-major square matrix of dimension 1..4. Used for rotations.
class SquareMatrix {
 public:
  SquareMatrix() : SquareMatrix(1) {}
  explicit SquareMatrix(std::size_t dim);

  static SquareMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * kMaxDim + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * kMaxDim + j]; }

  SquareMatrix transposed() const;
  SquareMatrix operator*(const SquareMatrix& rhs) const;

 private:
  std::size_t dim_;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

/// Symmetric matrix. Every write goes to both (i,j) and (j,i), so the stored
/// entries are exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() : SymMatrix(1) {}
  explicit SymMatrix(std::size_t dim);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix scalar(std::size_t dim, double value);
  static SymMatrix diagonal(std::span<const double> entries);
  /// Inverse of vech(): lower triangle scanned column-wise.
  static SymMatrix from_vech(std::span<const double> v);
  /// Full row-major d*d entries; throws kInvalidArgument unless exactly symmetric.
  static SymMatrix from_rows(std::size_t dim, std::span<const double> rows);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * kMaxDim + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    a_[i * kMaxDim + j] = value;
    a_[j * kMaxDim + i] = value;
  }

  SymMatrix operator+(const SymMatrix& rhs) const;
  SymMatrix operator-(const SymMatrix& rhs) const;
  SymMatrix operator*(double s) const;
  friend SymMatrix operator*(double s, const SymMatrix& m) { return m * s; }
  bool operator==(const SymMatrix& rhs) const;

  double trace() const noexcept;
  double frobenius_norm() const noexcept;
  /// u^T A u
  double quadratic_form(std::span<const double> u) const noexcept;
  bool is_diagonal() const noexcept;

 private:
  std::size_t dim_;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

struct EigenDecomposition {
  /// Rows are unit eigenvectors, so A = rotation^T diag(eigenvalues) rotation.
  SquareMatrix rotation;
  /// Descending.
  std::array<double, kMaxDim> eigenvalues{};

  std::size_t dim() const noexcept { return rotation.dim(); }
  SymMatrix reconstruct() const;
};

/// Cyclic Jacobi. Eigenvalues descending; each eigenvector's first nonzero
/// component is positive.
EigenDecomposition sym_eig(const SymMatrix& a);

/// SPD square root; throws kNotPositiveDefinite if any eigenvalue <= 0.
SymMatrix spd_sqrt(const SymMatrix& a);

/// Rebuild A with eigenvalues raised to at least `floor`. Sets *clamped when
/// anything changed.
SymMatrix clamp_eigenvalues(const SymMatrix& a, double floor, bool* clamped = nullptr);

std::vector<double> vech(const SymMatrix& a);
inline constexpr std::size_t vech_length(std::size_t dim) { return dim * (dim + 1) / 2; }

/// Gaussian elimination with partial pivoting.
double determinant(const SymMatrix& a);
/// Throws kNotPositiveDefinite on a singular matrix.
SymMatrix inverse(const SymMatrix& a);
SymMatrix square(const SymMatrix& a);
/// R^T D R
SymMatrix rotate_diagonal(const SquareMatrix& rotation, std::span<const double> diagonal);
/// Lower Cholesky factor, row-major. Throws kNotPositiveDefinite.
SquareMatrix cholesky_lower(const SymMatrix& a);

/// n x d observations, row-major.
class Sample {
 public:
  Sample() = default;
  Sample(std::size_t dim, std::vector<double> data);
  /// d = 1 convenience.
  static Sample univariate(std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * dim_, dim_}; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
  const std::vector<double>& data() const noexcept { return data_; }

  /// Returns a copy with every observation shifted by `offset`.
  Sample translated(std::span<const double> offset) const;
  Sample scaled(double factor) const;
  /// x -> R x for each observation.
  Sample rotated(const SquareMatrix& rotation) const;

 private:
  std::size_t dim_ = 1;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Unbiased (1/(n-1)) covariance. Throws kInsufficientData for n < 2.
SymMatrix empirical_covariance(const Sample& sample);
std::vector<double> empirical_mean(const Sample& sample);

}  // namespace pcokde
