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

#include "pcokde/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "pcokde/error.hpp"

namespace pcokde {
namespace {

void check_dim(std::size_t dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::kUnsupportedDimension, "matrix dimension must be in [1,4], got " + std::to_string(dim));
  }
}

using Work = std::array<std::array<double, kMaxDim>, kMaxDim>;

}  // namespace

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::transposed() const {
  SquareMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix product");
  SquareMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) s += (*this)(i, k) * rhs(k, j);
      out(i, j) = s;
    }
  return out;
}

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

SymMatrix SymMatrix::identity(std::size_t dim) { return scalar(dim, 1.0); }

SymMatrix SymMatrix::scalar(std::size_t dim, double value) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, value);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> entries) {
  SymMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

SymMatrix SymMatrix::from_vech(std::span<const double> v) {
  std::size_t dim = 1;
  while (vech_length(dim) < v.size()) ++dim;
  if (vech_length(dim) != v.size()) {
    throw Error(ErrorCode::kInvalidArgument, "vech length " + std::to_string(v.size()) + " is not d(d+1)/2");
  }
  SymMatrix m(dim);
  std::size_t k = 0;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = j; i < dim; ++i) m.set(i, j, v[k++]);
  return m;
}

SymMatrix SymMatrix::from_rows(std::size_t dim, std::span<const double> rows) {
  if (rows.size() != dim * dim) throw Error(ErrorCode::kDimensionMismatch, "from_rows expects d*d entries");
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      if (rows[i * dim + j] != rows[j * dim + i]) {
        throw Error(ErrorCode::kInvalidArgument, "matrix is not symmetric");
      }
      m.set(i, j, rows[i * dim + j]);
    }
  return m;
}

SymMatrix SymMatrix::operator+(const SymMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix sum");
  SymMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, (*this)(i, j) + rhs(i, j));
  return out;
}

SymMatrix SymMatrix::operator-(const SymMatrix& rhs) const { return *this + rhs * -1.0; }

SymMatrix SymMatrix::operator*(double s) const {
  SymMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, (*this)(i, j) * s);
  return out;
}

bool SymMatrix::operator==(const SymMatrix& rhs) const {
  if (dim_ != rhs.dim_) return false;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if ((*this)(i, j) != rhs(i, j)) return false;
  return true;
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

double SymMatrix::quadratic_form(std::span<const double> u) const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    s += (*this)(i, i) * u[i] * u[i];
    for (std::size_t j = 0; j < i; ++j) s += 2.0 * (*this)(i, j) * u[i] * u[j];
  }
  return s;
}

bool SymMatrix::is_diagonal() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != 0.0) return false;
  return true;
}

SymMatrix EigenDecomposition::reconstruct() const {
  return rotate_diagonal(rotation, std::span<const double>(eigenvalues.data(), dim()));
}

EigenDecomposition sym_eig(const SymMatrix& input) {
  const std::size_t d = input.dim();
  Work a{};
  Work v{};
  for (std::size_t i = 0; i < d; ++i) {
    v[i][i] = 1.0;
    for (std::size_t j = 0; j < d; ++j) a[i][j] = input(i, j);
  }
  const double scale = std::max(input.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += a[p][q] * a[p][q];
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = a[q][p] = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r][p];
          const double arq = a[r][q];
          a[r][p] = a[p][r] = c * arp - s * arq;
          a[r][q] = a[q][r] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < d; ++r) {
          const double vrp = v[r][p];
          const double vrq = v[r][q];
          v[r][p] = c * vrp - s * vrq;
          v[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }

  std::array<std::size_t, kMaxDim> order{};
  std::iota(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(d), std::size_t{0});
  std::stable_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(d),
                   [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });

  EigenDecomposition out{SquareMatrix(d), {}};
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t col = order[k];
    out.eigenvalues[k] = a[col][col];
    double sign = 1.0;
    for (std::size_t r = 0; r < d; ++r) {
      if (std::abs(v[r][col]) > 1e-14) {
        sign = v[r][col] > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < d; ++r) out.rotation(k, r) = sign * v[r][col];
  }
  return out;
}

SymMatrix rotate_diagonal(const SquareMatrix& rotation, std::span<const double> diagonal) {
  const std::size_t d = rotation.dim();
  SymMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += rotation(k, i) * diagonal[k] * rotation(k, j);
      out.set(i, j, s);
    }
  return out;
}

SymMatrix spd_sqrt(const SymMatrix& a) {
  const EigenDecomposition eig = sym_eig(a);
  std::array<double, kMaxDim> roots{};
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (!(eig.eigenvalues[k] > 0.0)) {
      throw Error(ErrorCode::kNotPositiveDefinite, "spd_sqrt: eigenvalue " + std::to_string(eig.eigenvalues[k]));
    }
    roots[k] = std::sqrt(eig.eigenvalues[k]);
  }
  return rotate_diagonal(eig.rotation, std::span<const double>(roots.data(), a.dim()));
}

SymMatrix clamp_eigenvalues(const SymMatrix& a, double floor, bool* clamped) {
  EigenDecomposition eig = sym_eig(a);
  bool changed = false;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (eig.eigenvalues[k] < floor) {
      eig.eigenvalues[k] = floor;
      changed = true;
    }
  }
  if (clamped != nullptr) *clamped = changed;
  return changed ? eig.reconstruct() : a;
}

std::vector<double> vech(const SymMatrix& a) {
  std::vector<double> out;
  out.reserve(vech_length(a.dim()));
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t i = j; i < a.dim(); ++i) out.push_back(a(i, j));
  return out;
}

double determinant(const SymMatrix& input) {
  const std::size_t d = input.dim();
  if (d == 1) return input(0, 0);
  if (d == 2) return input(0, 0) * input(1, 1) - input(0, 1) * input(1, 0);
  Work a{};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = input(i, j);
  double det = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < d; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

SymMatrix inverse(const SymMatrix& input) {
  const std::size_t d = input.dim();
  Work a{};
  Work inv{};
  for (std::size_t i = 0; i < d; ++i) {
    inv[i][i] = 1.0;
    for (std::size_t j = 0; j < d; ++j) a[i][j] = input(i, j);
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0) throw Error(ErrorCode::kNotPositiveDefinite, "inverse of a singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const double p = a[col][col];
    for (std::size_t c = 0; c < d; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  SymMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, 0.5 * (inv[i][j] + inv[j][i]));
  return out;
}

SymMatrix square(const SymMatrix& a) {
  const std::size_t d = a.dim();
  SymMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += a(i, k) * a(k, j);
      out.set(i, j, s);
    }
  return out;
}

SquareMatrix cholesky_lower(const SymMatrix& a) {
  const std::size_t d = a.dim();
  SquareMatrix l(d);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0)) throw Error(ErrorCode::kNotPositiveDefinite, "cholesky: non-positive pivot");
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

Sample::Sample(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "sample dimension must be positive");
  if (data_.size() % dim != 0) throw Error(ErrorCode::kDimensionMismatch, "sample data is not a multiple of dim");
  n_ = data_.size() / dim;
}

Sample Sample::univariate(std::vector<double> values) { return Sample(1, std::move(values)); }

Sample Sample::translated(std::span<const double> offset) const {
  if (offset.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "translation offset");
  std::vector<double> out = data_;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] += offset[j];
  return Sample(dim_, std::move(out));
}

Sample Sample::scaled(double factor) const {
  std::vector<double> out = data_;
  for (double& x : out) x *= factor;
  return Sample(dim_, std::move(out));
}

Sample Sample::rotated(const SquareMatrix& rotation) const {
  if (rotation.dim() != dim_) throw Error(ErrorCode::kDimensionMismatch, "rotation dimension");
  std::vector<double> out(data_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t r = 0; r < dim_; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) s += rotation(r, c) * data_[i * dim_ + c];
      out[i * dim_ + r] = s;
    }
  return Sample(dim_, std::move(out));
}

std::vector<double> empirical_mean(const Sample& sample) {
  std::vector<double> mean(sample.dim(), 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = 0; j < sample.dim(); ++j) mean[j] += sample(i, j);
  for (double& m : mean) m /= static_cast<double>(sample.size());
  return mean;
}

SymMatrix empirical_covariance(const Sample& sample) {
  if (sample.size() < 2) throw Error(ErrorCode::kInsufficientData, "covariance needs at least 2 observations");
  const std::size_t d = sample.dim();
  const std::vector<double> mean = empirical_mean(sample);
  SymMatrix cov(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < sample.size(); ++i) s += (sample(i, a) - mean[a]) * (sample(i, b) - mean[b]);
      cov.set(a, b, s / static_cast<double>(sample.size() - 1));
    }
  return cov;
}

}  // namespace pcokde
