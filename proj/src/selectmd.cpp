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

#include "pcokde/selectmd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pcokde/error.hpp"
#include "pcokde/select1d.hpp"

namespace pcokde {
namespace {

// Eigenvalues below this fraction of the largest are clamped in the normal-reference formulas.
constexpr double kDegenerateRatio = 1e-12;

SymMatrix guarded_covariance(const Sample& sample, bool* clamped) {
  const SymMatrix cov = empirical_covariance(sample);
  const EigenDecomposition eig = sym_eig(cov);
  const double top = eig.eigenvalues[0];
  if (!(top > 0.0)) throw Error(ErrorCode::kDegenerateSample, "zero empirical covariance");
  return clamp_eigenvalues(cov, kDegenerateRatio * top, clamped);
}

double normal_reference_factor(std::size_t n, std::size_t d) {
  const double dd = static_cast<double>(d);
  return std::pow(4.0 / (static_cast<double>(n) * (dd + 2.0)), 1.0 / (dd + 4.0));
}

void require_grid(const Sample& sample, const BandwidthGrid& grid) {
  if (grid.members.empty()) throw Error(ErrorCode::kEmptyGrid, "empty bandwidth grid");
  if (grid.dim != sample.dim()) throw Error(ErrorCode::kDimensionMismatch, "grid vs sample dimension");
  if (sample.size() < 2) throw Error(ErrorCode::kInsufficientData, "selector needs n >= 2");
}

// Hermite tensor term of the fourth derivative of phi_S at u, with z = S^{-1} u.
double fourth_derivative_factor(const SymMatrix& q, const std::array<double, kMaxDim>& z, std::size_t a,
                                std::size_t b, std::size_t c, std::size_t e) {
  return z[a] * z[b] * z[c] * z[e] -
         (q(a, b) * z[c] * z[e] + q(a, c) * z[b] * z[e] + q(a, e) * z[b] * z[c] + q(b, c) * z[a] * z[e] +
          q(b, e) * z[a] * z[c] + q(c, e) * z[a] * z[b]) +
         (q(a, b) * q(c, e) + q(a, c) * q(b, e) + q(a, e) * q(b, c));
}

}  // namespace

PilotSpec PilotSpec::normal_reference(const Sample& sample) {
  bool clamped = false;
  const SymMatrix cov = guarded_covariance(sample, &clamped);
  const double f = normal_reference_factor(sample.size(), sample.dim());
  return PilotSpec{Bandwidth::from_covariance(cov * (f * f))};
}

PilotSpec PilotSpec::psi4_normal_reference(const Sample& sample) {
  bool clamped = false;
  const SymMatrix cov = guarded_covariance(sample, &clamped);
  const double d = static_cast<double>(sample.dim());
  const double n = static_cast<double>(sample.size());
  const double g = std::pow(std::pow(2.0, 4.0 + 0.5 * d) / (n * (d + 4.0)), 1.0 / (d + 6.0));
  return PilotSpec{Bandwidth::from_covariance(cov * (g * g))};
}

Psi4Matrix::Psi4Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim * dim * dim, 0.0) {}

std::vector<double> Psi4Matrix::vech_form() const {
  const std::size_t d = dim_;
  const std::size_t m = vech_length(d);
  // vech position -> the vec positions (i, j) and (j, i) it duplicates into.
  std::vector<std::array<std::size_t, 2>> rows;
  std::vector<std::size_t> counts;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = j; i < d; ++i) {
      rows.push_back({i * d + j, j * d + i});
      counts.push_back(i == j ? 1 : 2);
    }
  std::vector<double> out(m * m, 0.0);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      double v = 0.0;
      for (std::size_t s = 0; s < counts[p]; ++s)
        for (std::size_t t = 0; t < counts[q]; ++t) v += matrix(rows[p][s], rows[q][t]);
      out[p * m + q] = v;
    }
  return out;
}

Psi4Matrix psi4_hat(const Sample& sample, const PilotSpec& pilot) {
  const std::size_t d = sample.dim();
  const std::size_t n = sample.size();
  if (pilot.bandwidth.dim() != d) throw Error(ErrorCode::kDimensionMismatch, "pilot vs sample dimension");
  if (n < 1) throw Error(ErrorCode::kInsufficientData, "psi4_hat needs n >= 1");
  const GaussianDensity phi(pilot.bandwidth.covariance());
  const SymMatrix& q = phi.precision();

  // Distinct sorted index tuples a <= b <= c <= e.
  std::vector<std::array<std::size_t, 4>> tuples;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b)
      for (std::size_t c = b; c < d; ++c)
        for (std::size_t e = c; e < d; ++e) tuples.push_back({a, b, c, e});
  std::vector<double> sums(tuples.size(), 0.0);

  std::array<double, kMaxDim> u{};
  std::array<double, kMaxDim> z{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t a = 0; a < d; ++a) u[a] = sample(i, a) - sample(j, a);
      for (std::size_t a = 0; a < d; ++a) {
        double v = 0.0;
        for (std::size_t b = 0; b < d; ++b) v += q(a, b) * u[b];
        z[a] = v;
      }
      const double w = phi(std::span<const double>(u.data(), d));
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        const auto& k = tuples[t];
        sums[t] += 2.0 * w * fourth_derivative_factor(q, z, k[0], k[1], k[2], k[3]);
      }
    }
  z.fill(0.0);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto& k = tuples[t];
    sums[t] += static_cast<double>(n) * phi.peak() * fourth_derivative_factor(q, z, k[0], k[1], k[2], k[3]);
  }

  Psi4Matrix psi(d);
  const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          std::array<std::size_t, 4> key{a, b, c, e};
          std::sort(key.begin(), key.end());
          for (std::size_t t = 0; t < tuples.size(); ++t) {
            if (tuples[t] == key) {
              psi.at(a, b, c, e) = sums[t] * norm;
              break;
            }
          }
        }
  return psi;
}

double pi_bias_term(const std::vector<double>& psi_vech, const Bandwidth& bw) {
  const std::vector<double> v = vech(bw.covariance());
  const std::size_t m = v.size();
  if (psi_vech.size() != m * m) throw Error(ErrorCode::kDimensionMismatch, "psi vech form size");
  double total = 0.0;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) total += v[p] * psi_vech[p * m + q] * v[q];
  const Kernel gauss;
  const double mu2 = gauss.second_moment();
  return 0.25 * mu2 * mu2 * total;
}

double pi_criterion(const std::vector<double>& psi_vech, const Bandwidth& bw, std::size_t n) {
  const Kernel gauss;
  return pi_bias_term(psi_vech, bw) + gauss.squared_norm(bw.dim()) / (static_cast<double>(n) * bw.determinant());
}

SelectionResult pco_select_md(const Sample& sample, const BandwidthGrid& grid, double lambda) {
  require_grid(sample, grid);
  return pco_select(sample, Kernel(KernelFamily::kGaussian), grid, lambda);
}

SelectionResult rot_select_md(const Sample& sample) {
  if (sample.size() < 2) throw Error(ErrorCode::kInsufficientData, "RoT needs n >= 2");
  bool clamped = false;
  const SymMatrix cov = guarded_covariance(sample, &clamped);
  const double f = normal_reference_factor(sample.size(), sample.dim());
  SelectionResult r{Bandwidth(spd_sqrt(cov) * f), "rot", {}, std::nullopt, {}, 0};
  if (clamped) r.warnings.push_back("DegenerateCovariance: eigenvalues clamped");
  return r;
}

SelectionResult ucv_select_md(const Sample& sample, const BandwidthGrid& grid) {
  require_grid(sample, grid);
  return ucv_select(sample, Kernel(KernelFamily::kGaussian), grid);
}

SelectionResult scv_select_md(const Sample& sample, const BandwidthGrid& grid, const PilotSpec& pilot) {
  require_grid(sample, grid);
  const PairDifferences pairs(sample);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = scv_criterion(pairs, grid.members[k], pilot.bandwidth);
  return grid_selection("scv", grid, std::move(values));
}

SelectionResult pi_select_md(const Sample& sample, const BandwidthGrid& grid, const PilotSpec& pilot) {
  require_grid(sample, grid);
  const std::vector<double> psi = psi4_hat(sample, pilot).vech_form();
  std::vector<double> values(grid.size());
  bool indefinite = false;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (pi_bias_term(psi, grid.members[k]) < 0.0) indefinite = true;
    values[k] = pi_criterion(psi, grid.members[k], sample.size());
  }
  SelectionResult r = grid_selection("pi", grid, std::move(values));
  if (indefinite) r.warnings.push_back("IndefiniteQuadraticForm: negative bias term on the grid");
  return r;
}

}  // namespace pcokde
