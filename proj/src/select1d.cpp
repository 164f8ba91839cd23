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

#include "pcokde/select1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pcokde/error.hpp"

namespace pcokde {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
// 2 L^{(4)}(0) for the Gaussian pilot, rounded as in the usual implementation.
constexpr double kTwoL4At0 = 2.394;

void require_univariate(const Sample& sample, std::size_t min_n) {
  if (sample.dim() != 1) throw Error(ErrorCode::kDimensionMismatch, "univariate selector on d=" + std::to_string(sample.dim()));
  if (sample.size() < min_n) {
    throw Error(ErrorCode::kInsufficientData, "need at least " + std::to_string(min_n) + " observations");
  }
}

std::vector<double> sorted_values(const Sample& sample) {
  std::vector<double> v(sample.data());
  std::sort(v.begin(), v.end());
  return v;
}

double iqr(const std::vector<double>& sorted) { return quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25); }

// Falls back to whichever spread is non-zero.
double robust_spread(double sd, double iqr_scaled) {
  if (sd > 0.0 && iqr_scaled > 0.0) return std::min(sd, iqr_scaled);
  if (sd > 0.0) return sd;
  if (iqr_scaled > 0.0) return iqr_scaled;
  throw Error(ErrorCode::kDegenerateSample, "zero standard deviation and zero IQR");
}

// sum over i < j of phi(u/s) * poly(u/s).
template <typename Poly>
double hermite_pair_sum(const PairDifferences& pairs, double s, Poly poly) {
  double total = 0.0;
  for (const double u : pairs.difference(0)) {
    const double z = u / s;
    const double z2 = z * z;
    total += std::exp(-0.5 * z2) * poly(z2);
  }
  return kInvSqrt2Pi * total;
}

double phi4_poly(double z2) { return z2 * z2 - 6.0 * z2 + 3.0; }
double phi6_poly(double z2) { return z2 * z2 * z2 - 15.0 * z2 * z2 + 45.0 * z2 - 15.0; }

double rot_bandwidth(const Sample& sample, double constant) {
  const auto sorted = sorted_values(sample);
  const double spread = robust_spread(sample_sd(sorted), iqr(sorted) / 1.34);
  return constant * spread * std::pow(static_cast<double>(sample.size()), -0.2);
}

}  // namespace

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::kInsufficientData, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "quantile level outside [0, 1]");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorCode::kInsufficientData, "standard deviation needs n >= 2");
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

SelectionResult pco_select(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid, double lambda) {
  if (!std::isfinite(lambda)) throw Error(ErrorCode::kInvalidArgument, "lambda must be finite");
  if (grid.members.empty()) throw Error(ErrorCode::kEmptyGrid, "empty bandwidth grid");
  if (grid.dim != sample.dim()) throw Error(ErrorCode::kDimensionMismatch, "grid vs sample dimension");
  kernel.require_dimension(sample.dim());
  const PairDifferences pairs(sample);
  const double n = static_cast<double>(sample.size());
  const Bandwidth& h_min = grid.h_min();
  const double fixed = convolution_pair_sum(pairs, kernel, h_min, h_min);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Bandwidth& h = grid.members[k];
    const double comparison =
        (convolution_pair_sum(pairs, kernel, h, h) - 2.0 * convolution_pair_sum(pairs, kernel, h, h_min) + fixed) /
        (n * n);
    values[k] = comparison + pco_penalty(kernel, h, h_min, lambda, sample.size());
  }
  return grid_selection("pco", grid, std::move(values));
}

SelectionResult pco_select_1d(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid, double lambda) {
  require_univariate(sample, 1);
  return pco_select(sample, kernel, grid, lambda);
}

SelectionResult rot_select(const Sample& sample, RotVariant variant) {
  require_univariate(sample, 2);
  const bool plain = variant == RotVariant::kRot;
  const double h = rot_bandwidth(sample, plain ? 1.06 : 0.9);
  return SelectionResult{Bandwidth(h), plain ? "rot" : "rot0", {}, std::nullopt, {}, 0};
}

SelectionResult ucv_select(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid) {
  if (sample.size() < 2) throw Error(ErrorCode::kInsufficientData, "UCV needs n >= 2");
  if (grid.members.empty()) throw Error(ErrorCode::kEmptyGrid, "empty bandwidth grid");
  if (grid.dim != sample.dim()) throw Error(ErrorCode::kDimensionMismatch, "grid vs sample dimension");
  const PairDifferences pairs(sample);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = ucv_criterion(pairs, kernel, grid.members[k]);
  return grid_selection("ucv", grid, std::move(values));
}

SelectionResult ucv_select_1d(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid) {
  require_univariate(sample, 2);
  return ucv_select(sample, kernel, grid);
}

double bcv_curvature(const PairDifferences& pairs, double h) {
  const double n = static_cast<double>(pairs.sample_size());
  const double s = std::numbers::sqrt2 * h;
  const double sum = hermite_pair_sum(pairs, s, phi4_poly);
  return 2.0 * sum / (n * (n - 1.0) * std::pow(s, 5));
}

double amise_bandwidth(const Kernel& kernel, double curvature, std::size_t n) {
  const double mu2 = kernel.second_moment();
  return std::pow(kernel.squared_norm(1) / (mu2 * mu2 * curvature * static_cast<double>(n)), 0.2);
}

SelectionResult bcv_select(const Sample& sample, const Kernel& kernel) {
  require_univariate(sample, 2);
  const double pilot = rot_bandwidth(sample, 1.06);
  const double curvature = bcv_curvature(PairDifferences(sample), pilot);
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    SelectionResult r = rot_select(sample, RotVariant::kRot);
    r.method = "bcv";
    r.warnings.push_back("NonPositiveCurvatureEstimate: fell back to rot");
    return r;
  }
  return SelectionResult{Bandwidth(amise_bandwidth(kernel, curvature, sample.size())), "bcv", {}, std::nullopt, {}, 0};
}

double sj_s_functional(const PairDifferences& pairs, double alpha) {
  const double n = static_cast<double>(pairs.sample_size());
  const double sum = 2.0 * hermite_pair_sum(pairs, alpha, phi4_poly) + n * 3.0 * kInvSqrt2Pi;
  return sum / (n * (n - 1.0) * std::pow(alpha, 5));
}

double sj_t_functional(const PairDifferences& pairs, double b) {
  const double n = static_cast<double>(pairs.sample_size());
  const double sum = 2.0 * hermite_pair_sum(pairs, b, phi6_poly) - n * 15.0 * kInvSqrt2Pi;
  return -sum / (n * (n - 1.0) * std::pow(b, 7));
}

double sj_scale(const Sample& sample) {
  const auto sorted = sorted_values(sample);
  return robust_spread(sample_sd(sorted), iqr(sorted) / 1.349);
}

double sj_dpi_pilot(const Sample& sample) {
  require_univariate(sample, 4);
  const double n = static_cast<double>(sample.size());
  const double b = 1.23 * sj_scale(sample) * std::pow(n, -1.0 / 9.0);
  const double t = sj_t_functional(PairDifferences(sample), b);
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::kDegenerateSample, "non-positive T estimate");
  return std::pow(kTwoL4At0 / (n * t), 1.0 / 7.0);
}

SelectionResult sj_select(const Sample& sample, const Kernel& kernel, SjMode mode) {
  require_univariate(sample, 4);
  const std::size_t n = sample.size();
  const double nd = static_cast<double>(n);
  const PairDifferences pairs(sample);
  const double scale = sj_scale(sample);
  const double mu2 = kernel.second_moment();
  const double c1 = kernel.squared_norm(1) / (mu2 * mu2 * nd);
  const std::string name = mode == SjMode::kSte ? "sjste" : "sjdpi";

  auto fallback_rot = [&](const std::string& why) {
    SelectionResult r = rot_select(sample, RotVariant::kRot);
    r.method = name;
    r.warnings.push_back(why + ": fell back to rot");
    return r;
  };

  const double b = 1.23 * scale * std::pow(nd, -1.0 / 9.0);
  const double t = sj_t_functional(pairs, b);
  if (!(t > 0.0) || !std::isfinite(t)) return fallback_rot("NonPositiveS");

  auto dpi = [&]() -> SelectionResult {
    const double alpha = std::pow(kTwoL4At0 / (nd * t), 1.0 / 7.0);
    const double s = sj_s_functional(pairs, alpha);
    if (!(s > 0.0) || !std::isfinite(s)) return fallback_rot("NonPositiveS");
    return SelectionResult{Bandwidth(std::pow(c1 / s, 0.2)), name, {}, std::nullopt, {}, 0};
  };
  if (mode == SjMode::kDpi) return dpi();

  const double a = 1.24 * scale * std::pow(nd, -1.0 / 7.0);
  const double s_a = sj_s_functional(pairs, a);
  if (!(s_a > 0.0) || !std::isfinite(s_a)) return fallback_rot("NonPositiveS");
  // Pilot constant (2 L4(0) mu_2(K)^2 / (mu_2(L) ||K||^2))^{1/7} (S(a)/T(b))^{1/7}.
  const double alpha2 =
      std::pow(kTwoL4At0 * mu2 * mu2 / kernel.squared_norm(1), 1.0 / 7.0) * std::pow(s_a / t, 1.0 / 7.0);
  auto residual = [&](double h) {
    const double s = sj_s_functional(pairs, alpha2 * std::pow(h, 5.0 / 7.0));
    if (!(s > 0.0) || !std::isfinite(s)) return std::numeric_limits<double>::quiet_NaN();
    return std::pow(c1 / s, 0.2) - h;
  };

  const double h_max = 1.144 * scale * std::pow(nd, -0.2);
  const double lo = 1e-3 * h_max;
  const double hi = 10.0 * h_max;
  constexpr int kScan = 50;
  double prev_h = lo;
  double prev_f = residual(lo);
  int evaluations = 1;
  for (int k = 1; k < kScan; ++k) {
    const double h = lo * std::pow(hi / lo, static_cast<double>(k) / (kScan - 1));
    const double f = residual(h);
    ++evaluations;
    if (std::isfinite(prev_f) && std::isfinite(f) && ((prev_f > 0.0) != (f > 0.0) || f == 0.0)) {
      double left = prev_h;
      double right = h;
      double f_left = prev_f;
      while (right - left > 1e-12 * right) {
        const double mid = 0.5 * (left + right);
        const double f_mid = residual(mid);
        ++evaluations;
        if (!std::isfinite(f_mid)) break;
        if ((f_mid > 0.0) == (f_left > 0.0)) {
          left = mid;
          f_left = f_mid;
        } else {
          right = mid;
        }
      }
      SelectionResult r{Bandwidth(0.5 * (left + right)), name, {}, std::nullopt, {}, evaluations};
      return r;
    }
    prev_h = h;
    prev_f = f;
  }
  SelectionResult r = dpi();
  r.method = name;
  r.warnings.push_back("NoRootInBracket: fell back to dpi");
  return r;
}

}  // namespace pcokde
