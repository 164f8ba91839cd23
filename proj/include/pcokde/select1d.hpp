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
#include <vector>

#include "pcokde/selection.hpp"

namespace pcokde {

enum class RotVariant { kRot, kRot0 };
enum class SjMode { kSte, kDpi };

/// Linear-interpolation quantile with p (n - 1) positioning; `sorted` ascending.
double quantile_type7(std::span<const double> sorted, double p);
/// Standard deviation with the 1/(n - 1) normalisation.
double sample_sd(std::span<const double> values);

/// argmin over the grid of ||f_{h_min} - f_h||^2 + pen_lambda(h). Any dimension for the Gaussian kernel.
SelectionResult pco_select(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid, double lambda = 1.0);
SelectionResult pco_select_1d(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid,
                              double lambda = 1.0);

/// c * min(sd, IQR / 1.34) * n^{-1/5} with c = 1.06 (RoT) or 0.9 (RoT0).
SelectionResult rot_select(const Sample& sample, RotVariant variant);

SelectionResult ucv_select(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid);
SelectionResult ucv_select_1d(const Sample& sample, const Kernel& kernel, const BandwidthGrid& grid);

/// (1/(n(n-1))) sum_{i != j} phi^{(4)}_{sqrt(2) h}(X_i - X_j), the Gaussian estimate of ||f''||^2.
double bcv_curvature(const PairDifferences& pairs, double h);
/// (||K||^2 / (mu_2^2 curvature))^{1/5} n^{-1/5}.
double amise_bandwidth(const Kernel& kernel, double curvature, std::size_t n);
/// Curvature at the normal-reference pilot, then the AMISE closed form.
SelectionResult bcv_select(const Sample& sample, const Kernel& kernel);

/// S(alpha) = (n(n-1) alpha^5)^{-1} sum_{i,j} phi^{(4)}((X_i - X_j)/alpha), diagonal included.
double sj_s_functional(const PairDifferences& pairs, double alpha);
/// T(b) = -(n(n-1) b^7)^{-1} sum_{i,j} phi^{(6)}((X_i - X_j)/b), diagonal included.
double sj_t_functional(const PairDifferences& pairs, double b);
/// min(sd, IQR / 1.349).
double sj_scale(const Sample& sample);
/// Direct plug-in pilot (2 L^{(4)}(0) / (mu_2(L) n T(b)))^{1/7}.
double sj_dpi_pilot(const Sample& sample);
SelectionResult sj_select(const Sample& sample, const Kernel& kernel, SjMode mode);

}  // namespace pcokde
