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

// Test-only reference computations. Nothing here calls into the library:
// integrals, Gaussian densities, finite differences and the Sobol reference
// are written from their textbook definitions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

// ---------------------------------------------------------------- quadrature

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson on [a, b], split into `pieces` panels first so narrow features are seen.
/// `tol` is absolute per unit length.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                        int pieces = 64) {
  double total = 0.0;
  const double w = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * w;
    const double hi = lo + w;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    total += simpson_step(f, lo, hi, fa, fm, fb, w / 6.0 * (fa + 4.0 * fm + fb), tol * w, 22);
  }
  return total;
}

/// Integral over [a, b] split at every breakpoint inside it; f is smooth between breakpoints.
inline double integrate_pieces(const std::function<double(double)>& f, double a, double b, std::vector<double> breaks,
                               double tol = 1e-12, int pieces = 8) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi > lo) total += integrate(f, lo, hi, tol, pieces);
  }
  return total;
}

/// Composite Simpson tensor rule on [ax, bx] x [ay, by] with m (odd) nodes per axis.
inline double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                           int m = 401) {
  if (m % 2 == 0) ++m;
  const double hx = (bx - ax) / (m - 1);
  const double hy = (by - ay) / (m - 1);
  auto weight = [m](int i) { return i == 0 || i == m - 1 ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0); };
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = ax + i * hx;
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += weight(j) * f(x, ay + j * hy);
    total += weight(i) * row;
  }
  return total * hx * hy / 9.0;
}

// ---------------------------------------------------------------- small linear algebra

inline double det(Mat a) {
  const std::size_t d = a.size();
  double out = 1.0;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      out = -out;
    }
    out *= a[c][c];
    for (std::size_t r = c + 1; r < d; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return out;
}

inline Mat inv(const Mat& a) {
  const std::size_t d = a.size();
  Mat m(d, Vec(2 * d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = a[i][j];
    m[i][d + i] = 1.0;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    std::swap(m[p], m[c]);
    const double piv = m[c][c];
    for (auto& v : m[c]) v /= piv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = m[r][c];
      for (std::size_t k = 0; k < 2 * d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  Mat out(d, Vec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i][j] = m[i][d + j];
  return out;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.size(), Vec(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat add(const Mat& a, const Mat& b, double sb = 1.0) {
  Mat c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += sb * b[i][j];
  return c;
}

inline Mat scale(const Mat& a, double s) {
  Mat c = a;
  for (auto& r : c)
    for (auto& v : r) v *= s;
  return c;
}

inline Mat identity(std::size_t d) {
  Mat m(d, Vec(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

// ---------------------------------------------------------------- densities and kernels

/// N(0, cov) density at u.
inline double gauss(const Vec& u, const Mat& cov) {
  const std::size_t d = u.size();
  const Mat p = inv(cov);
  double q = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q += u[i] * p[i][j] * u[j];
  return std::exp(-0.5 * q) / std::sqrt(std::pow(2.0 * std::numbers::pi, static_cast<double>(d)) * det(cov));
}

inline double gauss1(double u, double var) { return std::exp(-0.5 * u * u / var) / std::sqrt(2.0 * std::numbers::pi * var); }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

enum class Profile { kGaussian, kEpanechnikov, kBiweight };

inline double profile(Profile k, double u) {
  switch (k) {
    case Profile::kGaussian:
      return gauss1(u, 1.0);
    case Profile::kEpanechnikov:
      return std::abs(u) < 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case Profile::kBiweight:
      return std::abs(u) < 1.0 ? 0.9375 * (1.0 - u * u) * (1.0 - u * u) : 0.0;
  }
  return 0.0;
}

inline double kernel_h(Profile k, double h, double u) { return profile(k, u / h) / h; }

inline double kde1(const Vec& x, Profile k, double h, double t) {
  double s = 0.0;
  for (double xi : x) s += kernel_h(k, h, t - xi);
  return s / static_cast<double>(x.size());
}

/// N(0, cov) with the inverse and normaliser cached.
struct Gauss {
  Mat precision;
  double norm;
  explicit Gauss(const Mat& cov)
      : precision(inv(cov)),
        norm(1.0 / std::sqrt(std::pow(2.0 * std::numbers::pi, static_cast<double>(cov.size())) * det(cov))) {}
  double operator()(const double* u) const {
    const std::size_t d = precision.size();
    double q = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) q += u[i] * precision[i][j] * u[j];
    return norm * std::exp(-0.5 * q);
  }
};

/// Gaussian KDE with bandwidth covariance H^2 at t; rows of `x` are observations.
inline double kde_gauss(const Mat& x, const Mat& h2, const Vec& t) {
  const Gauss g(h2);
  double s = 0.0;
  double u[8];
  for (const auto& xi : x) {
    for (std::size_t a = 0; a < t.size(); ++a) u[a] = t[a] - xi[a];
    s += g(u);
  }
  return s / static_cast<double>(x.size());
}

/// Same with a prebuilt kernel.
inline double kde_gauss(const Mat& x, const Gauss& g, const Vec& t) {
  double s = 0.0;
  double u[8];
  for (const auto& xi : x) {
    for (std::size_t a = 0; a < t.size(); ++a) u[a] = t[a] - xi[a];
    s += g(u);
  }
  return s / static_cast<double>(x.size());
}

/// Integration window for 1D kernels centred on data.
inline std::pair<double, double> window(const Vec& x, double pad) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return {*lo - pad, *hi + pad};
}

// ---------------------------------------------------------------- finite differences

/// Central difference of f along axes a, b, c, e (each in [0, d)) at x; step s.
inline double fd4(const std::function<double(const Vec&)>& f, Vec x, std::array<std::size_t, 4> axes, double s) {
  double total = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    Vec y = x;
    double sign = 1.0;
    for (int k = 0; k < 4; ++k) {
      const bool plus = (mask >> k) & 1;
      y[axes[k]] += plus ? s : -s;
      if (!plus) sign = -sign;
    }
    total += sign * f(y);
  }
  return total / (16.0 * s * s * s * s);
}

// ---------------------------------------------------------------- Sobol reference

/// Gray-code Sobol point `index` (1-based, so the zero point is never produced) in dimension `dim` <= 4.
/// Direction numbers from primitive polynomials x, x+1, x^2+x+1, x^3+x+1 with initial m's 1; 1; 1,3; 1,3,1.
inline Vec sobol_point(std::size_t dim, std::uint64_t index) {
  constexpr int kBits = 32;
  const std::uint64_t gray = index ^ (index >> 1);
  Vec out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::array<std::uint64_t, kBits> v{};
    if (j == 0) {
      for (int k = 0; k < kBits; ++k) v[k] = 1ULL << (kBits - 1 - k);
    } else {
      struct Poly {
        int s;
        unsigned a;
        std::vector<std::uint64_t> m;
      };
      static const Poly polys[] = {{1, 0, {1}}, {2, 1, {1, 3}}, {3, 1, {1, 3, 1}}};
      const Poly& p = polys[j - 1];
      std::array<std::uint64_t, kBits> m{};
      for (int k = 0; k < p.s; ++k) m[k] = p.m[k];
      for (int k = p.s; k < kBits; ++k) {
        std::uint64_t val = m[k - p.s] ^ (m[k - p.s] << p.s);
        for (int r = 1; r < p.s; ++r)
          if ((p.a >> (p.s - 1 - r)) & 1U) val ^= m[k - r] << r;
        m[k] = val;
      }
      for (int k = 0; k < kBits; ++k) v[k] = m[k] << (kBits - 1 - k);
    }
    std::uint64_t acc = 0;
    for (int k = 0; k < kBits; ++k)
      if ((gray >> k) & 1ULL) acc ^= v[k];
    out[j] = static_cast<double>(acc) / 4294967296.0;
  }
  return out;
}

/// Lower bound of the star discrepancy: max over anchored boxes with corners at point coordinates and 1.
inline double star_discrepancy(const std::vector<Vec>& pts) {
  const std::size_t n = pts.size();
  const std::size_t d = pts[0].size();
  std::vector<Vec> coords(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (const auto& p : pts) coords[a].push_back(p[a]);
    coords[a].push_back(1.0);
  }
  std::mt19937_64 rng(7);
  double worst = 0.0;
  const std::size_t probes = 4000;
  for (std::size_t t = 0; t < probes; ++t) {
    Vec corner(d);
    for (std::size_t a = 0; a < d; ++a) corner[a] = coords[a][rng() % coords[a].size()];
    double volume = 1.0;
    for (double c : corner) volume *= c;
    std::size_t open = 0;
    std::size_t closed = 0;
    for (const auto& p : pts) {
      bool in_open = true;
      bool in_closed = true;
      for (std::size_t a = 0; a < d; ++a) {
        in_open = in_open && p[a] < corner[a];
        in_closed = in_closed && p[a] <= corner[a];
      }
      open += in_open;
      closed += in_closed;
    }
    worst = std::max({worst, volume - static_cast<double>(open) / n, static_cast<double>(closed) / n - volume});
  }
  return worst;
}

// ---------------------------------------------------------------- statistics

/// Kolmogorov-Smirnov statistic of `x` against `cdf`.
inline double ks_statistic(Vec x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    worst = std::max({worst, (i + 1) / n - f, f - i / n});
  }
  return worst;
}

}  // namespace oracle
