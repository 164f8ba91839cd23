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

#include <cmath>
#include <string>
#include <vector>

#include "pcokde/density_zoo.hpp"
#include "pcokde/error.hpp"

namespace pcokde {
namespace {

using Comps = std::vector<MixtureComponent>;
using Vec = std::vector<double>;

MixtureComponent n1(double w, double mean, double sd) {
  return MixtureComponent::gaussian(w, {mean}, SymMatrix::scalar(1, sd * sd));
}

// Diagonal `diag`, every off-diagonal entry `off`.
SymMatrix equicorr(std::size_t d, double diag, double off) {
  SymMatrix s(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b <= a; ++b) s.set(a, b, a == b ? diag : off);
  return s;
}

// First diagonal entry `first`, the rest `rest`, off-diagonal `off`.
SymMatrix lead_pattern(std::size_t d, double first, double rest, double off) {
  SymMatrix s = equicorr(d, rest, off);
  s.set(0, 0, first);
  return s;
}

Vec filled(std::size_t d, double v) { return Vec(d, v); }

// (x0, rest, rest, ...)
Vec lead(std::size_t d, double x0, double rest) {
  Vec v(d, rest);
  v[0] = x0;
  return v;
}

Vec alternating(std::size_t d, double first) {
  Vec v(d);
  for (std::size_t a = 0; a < d; ++a) v[a] = (a % 2 == 0) ? first : -first;
  return v;
}

double sign_pow(long e) { return (e % 2 == 0) ? 1.0 : -1.0; }

std::vector<BenchmarkDensity> zoo_1d() {
  std::vector<BenchmarkDensity> z;
  z.emplace_back("Gauss", "G", 1, Comps{n1(1.0, 0.0, 1.0)});
  z.emplace_back("Uniform", "U", 1, Comps{MixtureComponent::box(1.0, {0.0}, {1.0})});
  z.emplace_back("Exponential", "E", 1, Comps{MixtureComponent::exponential(1.0, 1.0)});
  z.emplace_back("Mix gauss", "MG", 1, Comps{n1(0.5, 0.0, 1.0), n1(0.5, 3.0, 1.0 / 3.0)});
  z.emplace_back("Skewed", "Sk", 1,
                 Comps{n1(0.2, 0.0, 1.0), n1(0.2, 0.5, 2.0 / 3.0), n1(0.6, 13.0 / 12.0, 5.0 / 9.0)});
  {
    Comps c;
    for (int l = 0; l <= 7; ++l) {
      const double r = std::pow(2.0 / 3.0, l);
      c.push_back(n1(1.0 / 8.0, 3.0 * (r - 1.0), r));
    }
    z.emplace_back("Strong skewed", "Sk+", 1, std::move(c));
  }
  z.emplace_back("Kurtotic", "K", 1, Comps{n1(2.0 / 3.0, 0.0, 1.0), n1(1.0 / 3.0, 0.0, 0.1)});
  z.emplace_back("Outlier", "O", 1, Comps{n1(0.1, 0.0, 1.0), n1(0.9, 0.0, 0.1)});
  z.emplace_back("Bimodal", "Bi", 1, Comps{n1(0.5, -1.0, 2.0 / 3.0), n1(0.5, 1.0, 2.0 / 3.0)});
  z.emplace_back("Separated bimodal", "SB", 1, Comps{n1(0.5, -1.5, 0.5), n1(0.5, 1.5, 0.5)});
  z.emplace_back("Skewed bimodal", "SkB", 1, Comps{n1(0.75, 0.0, 1.0), n1(0.25, 1.5, 1.0 / 3.0)});
  z.emplace_back("Trimodal", "T", 1,
                 Comps{n1(0.45, -1.2, 0.6), n1(0.45, 1.2, 0.6), n1(0.1, 0.0, 0.25)});
  {
    Comps c{n1(0.5, 0.0, 1.0)};
    for (int l = 0; l <= 4; ++l) c.push_back(n1(0.1, l / 2.0 - 1.0, 0.1));
    z.emplace_back("Bart", "B", 1, std::move(c));
  }
  {
    Comps c{n1(0.49, -1.0, 2.0 / 3.0), n1(0.49, 1.0, 2.0 / 3.0)};
    for (int l = 0; l <= 6; ++l) c.push_back(n1(1.0 / 350.0, (l - 3) / 2.0, 0.01));
    z.emplace_back("Double bart", "DB", 1, std::move(c));
  }
  {
    Comps c{n1(0.5, 0.0, 1.0)};
    for (int l = -2; l <= 2; ++l) c.push_back(n1(std::pow(2.0, 1 - l) / 31.0, l + 0.5, std::pow(2.0, -l) / 10.0));
    z.emplace_back("Asymetric bart", "AB", 1, std::move(c));
  }
  {
    Comps c;
    for (int l = 0; l <= 1; ++l) c.push_back(n1(0.46, 2.0 * l - 1.0, 2.0 / 3.0));
    for (int l = 1; l <= 3; ++l) c.push_back(n1(1.0 / 300.0, -l / 2.0, 0.01));
    for (int l = 1; l <= 3; ++l) c.push_back(n1(7.0 / 300.0, l / 2.0, 0.07));
    z.emplace_back("Asymetric double bart", "ADB", 1, std::move(c));
  }
  {
    Comps c;
    for (int l = 0; l <= 5; ++l) {
      const double half = std::pow(0.5, l);
      c.push_back(n1(std::pow(2.0, 5 - l) / 63.0, (65.0 - 96.0 * half) / 21.0, 32.0 / 63.0 * half));
    }
    z.emplace_back("Smooth comb", "SC", 1, std::move(c));
  }
  {
    Comps c;
    for (int l = 0; l <= 2; ++l) c.push_back(n1(2.0 / 7.0, (12.0 * l - 15.0) / 7.0, 2.0 / 7.0));
    for (int l = 8; l <= 10; ++l) c.push_back(n1(1.0 / 21.0, 2.0 * l / 7.0, 1.0 / 21.0));
    z.emplace_back("Discrete comb", "DC", 1, std::move(c));
  }
  {
    const double w[] = {1.0 / 25, 29.0 / 200, 17.0 / 200, 1.0 / 20, 7.0 / 50, 1.0 / 5, 7.0 / 50, 1.0 / 5};
    const double cut[] = {0.0, 3.0 / 20, 1.0 / 5, 3.0 / 8, 4.0 / 8, 3.0 / 5, 4.0 / 5, 7.0 / 8, 1.0};
    Comps c;
    for (int k = 0; k < 8; ++k) c.push_back(MixtureComponent::box(w[k], {cut[k]}, {cut[k + 1]}));
    z.emplace_back("Mix Uniform", "MU", 1, std::move(c));
  }
  return z;
}

std::vector<BenchmarkDensity> zoo_md(std::size_t d) {
  using G = MixtureComponent;
  const SymMatrix eye = SymMatrix::identity(d);
  std::vector<BenchmarkDensity> z;

  {
    Vec diag(d, 1.0);
    for (std::size_t a = 0; a < d / 2; ++a) diag[a] = 0.25;
    if (d == 3) diag = {0.25, 1.0, 1.0};
    z.emplace_back("Uncorrelated Gauss", "UG", d, Comps{G::gaussian(1.0, filled(d, 0.0), SymMatrix::diagonal(diag))});
  }
  z.emplace_back("Correlated Gauss", "CG", d, Comps{G::gaussian(1.0, filled(d, 0.0), equicorr(d, 1.0, 0.9))});
  z.emplace_back("Uniform", "U", d, Comps{G::ball(1.0, filled(d, 2.0), 1.0)});
  {
    Comps c;
    for (int l = 0; l <= 7; ++l) {
      const double shrink = std::pow(0.8, l);
      const double var = shrink * shrink;
      const double off = d == 2 ? -0.9 * var : -0.9 * std::pow(0.8, 2 * (l - 1));
      c.push_back(G::gaussian(1.0 / 8.0, alternating(d, 3.0 * (1.0 - shrink)), equicorr(d, var, off)));
    }
    z.emplace_back("Strong Skewed", "Sk+", d, std::move(c));
  }
  z.emplace_back("Skewed", "Sk", d,
                 Comps{G::gaussian(0.2, filled(d, 0.0), eye), G::gaussian(0.2, filled(d, 5.0), eye * (4.0 / 9.0)),
                       G::gaussian(0.6, filled(d, 10.0), eye * (25.0 / 81.0))});
  {
    const Vec m = alternating(d, -1.5);
    Vec neg(m);
    for (double& v : neg) v = -v;
    z.emplace_back("Dumbbell", "D", d,
                   Comps{G::gaussian(4.0 / 11.0, m, eye * (9.0 / 16.0)), G::gaussian(4.0 / 11.0, neg, eye * (9.0 / 16.0)),
                         G::gaussian(3.0 / 11.0, filled(d, 0.0), equicorr(d, 0.8, -18.0 / 25.0) * (9.0 / 16.0))});
  }
  {
    const double s = d == 2 ? 9.0 / 16.0 : 1.0;
    z.emplace_back("Kurtotic", "K", d,
                   Comps{G::gaussian(2.0 / 3.0, filled(d, 0.0), lead_pattern(d, 1.0, 4.0, 1.0) * s),
                         G::gaussian(1.0 / 3.0, filled(d, 0.0), equicorr(d, 4.0 / 9.0, -1.0 / 3.0) * s)});
  }
  {
    const SymMatrix s = equicorr(d, 4.0 / 9.0, 2.0 / 9.0);
    z.emplace_back("Bimodal", "Bi", d,
                   Comps{G::gaussian(0.5, lead(d, -1.0, 0.0), s), G::gaussian(0.5, lead(d, 1.0, 0.0), s)});
  }
  z.emplace_back("Bimodal 2", "Bi2", d,
                 Comps{G::gaussian(0.5, lead(d, -1.0, 1.0), equicorr(d, 4.0 / 9.0, 1.0 / 3.0)),
                       G::gaussian(0.5, filled(d, 0.0), eye * (4.0 / 9.0))});
  z.emplace_back("Asymmetric Bimodal", "ABi", d,
                 Comps{G::gaussian(0.5, alternating(d, 1.0), equicorr(d, 4.0 / 9.0, 14.0 / 45.0)),
                       G::gaussian(0.5, alternating(d, -1.0), eye * (4.0 / 9.0))});
  {
    const double c = 2.0 / std::sqrt(3.0);
    const SymMatrix s1 = lead_pattern(d, 9.0, 49.0 / 4.0, 63.0 / 10.0) * (1.0 / 25.0);
    const SymMatrix s2 = lead_pattern(d, 9.0, 49.0 / 4.0, 0.0) * (1.0 / 25.0);
    z.emplace_back("Trimodal", "T", d,
                   Comps{G::gaussian(3.0 / 7.0, lead(d, -1.0, 0.0), s1), G::gaussian(3.0 / 7.0, lead(d, 1.0, c), s2),
                         G::gaussian(1.0 / 7.0, lead(d, 1.0, -c), s2)});
  }
  {
    const std::size_t corners = std::size_t{1} << d;
    const double w = 1.0 / (2.0 * static_cast<double>(corners + 1));
    Comps c{G::gaussian(0.5, filled(d, 0.0), eye), G::gaussian(w, filled(d, 0.0), eye * (1.0 / 16.0))};
    // Nested sums over i, j, ... in {1, 2}, first index outermost.
    for (std::size_t k = 0; k < corners; ++k) {
      Vec m(d);
      for (std::size_t a = 0; a < d; ++a) m[a] = ((k >> (d - 1 - a)) & 1u) ? 1.0 : -1.0;
      c.push_back(G::gaussian(w, m, eye * (1.0 / 16.0)));
    }
    z.emplace_back("Fountain", "F", d, std::move(c));
  }
  {
    const SymMatrix big = equicorr(d, 4.0 / 9.0, 4.0 / 15.0);
    const SymMatrix small = equicorr(d, 1.0 / 15.0, 1.0 / 25.0) * (1.0 / 15.0);
    Comps c{G::gaussian(12.0 / 25.0, lead(d, -1.5, 0.0), big), G::gaussian(12.0 / 25.0, lead(d, 1.5, 0.0), big),
            G::gaussian(8.0 / 350.0, filled(d, 0.0), equicorr(d, 1.0, 0.6) * (1.0 / 9.0))};
    for (int i = -1; i <= 1; ++i) c.push_back(G::gaussian(1.0 / 350.0, lead(d, i - 1.5, i), small));
    for (int j = -1; j <= 1; ++j) c.push_back(G::gaussian(1.0 / 350.0, lead(d, j + 1.5, j), small));
    z.emplace_back("Double Fountain", "DF", d, std::move(c));
  }
  {
    const SymMatrix corr = equicorr(d, 1.0, -0.9);
    Comps c{G::gaussian(0.5, filled(d, 0.0), eye), G::gaussian(3.0 / 40.0, filled(d, 0.0), corr * (1.0 / 16.0))};
    if (d == 2) {
      c.push_back(G::gaussian(1.0 / 5.0, {1.0, 1.0}, corr * 0.25));
      c.push_back(G::gaussian(3.0 / 40.0, {-1.0, 1.0}, eye * (1.0 / 8.0)));
      c.push_back(G::gaussian(3.0 / 40.0, {-1.0, -1.0}, corr * (1.0 / 8.0)));
      c.push_back(G::gaussian(3.0 / 40.0, {1.0, -1.0}, eye * (1.0 / 16.0)));
    } else {
      c.push_back(G::gaussian(1.0 / 5.0, filled(d, -1.0), corr * 0.25));
      const double w = d == 3 ? 9.0 / 280.0 : 9.0 / 600.0;
      const long first_count = d == 3 ? 4 : 8;
      for (long k = 1; k <= first_count; ++k) {
        Vec m{sign_pow(2 * k), sign_pow((2 * k + 1) / 2), sign_pow((2 * k + 3) / 4)};
        if (d == 4) m.push_back(sign_pow((2 * k + 7) / 8));
        c.push_back(G::gaussian(w, m, corr * std::pow(2.0, -(k + 2))));
      }
      for (long k = 1; k <= first_count - 1; ++k) {
        Vec m{sign_pow(2 * k + 1), sign_pow((2 * k + 2) / 2), sign_pow((2 * k + 4) / 4)};
        if (d == 4) m.push_back(sign_pow((2 * k + 8) / 8));
        c.push_back(G::gaussian(w, m, eye * std::pow(2.0, -(k + 2))));
      }
    }
    z.emplace_back("Asymmetric Fountain", "AF", d, std::move(c));
  }
  return z;
}

}  // namespace

std::vector<BenchmarkDensity> zoo(std::size_t dim) {
  if (dim == 1) return zoo_1d();
  if (dim >= 2 && dim <= kMaxDim) return zoo_md(dim);
  throw Error(ErrorCode::kUnsupportedDimension, "unsupported dimension " + std::to_string(dim));
}

}  // namespace pcokde
