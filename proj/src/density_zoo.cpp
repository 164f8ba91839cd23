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

#include "pcokde/density_zoo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "pcokde/error.hpp"

namespace pcokde {
namespace {

constexpr double kClampFloor = 1e-8;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ball_volume(std::size_t d, double r) {
  const double half = 0.5 * static_cast<double>(d);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) * std::pow(r, static_cast<double>(d));
}

void require_dim(std::size_t dim) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::kUnsupportedDimension, "unsupported dimension " + std::to_string(dim));
}

}  // namespace

MixtureComponent MixtureComponent::gaussian(double weight, std::vector<double> mean, const SymMatrix& covariance) {
  if (mean.size() != covariance.dim()) throw Error(ErrorCode::kDimensionMismatch, "component mean vs covariance");
  MixtureComponent c;
  c.kind_ = ComponentKind::kGaussian;
  c.weight_ = weight;
  c.dim_ = mean.size();
  c.location_ = std::move(mean);
  c.covariance_ = clamp_eigenvalues(covariance, kClampFloor, &c.projected_);
  c.density_.emplace(c.covariance_);
  c.chol_ = cholesky_lower(c.covariance_);
  return c;
}

MixtureComponent MixtureComponent::box(double weight, std::vector<double> lower, std::vector<double> upper) {
  if (lower.size() != upper.size() || lower.empty()) throw Error(ErrorCode::kDimensionMismatch, "box bounds");
  for (std::size_t a = 0; a < lower.size(); ++a) {
    if (!(upper[a] > lower[a])) throw Error(ErrorCode::kInvalidArgument, "empty box interval");
  }
  MixtureComponent c;
  c.kind_ = ComponentKind::kBox;
  c.weight_ = weight;
  c.dim_ = lower.size();
  c.lower_ = std::move(lower);
  c.upper_ = std::move(upper);
  return c;
}

MixtureComponent MixtureComponent::ball(double weight, std::vector<double> center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "ball radius must be positive");
  MixtureComponent c;
  c.kind_ = ComponentKind::kBall;
  c.weight_ = weight;
  c.dim_ = center.size();
  c.location_ = std::move(center);
  c.radius_ = radius;
  return c;
}

MixtureComponent MixtureComponent::exponential(double weight, double rate) {
  if (!(rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "exponential rate must be positive");
  MixtureComponent c;
  c.kind_ = ComponentKind::kExponential;
  c.weight_ = weight;
  c.rate_ = rate;
  return c;
}

double MixtureComponent::uniform_height() const {
  if (kind_ == ComponentKind::kBox) {
    double vol = 1.0;
    for (std::size_t a = 0; a < dim_; ++a) vol *= upper_[a] - lower_[a];
    return 1.0 / vol;
  }
  if (kind_ == ComponentKind::kBall) return 1.0 / ball_volume(dim_, radius_);
  throw Error(ErrorCode::kInvalidArgument, "uniform_height on a non-uniform component");
}

double MixtureComponent::pdf(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "pdf point dimension");
  switch (kind_) {
    case ComponentKind::kGaussian: {
      std::array<double, kMaxDim> u{};
      for (std::size_t a = 0; a < dim_; ++a) u[a] = x[a] - location_[a];
      return (*density_)(std::span<const double>(u.data(), dim_));
    }
    case ComponentKind::kBox:
      for (std::size_t a = 0; a < dim_; ++a) {
        if (x[a] < lower_[a] || x[a] > upper_[a]) return 0.0;
      }
      return uniform_height();
    case ComponentKind::kBall: {
      double r2 = 0.0;
      for (std::size_t a = 0; a < dim_; ++a) r2 += (x[a] - location_[a]) * (x[a] - location_[a]);
      return r2 <= radius_ * radius_ ? uniform_height() : 0.0;
    }
    case ComponentKind::kExponential:
      return x[0] < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x[0]);
  }
  return 0.0;
}

double MixtureComponent::cdf(double x) const {
  if (dim_ != 1) throw Error(ErrorCode::kDimensionMismatch, "cdf is univariate");
  switch (kind_) {
    case ComponentKind::kGaussian:
      return normal_cdf((x - location_[0]) / std::sqrt(covariance_(0, 0)));
    case ComponentKind::kBox:
      if (x <= lower_[0]) return 0.0;
      if (x >= upper_[0]) return 1.0;
      return (x - lower_[0]) / (upper_[0] - lower_[0]);
    case ComponentKind::kBall: {
      const double lo = location_[0] - radius_;
      if (x <= lo) return 0.0;
      return std::min(1.0, (x - lo) / (2.0 * radius_));
    }
    case ComponentKind::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
  }
  return 0.0;
}

void MixtureComponent::draw(Rng& rng, std::span<double> out) const {
  switch (kind_) {
    case ComponentKind::kGaussian: {
      std::array<double, kMaxDim> z{};
      for (std::size_t a = 0; a < dim_; ++a) z[a] = rng.normal();
      for (std::size_t a = 0; a < dim_; ++a) {
        double v = location_[a];
        for (std::size_t b = 0; b <= a; ++b) v += chol_(a, b) * z[b];
        out[a] = v;
      }
      return;
    }
    case ComponentKind::kBox:
      for (std::size_t a = 0; a < dim_; ++a) out[a] = lower_[a] + (upper_[a] - lower_[a]) * rng.uniform();
      return;
    case ComponentKind::kBall: {
      std::array<double, kMaxDim> z{};
      double norm = 0.0;
      while (!(norm > 0.0)) {
        norm = 0.0;
        for (std::size_t a = 0; a < dim_; ++a) {
          z[a] = rng.normal();
          norm += z[a] * z[a];
        }
      }
      norm = std::sqrt(norm);
      const double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim_));
      for (std::size_t a = 0; a < dim_; ++a) out[a] = location_[a] + r * z[a] / norm;
      return;
    }
    case ComponentKind::kExponential:
      out[0] = rng.exponential(rate_);
      return;
  }
}

std::vector<double> MixtureComponent::mean() const {
  switch (kind_) {
    case ComponentKind::kGaussian:
    case ComponentKind::kBall:
      return location_;
    case ComponentKind::kBox: {
      std::vector<double> m(dim_);
      for (std::size_t a = 0; a < dim_; ++a) m[a] = 0.5 * (lower_[a] + upper_[a]);
      return m;
    }
    case ComponentKind::kExponential:
      return {1.0 / rate_};
  }
  return {};
}

SymMatrix MixtureComponent::second_central_moment() const {
  switch (kind_) {
    case ComponentKind::kGaussian:
      return covariance_;
    case ComponentKind::kBox: {
      std::vector<double> v(dim_);
      for (std::size_t a = 0; a < dim_; ++a) v[a] = (upper_[a] - lower_[a]) * (upper_[a] - lower_[a]) / 12.0;
      return SymMatrix::diagonal(v);
    }
    case ComponentKind::kBall:
      return SymMatrix::scalar(dim_, radius_ * radius_ / static_cast<double>(dim_ + 2));
    case ComponentKind::kExponential:
      return SymMatrix::scalar(1, 1.0 / (rate_ * rate_));
  }
  return SymMatrix(dim_);
}

BenchmarkDensity::BenchmarkDensity(std::string name, std::string abbreviation, std::size_t dim,
                                   std::vector<MixtureComponent> components)
    : name_(std::move(name)), abbreviation_(std::move(abbreviation)), dim_(dim), components_(std::move(components)) {
  require_dim(dim_);
  if (components_.empty()) throw Error(ErrorCode::kInvalidArgument, abbreviation_ + ": no components");
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.dim() != dim_) throw Error(ErrorCode::kDimensionMismatch, abbreviation_ + ": component dimension");
    if (!(c.weight() > 0.0)) throw Error(ErrorCode::kInvalidArgument, abbreviation_ + ": non-positive weight");
    weights_.push_back(c.weight());
    total += c.weight();
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, abbreviation_ + ": weights sum to " + std::to_string(total));
  }
}

bool BenchmarkDensity::projected() const noexcept {
  for (const auto& c : components_) {
    if (c.projected()) return true;
  }
  return false;
}

bool BenchmarkDensity::all_gaussian() const noexcept {
  for (const auto& c : components_) {
    if (c.kind() != ComponentKind::kGaussian) return false;
  }
  return true;
}

std::uint64_t BenchmarkDensity::id() const noexcept { return fnv1a(abbreviation_ + "/" + std::to_string(dim_)); }

double BenchmarkDensity::pdf(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "pdf point dimension");
  double total = 0.0;
  for (const auto& c : components_) total += c.weight() * c.pdf(x);
  return total;
}

double BenchmarkDensity::cdf(double x) const {
  if (dim_ != 1) throw Error(ErrorCode::kDimensionMismatch, "cdf is univariate");
  double total = 0.0;
  for (const auto& c : components_) total += c.weight() * c.cdf(x);
  return total;
}

Sample BenchmarkDensity::sample(std::size_t n, std::uint64_t seed) const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample size must be positive");
  Rng rng(seed);
  std::vector<double> data(n * dim_);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = components_.size() == 1 ? 0 : rng.categorical(weights_);
    components_[k].draw(rng, std::span<double>(data.data() + i * dim_, dim_));
  }
  return Sample(dim_, std::move(data));
}

std::vector<double> BenchmarkDensity::mean() const {
  std::vector<double> m(dim_, 0.0);
  for (const auto& c : components_) {
    const auto cm = c.mean();
    for (std::size_t a = 0; a < dim_; ++a) m[a] += c.weight() * cm[a];
  }
  return m;
}

SymMatrix BenchmarkDensity::covariance() const {
  const auto m = mean();
  SymMatrix s(dim_);
  for (const auto& c : components_) {
    const auto cm = c.mean();
    const SymMatrix cs = c.second_central_moment();
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b <= a; ++b) {
        const double v = s(a, b) + c.weight() * (cs(a, b) + (cm[a] - m[a]) * (cm[b] - m[b]));
        s.set(a, b, v);
      }
  }
  return s;
}

std::string zoo_catalog_json(std::size_t dim) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& d : zoo(dim)) {
    nlohmann::ordered_json entry;
    entry["abbreviation"] = d.abbreviation();
    entry["name"] = d.name();
    entry["dim"] = d.dim();
    entry["projected"] = d.projected();
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& c : d.components()) {
      nlohmann::ordered_json jc;
      jc["weight"] = c.weight();
      switch (c.kind()) {
        case ComponentKind::kGaussian:
          jc["kind"] = "gaussian";
          jc["mean"] = c.location();
          jc["covariance_vech"] = vech(c.covariance());
          break;
        case ComponentKind::kBox:
          jc["kind"] = "box";
          jc["lower"] = c.lower();
          jc["upper"] = c.upper();
          break;
        case ComponentKind::kBall:
          jc["kind"] = "ball";
          jc["center"] = c.location();
          jc["radius"] = c.radius();
          break;
        case ComponentKind::kExponential:
          jc["kind"] = "exponential";
          jc["rate"] = c.rate();
          break;
      }
      comps.push_back(std::move(jc));
    }
    entry["components"] = std::move(comps);
    out.push_back(std::move(entry));
  }
  return out.dump(2);
}

BenchmarkDensity find_density(std::size_t dim, std::string_view abbreviation) {
  for (auto& d : zoo(dim)) {
    if (d.abbreviation() == abbreviation) return d;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no density '" + std::string(abbreviation) + "' in dimension " + std::to_string(dim));
}

}  // namespace pcokde
