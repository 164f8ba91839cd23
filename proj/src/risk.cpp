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

#include "pcokde/risk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pcokde/error.hpp"
#include "pcokde/pairwise.hpp"
#include "pcokde/parallel.hpp"
#include "pcokde/sobol.hpp"

namespace pcokde {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr std::size_t kQmcReplicates = 8;
constexpr std::size_t kQmcPoints = std::size_t{1} << 14;
constexpr double kQmcRelativeTolerance = 0.01;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_normal_cdf(double z) {
  if (z > -30.0) return std::log(normal_cdf(z));
  const double z2 = z * z;
  return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

// int_0^inf rate e^{-rate x} phi_s(x - m) dx
double exponential_gaussian(double rate, double m, double s) {
  const double exponent = -rate * m + 0.5 * rate * rate * s * s;
  return rate * std::exp(exponent + log_normal_cdf((m - rate * s * s) / s));
}

template <typename F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-12, &error);
}

// Primitive of the univariate kernel profile on [-1, 1].
double kernel_cdf(const Kernel& kernel, double s) {
  if (s <= -1.0) return 0.0;
  if (s >= 1.0) return 1.0;
  switch (kernel.family()) {
    case KernelFamily::kEpanechnikov: return 0.5 + 0.75 * (s - s * s * s / 3.0);
    case KernelFamily::kBiweight: {
      const double s3 = s * s * s;
      return 0.5 + 15.0 / 16.0 * (s - 2.0 * s3 / 3.0 + s3 * s * s / 5.0);
    }
    case KernelFamily::kGaussian: return normal_cdf(s);
  }
  return 0.0;
}

bool is_interval(const MixtureComponent& c) {
  return c.dim() == 1 && (c.kind() == ComponentKind::kBox || c.kind() == ComponentKind::kBall);
}

std::pair<double, double> interval_of(const MixtureComponent& c) {
  if (c.kind() == ComponentKind::kBox) return {c.lower()[0], c.upper()[0]};
  return {c.location()[0] - c.radius(), c.location()[0] + c.radius()};
}

[[noreturn]] void unsupported_pair() {
  throw Error(ErrorCode::kInvalidArgument, "no closed form for this pair of mixture components");
}

// int_{ball} phi_S(x - X) dx in d = 2, by conditioning on the first coordinate.
double ball_gaussian_mass_2d(const MixtureComponent& ball, const SymMatrix& s, std::span<const double> x) {
  const double c1 = ball.location()[0];
  const double c2 = ball.location()[1];
  const double r = ball.radius();
  const double s11 = s(0, 0);
  const double slope = s(1, 0) / s11;
  const double cond_sd = std::sqrt(s(1, 1) - s(1, 0) * slope);
  const double sd1 = std::sqrt(s11);
  auto f = [&](double t) {
    const double x1 = c1 + r * std::cos(t);
    const double half = r * std::sin(t);
    const double z1 = (x1 - x[0]) / sd1;
    const double mu = x[1] + slope * (x1 - x[0]);
    const double inner = normal_cdf((c2 + half - mu) / cond_sd) - normal_cdf((c2 - half - mu) / cond_sd);
    return half * kInvSqrt2Pi / sd1 * std::exp(-0.5 * z1 * z1) * inner;
  };
  return integrate(f, 0.0, std::numbers::pi);
}

// Measure-preserving map from the unit cube to the unit ball (d = 3 or 4).
void cube_to_ball(std::size_t d, const double* u, double* out) {
  const double r = std::pow(u[0], 1.0 / static_cast<double>(d));
  const double two_pi = 2.0 * std::numbers::pi;
  if (d == 3) {
    const double t = 1.0 - 2.0 * u[1];
    const double w = std::sqrt(std::max(0.0, 1.0 - t * t));
    out[0] = r * w * std::cos(two_pi * u[2]);
    out[1] = r * w * std::sin(two_pi * u[2]);
    out[2] = r * t;
  } else {
    const double a = std::sqrt(u[1]);
    const double b = std::sqrt(1.0 - u[1]);
    out[0] = r * a * std::cos(two_pi * u[2]);
    out[1] = r * a * std::sin(two_pi * u[2]);
    out[2] = r * b * std::cos(two_pi * u[3]);
    out[3] = r * b * std::sin(two_pi * u[3]);
  }
}

// Mean of f_hat over the ball by randomised QMC; returns {estimate, standard error}.
IseResult ball_kde_mean_qmc(const MixtureComponent& ball, const Sample& sample, const Bandwidth& bw) {
  const std::size_t d = ball.dim();
  const GaussianDensity phi(bw.covariance());
  Rng shifts(0x51ab5eedULL ^ (static_cast<std::uint64_t>(sample.size()) << 8) ^ d);
  std::array<double, kQmcReplicates> estimates{};
  std::array<double, kMaxDim> x{};
  std::array<double, kMaxDim> u{};
  for (std::size_t rep = 0; rep < kQmcReplicates; ++rep) {
    std::array<std::uint32_t, kMaxDim> shift{};
    for (auto& s : shift) s = static_cast<std::uint32_t>(shifts.bits() >> 32);
    const std::vector<double> pts = sobol_shifted(d, kQmcPoints, shift);
    double acc = 0.0;
    for (std::size_t k = 0; k < kQmcPoints; ++k) {
      cube_to_ball(d, pts.data() + k * d, x.data());
      for (std::size_t a = 0; a < d; ++a) x[a] = ball.location()[a] + ball.radius() * x[a];
      double f = 0.0;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t a = 0; a < d; ++a) u[a] = x[a] - sample(i, a);
        f += phi(std::span<const double>(u.data(), d));
      }
      acc += f / static_cast<double>(sample.size());
    }
    estimates[rep] = acc / static_cast<double>(kQmcPoints);
  }
  double mean = 0.0;
  for (const double e : estimates) mean += e;
  mean /= kQmcReplicates;
  double var = 0.0;
  for (const double e : estimates) var += (e - mean) * (e - mean);
  var /= static_cast<double>(kQmcReplicates - 1);
  return {mean, std::sqrt(var / kQmcReplicates)};
}

// int K_H(x - X_i) f_c(x) dx averaged over i, for one component.
IseResult component_kde_inner(const MixtureComponent& c, const Sample& sample, const Kernel& kernel,
                              const Bandwidth& bw) {
  const std::size_t n = sample.size();
  const std::size_t d = sample.dim();
  double total = 0.0;

  if (kernel.is_gaussian()) {
    switch (c.kind()) {
      case ComponentKind::kGaussian: {
        const GaussianDensity g(c.covariance() + bw.covariance());
        std::array<double, kMaxDim> u{};
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t a = 0; a < d; ++a) u[a] = sample(i, a) - c.location()[a];
          total += g(std::span<const double>(u.data(), d));
        }
        return {total / static_cast<double>(n), 0.0};
      }
      case ComponentKind::kBox: {
        if (!bw.covariance().is_diagonal()) unsupported_pair();
        for (std::size_t i = 0; i < n; ++i) {
          double p = 1.0;
          for (std::size_t a = 0; a < d; ++a) {
            const double h = std::sqrt(bw.covariance()(a, a));
            p *= (normal_cdf((c.upper()[a] - sample(i, a)) / h) - normal_cdf((c.lower()[a] - sample(i, a)) / h)) /
                 (c.upper()[a] - c.lower()[a]);
          }
          total += p;
        }
        return {total / static_cast<double>(n), 0.0};
      }
      case ComponentKind::kBall: {
        if (d == 1) {
          const auto [lo, hi] = interval_of(c);
          const double h = bw.scalar();
          for (std::size_t i = 0; i < n; ++i) total += normal_cdf((hi - sample(i, 0)) / h) - normal_cdf((lo - sample(i, 0)) / h);
          return {total / (static_cast<double>(n) * (hi - lo)), 0.0};
        }
        if (d == 2) {
          for (std::size_t i = 0; i < n; ++i) total += ball_gaussian_mass_2d(c, bw.covariance(), sample.row(i));
          return {total * c.uniform_height() / static_cast<double>(n), 0.0};
        }
        return ball_kde_mean_qmc(c, sample, bw);
      }
      case ComponentKind::kExponential: {
        const double h = bw.scalar();
        for (std::size_t i = 0; i < n; ++i) total += exponential_gaussian(c.rate(), sample(i, 0), h);
        return {total / static_cast<double>(n), 0.0};
      }
    }
  }

  // Compactly supported univariate kernels.
  const double h = bw.scalar();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sample(i, 0);
    switch (c.kind()) {
      case ComponentKind::kGaussian: {
        const double m = c.location()[0];
        const double sd = std::sqrt(c.covariance()(0, 0));
        auto f = [&](double s) {
          const double z = (x + h * s - m) / sd;
          return kernel.profile(s) * kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
        };
        // Split at the component mean so narrow components are not missed.
        const double mid = std::clamp((m - x) / h, -1.0, 1.0);
        total += integrate(f, -1.0, mid) + integrate(f, mid, 1.0);
        break;
      }
      case ComponentKind::kBox:
      case ComponentKind::kBall: {
        const auto [lo, hi] = interval_of(c);
        total += (kernel_cdf(kernel, (hi - x) / h) - kernel_cdf(kernel, (lo - x) / h)) / (hi - lo);
        break;
      }
      case ComponentKind::kExponential: {
        const double rate = c.rate();
        auto f = [&](double s) { return kernel.profile(s) * rate * std::exp(-rate * (x + h * s)); };
        total += integrate(f, std::max(-1.0, -x / h), 1.0);
        break;
      }
    }
  }
  return {total / static_cast<double>(n), 0.0};
}

}  // namespace

double component_overlap(const MixtureComponent& a, const MixtureComponent& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "component dimensions differ");
  const std::size_t d = a.dim();
  if (a.kind() == ComponentKind::kGaussian && b.kind() == ComponentKind::kGaussian) {
    std::array<double, kMaxDim> u{};
    for (std::size_t k = 0; k < d; ++k) u[k] = a.location()[k] - b.location()[k];
    return GaussianDensity(a.covariance() + b.covariance())(std::span<const double>(u.data(), d));
  }
  if (is_interval(a) && is_interval(b)) {
    const auto [a0, a1] = interval_of(a);
    const auto [b0, b1] = interval_of(b);
    const double overlap = std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
    return overlap / ((a1 - a0) * (b1 - b0));
  }
  if (a.kind() == ComponentKind::kBox && b.kind() == ComponentKind::kBox) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double overlap = std::max(0.0, std::min(a.upper()[k], b.upper()[k]) - std::max(a.lower()[k], b.lower()[k]));
      p *= overlap / ((a.upper()[k] - a.lower()[k]) * (b.upper()[k] - b.lower()[k]));
    }
    return p;
  }
  if (a.kind() == ComponentKind::kBall && b.kind() == ComponentKind::kBall) {
    if (a.location() == b.location() && a.radius() == b.radius()) return a.uniform_height();
    unsupported_pair();
  }
  if (a.kind() == ComponentKind::kExponential && b.kind() == ComponentKind::kExponential) {
    return a.rate() * b.rate() / (a.rate() + b.rate());
  }
  // Mixed univariate kinds; order so the first is the "simpler" one.
  if (d != 1) unsupported_pair();
  const MixtureComponent& p = a.kind() <= b.kind() ? a : b;
  const MixtureComponent& q = a.kind() <= b.kind() ? b : a;
  if (p.kind() == ComponentKind::kGaussian && is_interval(q)) {
    const auto [lo, hi] = interval_of(q);
    const double m = p.location()[0];
    const double sd = std::sqrt(p.covariance()(0, 0));
    return (normal_cdf((hi - m) / sd) - normal_cdf((lo - m) / sd)) / (hi - lo);
  }
  if (p.kind() == ComponentKind::kGaussian && q.kind() == ComponentKind::kExponential) {
    return exponential_gaussian(q.rate(), p.location()[0], std::sqrt(p.covariance()(0, 0)));
  }
  if (is_interval(p) && q.kind() == ComponentKind::kExponential) {
    const auto [lo, hi] = interval_of(p);
    const double l = std::max(lo, 0.0);
    const double u = std::max(hi, 0.0);
    return (std::exp(-q.rate() * l) - std::exp(-q.rate() * u)) / (hi - lo);
  }
  unsupported_pair();
}

double density_squared_norm(const BenchmarkDensity& density) {
  const auto& comps = density.components();
  double total = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    total += comps[i].weight() * comps[i].weight() * component_overlap(comps[i], comps[i]);
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      total += 2.0 * comps[i].weight() * comps[j].weight() * component_overlap(comps[i], comps[j]);
    }
  }
  return total;
}

IseResult kde_density_inner(const BenchmarkDensity& density, const Sample& sample, const Kernel& kernel,
                            const Bandwidth& bw) {
  if (sample.dim() != density.dim() || bw.dim() != density.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "density, sample and bandwidth must share a dimension");
  }
  kernel.require_dimension(bw.dim());
  IseResult out;
  double var = 0.0;
  for (const auto& c : density.components()) {
    const IseResult part = component_kde_inner(c, sample, kernel, bw);
    out.value += c.weight() * part.value;
    var += c.weight() * c.weight() * part.standard_error * part.standard_error;
  }
  out.standard_error = std::sqrt(var);
  return out;
}

IseResult ise_detailed(const BenchmarkDensity& density, const Sample& sample, const Kernel& kernel,
                       const Bandwidth& bw) {
  const PairDifferences pairs(sample);
  const double n = static_cast<double>(sample.size());
  const double a = convolution_pair_sum(pairs, kernel, bw, bw) / (n * n);
  const IseResult b = kde_density_inner(density, sample, kernel, bw);
  const double c = density_squared_norm(density);
  IseResult out{std::max(0.0, a - 2.0 * b.value + c), 2.0 * b.standard_error};
  if (out.standard_error > kQmcRelativeTolerance * out.value) {
    throw Error(ErrorCode::kQuadratureNotConverged,
                "QMC standard error " + std::to_string(out.standard_error) + " for ISE " + std::to_string(out.value));
  }
  return out;
}

double ise(const BenchmarkDensity& density, const Sample& sample, const Kernel& kernel, const Bandwidth& bw) {
  return ise_detailed(density, sample, kernel, bw).value;
}

std::uint64_t trial_seed(std::uint64_t master_seed, const BenchmarkDensity& density, std::size_t n,
                         std::size_t trial) {
  const std::array<std::uint64_t, 4> words{master_seed, density.id(), static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(trial)};
  return hash_words(words);
}

double median_of(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

void RiskReport::recompute() {
  std::vector<double> ok;
  failures = 0;
  for (const auto& t : trials) {
    if (t.ok) {
      ok.push_back(t.ise_sqrt);
    } else {
      ++failures;
    }
  }
  double sum = 0.0;
  for (const double v : ok) sum += v;
  mean = ok.empty() ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(ok.size());
  median = median_of(ok);
  valid = !trials.empty() && static_cast<double>(failures) <= 0.1 * static_cast<double>(trials.size());
}

RiskReport monte_carlo_risk(const BenchmarkDensity& density, const MethodSpec& spec, std::size_t n,
                            std::size_t trials, std::uint64_t master_seed, std::size_t threads) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  RiskReport report;
  report.density = density.abbreviation();
  report.dim = density.dim();
  report.method = std::string(to_string(spec.method));
  report.kernel = std::string(spec.kernel.name());
  report.grid = density.dim() == 1 ? "univariate" : std::string(to_string(spec.grid));
  report.lambda = spec.lambda;
  report.n = n;
  report.trials.resize(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    TrialRecord& rec = report.trials[t];
    rec.trial = t;
    rec.seed = trial_seed(master_seed, density, n, t);
    try {
      const Sample sample = density.sample(n, rec.seed);
      const SelectionResult sel = select_bandwidth(sample, spec);
      rec.chosen_vech = vech(sel.chosen.matrix());
      rec.ise_sqrt = std::sqrt(ise(density, sample, spec.kernel, sel.chosen));
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.ise_sqrt = std::numeric_limits<double>::quiet_NaN();
      rec.status = std::string("failed: ") + e.what();
    }
  });
  report.recompute();
  return report;
}

RatioTable ratio_stats(const std::vector<RiskReport>& reports, const std::string& reference) {
  RatioTable table;
  std::map<std::string, std::size_t> density_index;
  std::map<std::string, std::size_t> method_index;
  for (const auto& r : reports) {
    const std::string key = r.density + "/" + std::to_string(r.dim);
    if (density_index.emplace(key, table.densities.size()).second) table.densities.push_back(r.density);
    if (method_index.emplace(r.method, table.methods.size()).second) table.methods.push_back(r.method);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t nd = table.densities.size();
  const std::size_t nm = table.methods.size();
  std::vector<std::vector<const RiskReport*>> cell(nd, std::vector<const RiskReport*>(nm, nullptr));
  for (const auto& r : reports) {
    cell[density_index.at(r.density + "/" + std::to_string(r.dim))][method_index.at(r.method)] = &r;
  }
  table.mean.assign(nd, std::vector<double>(nm, nan));
  table.r_med.assign(nd, std::vector<double>(nm, nan));
  table.r_meth_min.assign(nd, std::vector<double>(nm, nan));

  for (std::size_t i = 0; i < nd; ++i) {
    const RiskReport* first = nullptr;
    for (const RiskReport* r : cell[i]) {
      if (r == nullptr) continue;
      if (first == nullptr) {
        first = r;
        continue;
      }
      bool paired = r->n == first->n && r->trials.size() == first->trials.size();
      for (std::size_t t = 0; paired && t < r->trials.size(); ++t) paired = r->trials[t].seed == first->trials[t].seed;
      if (!paired) throw Error(ErrorCode::kUnpairedReports, "reports for " + r->density + " do not share seeds");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nm; ++j) {
      if (cell[i][j] == nullptr) continue;
      table.mean[i][j] = cell[i][j]->mean;
      if (std::isfinite(cell[i][j]->mean)) best = std::min(best, cell[i][j]->mean);
    }
    const auto ref = method_index.find(reference);
    const RiskReport* ref_report = ref == method_index.end() ? nullptr : cell[i][ref->second];
    for (std::size_t j = 0; j < nm; ++j) {
      const RiskReport* r = cell[i][j];
      if (r == nullptr) continue;
      if (std::isfinite(best) && best > 0.0) table.r_meth_min[i][j] = r->mean / best;
      if (ref_report != nullptr) {
        std::vector<double> ratios;
        for (std::size_t t = 0; t < r->trials.size(); ++t) {
          const auto& num = r->trials[t];
          const auto& den = ref_report->trials[t];
          if (num.ok && den.ok && den.ise_sqrt > 0.0) ratios.push_back(num.ise_sqrt / den.ise_sqrt);
        }
        table.r_med[i][j] = median_of(std::move(ratios));
      }
    }
  }
  table.r_bar.assign(nm, nan);
  for (std::size_t j = 0; j < nm; ++j) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < nd; ++i) {
      if (std::isfinite(table.r_meth_min[i][j])) {
        sum += table.r_meth_min[i][j];
        ++count;
      }
    }
    if (count > 0) table.r_bar[j] = sum / static_cast<double>(count);
  }
  return table;
}

}  // namespace pcokde
