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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "pcokde/density_zoo.hpp"
#include "pcokde/experiment.hpp"
#include "pcokde/methods.hpp"
#include "pcokde/risk.hpp"
#include "pcokde/select1d.hpp"
#include "pcokde/selectmd.hpp"
#include "support/oracles.hpp"
#include "support/random_cases.hpp"

using namespace pcokde;
namespace fs = std::filesystem;

namespace {

const Kernel kGauss(KernelFamily::kGaussian);
const Kernel kEpan(KernelFamily::kEpanechnikov);
const Kernel kBiw(KernelFamily::kBiweight);
constexpr double kPi = std::numbers::pi;

int failures = 0;
std::map<int, std::string> lines;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  lines[id] = std::string(ok ? "PASS " : "FAIL ") + std::to_string(id) + " " + what + " | " + detail;
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

oracle::Profile profile_of(const Kernel& k) {
  if (k.family() == KernelFamily::kEpanechnikov) return oracle::Profile::kEpanechnikov;
  if (k.family() == KernelFamily::kBiweight) return oracle::Profile::kBiweight;
  return oracle::Profile::kGaussian;
}

double reach(const Kernel& k) { return k.is_gaussian() ? 12.0 : 1.0; }

std::vector<double> breaks_for(const std::vector<double>& x, std::initializer_list<double> widths) {
  std::vector<double> br;
  for (double xi : x) {
    br.push_back(xi);
    for (double w : widths) br.insert(br.end(), {xi - w, xi + w});
  }
  return br;
}

double integrate_kde_sq_diff(const std::vector<double>& x, oracle::Profile p, double a, double b, double r) {
  const auto [lo, hi] = oracle::window(x, r * std::max(a, b));
  return oracle::integrate_pieces(
      [&](double t) { return std::pow(oracle::kde1(x, p, a, t) - oracle::kde1(x, p, b, t), 2); }, lo, hi,
      breaks_for(x, {a, b}), 1e-13, 2);
}

double kernel_diff_sq(oracle::Profile p, double a, double b, double r, double wa) {
  const double w = r * std::max(a, b);
  return oracle::integrate_pieces([&](double u) { return std::pow(wa * oracle::kernel_h(p, a, u) - oracle::kernel_h(p, b, u), 2); },
                                  -w, w, {-a, a, -b, b, 0.0}, 1e-13);
}

double kernel_sq(oracle::Profile p, double h, double r) {
  return oracle::integrate_pieces([&](double u) { return std::pow(oracle::kernel_h(p, h, u), 2); }, -r * h, r * h,
                                  {-h, h, 0.0}, 1e-13);
}

// ---------------------------------------------------------------- 1D oracle criteria

double pco_oracle_1d(const std::vector<double>& x, const Kernel& k, double h, double hmin, double lambda) {
  const auto p = profile_of(k);
  const double n = static_cast<double>(x.size());
  return integrate_kde_sq_diff(x, p, hmin, h, reach(k)) +
         (lambda * kernel_sq(p, h, reach(k)) - kernel_diff_sq(p, hmin, h, reach(k), 1.0)) / n;
}

double ucv_oracle_1d(const std::vector<double>& x, const Kernel& k, double h) {
  const auto p = profile_of(k);
  const double n = static_cast<double>(x.size());
  const auto [lo, hi] = oracle::window(x, reach(k) * h);
  const double sq = oracle::integrate_pieces([&](double t) { return std::pow(oracle::kde1(x, p, h, t), 2); }, lo, hi,
                                             breaks_for(x, {h}), 1e-13, 2);
  double loo = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double fi = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j) fi += oracle::kernel_h(p, h, x[i] - x[j]) / (n - 1.0);
    loo += fi;
  }
  return sq - ((n - 1.0) / n) * (2.0 / n) * loo;
}

double scv_oracle_1d(const std::vector<double>& x, double h, double g) {
  const double n = static_cast<double>(x.size());
  return 1.0 / (2.0 * std::sqrt(kPi) * n * h) +
         integrate_kde_sq_diff(x, oracle::Profile::kGaussian, std::sqrt(h * h + g * g), g, 12.0);
}

double hessian_norm_1d(const std::vector<double>& x, double s) {
  const auto [lo, hi] = oracle::window(x, 12.0 * s);
  return oracle::integrate_pieces(
      [&](double t) {
        double v = 0.0;
        for (double xi : x) {
          const double u = t - xi;
          v += oracle::gauss1(u, s * s) * (u * u / std::pow(s, 4) - 1.0 / (s * s));
        }
        v /= static_cast<double>(x.size());
        return v * v;
      },
      lo, hi, breaks_for(x, {s}), 1e-14, 2);
}

// ---------------------------------------------------------------- 2D oracle pieces

double pair_integral(double a, double b, double x, double y) {
  const double w = 12.0 * std::max(a, b);
  return oracle::integrate_pieces([&](double t) { return oracle::gauss1(t - x, a * a) * oracle::gauss1(t - y, b * b); },
                                  std::min(x, y) - w, std::max(x, y) + w, {x, y, x - a, x + a, y - b, y + b}, 1e-12);
}

double diag_cross(const oracle::Mat& x, const oracle::Vec& a, const oracle::Vec& b) {
  double s = 0.0;
  for (const auto& xi : x)
    for (const auto& xj : x) s += pair_integral(a[0], b[0], xi[0], xj[0]) * pair_integral(a[1], b[1], xi[1], xj[1]);
  return s / static_cast<double>(x.size() * x.size());
}

double diag_kernel(const oracle::Vec& a, const oracle::Vec& b) {
  return pair_integral(a[0], b[0], 0.0, 0.0) * pair_integral(a[1], b[1], 0.0, 0.0);
}

oracle::Vec diag_of(const Bandwidth& bw) { return {bw.matrix()(0, 0), bw.matrix()(1, 1)}; }

/// Simpson nodes and weights on a square window.
struct Nodes2d {
  std::vector<oracle::Vec> points;
  std::vector<double> weights;
};

Nodes2d simpson_nodes(const oracle::Mat& x, double pad, int m) {
  double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
  for (const auto& r : x)
    for (int a = 0; a < 2; ++a) lo[a] = std::min(lo[a], r[a] - pad), hi[a] = std::max(hi[a], r[a] + pad);
  const double hx = (hi[0] - lo[0]) / (m - 1), hy = (hi[1] - lo[1]) / (m - 1);
  auto w = [m](int i) { return i == 0 || i == m - 1 ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0); };
  Nodes2d n;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      n.points.push_back({lo[0] + i * hx, lo[1] + j * hy});
      n.weights.push_back(w(i) * w(j) * hx * hy / 9.0);
    }
  return n;
}

double max_eig(const SymMatrix& a) {
  const auto e = sym_eig(a).eigenvalues;
  return *std::max_element(e.begin(), e.end());
}

std::size_t argmin_of(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

// ---------------------------------------------------------------- criteria

void criterion1() {
  const std::map<std::string, std::pair<double, double>> target{
      {"G", {0.08, 0.08}}, {"MG", {0.13, 0.13}}, {"Bi", {0.09, 0.09}}, {"SC", {0.20, 0.20}}, {"MU", {0.50, 0.51}}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, t] : target) {
    const auto f = find_density(1, name);
    const double pco = monte_carlo_risk(f, MethodSpec{Method::kPco, kGauss}, 100, 20, 20240101).mean;
    const double ucv = monte_carlo_risk(f, MethodSpec{Method::kUcv, kGauss}, 100, 20, 20240101).mean;
    ok = ok && std::abs(pco - t.first) <= 0.03 && std::abs(ucv - t.second) <= 0.03;
    detail += name + " pco " + fmt(pco) + " ucv " + fmt(ucv) + "; ";
  }
  report(1, ok, "1D table, n=100, 20 trials, PCO and UCV within 0.03", detail);
}

void criterion2() {
  ExperimentConfig c;
  c.densities = {"G", "MG", "K"};
  const auto reports = run_lambda_sweep(c, 1);
  std::map<std::string, std::map<double, double>> risk;
  for (const auto& r : reports) risk[r.density][r.lambda] = r.mean;
  bool ok = true;
  std::string detail;
  for (auto& [name, m] : risk) {
    const double lo = std::min({m[0.8], m[1.0], m[1.2]}), hi = std::max({m[0.8], m[1.0], m[1.2]});
    const bool blow = m[-0.2] >= 2.0 * m[1.0];
    const bool plateau = hi <= 1.15 * lo;
    ok = ok && blow && plateau;
    detail += name + " r(-0.2)/r(1) " + fmt(m[-0.2] / m[1.0]) + " plateau spread " + fmt(hi / lo) + "; ";
  }
  report(2, ok, "lambda study on G, MG, K", detail);
}

void criterion3() {
  const std::map<std::string, std::array<double, 3>> target{
      {"UG", {0.109, 0.093, 0.097}}, {"CG", {0.141, 0.134, 0.138}}, {"Bi", {0.108, 0.107, 0.102}}, {"T", {0.099, 0.102, 0.097}}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, t] : target) {
    const auto f = find_density(2, name);
    const Method ms[3] = {Method::kPco, Method::kScv, Method::kPi};
    const double tol[3] = {0.03, 0.05, 0.05};
    detail += name;
    for (int k = 0; k < 3; ++k) {
      MethodSpec spec{ms[k], kGauss};
      spec.grid_size = 256;
      const double v = monte_carlo_risk(f, spec, 100, 20, 20240101).mean;
      ok = ok && std::abs(v - t[k]) <= tol[k];
      detail += std::string(" ") + std::string(to_string(ms[k])) + " " + fmt(v);
    }
    detail += "; ";
  }
  report(3, ok, "2D diagonal grid 256, n=100, 20 trials", detail);
}

bool criterion5() {
  std::mt19937_64 rng(505);
  int agree = 0, total = 0;
  std::string misses;
  auto check = [&](const std::string& tag, std::size_t chosen, const std::vector<double>& ref) {
    ++total;
    if (chosen == argmin_of(ref)) ++agree;
    else misses += tag + " ";
  };
  for (int inst = 0; inst < 20; ++inst) {
    if (inst < 10) {
      const std::size_t n = 10 + static_cast<std::size_t>(rng() % 41);
      const auto& zoo1 = zoo(1);
      const auto& f = zoo1[rng() % zoo1.size()];
      const Sample s = f.sample(n, rng());
      const auto& x = s.data();
      const Kernel& k = inst % 3 == 0 ? kGauss : (inst % 3 == 1 ? kEpan : kBiw);
      const BandwidthGrid grid = univariate_grid(n, k, 29);
      std::vector<double> pco(grid.size()), ucv(grid.size()), scv(grid.size()), pi(grid.size());
      const double g = PilotSpec::normal_reference(s).bandwidth.scalar();
      const double gp = PilotSpec::psi4_normal_reference(s).bandwidth.scalar();
      const double psi = hessian_norm_1d(x, gp / std::sqrt(2.0));
      const std::vector<double> gx(x.begin(), x.end());
      for (std::size_t m = 0; m < grid.size(); ++m) {
        const double h = grid.members[m].scalar();
        pco[m] = pco_oracle_1d(gx, k, h, grid.h_min().scalar(), 1.0);
        ucv[m] = ucv_oracle_1d(gx, k, h);
        scv[m] = scv_oracle_1d(gx, h, g);
        pi[m] = 1.0 / (2.0 * std::sqrt(kPi) * static_cast<double>(n) * h) + 0.25 * std::pow(h, 4) * psi;
      }
      const std::string tag = "d1#" + std::to_string(inst);
      check(tag + "pco", pco_select(s, k, grid).chosen_index.value(), pco);
      check(tag + "ucv", ucv_select(s, k, grid).chosen_index.value(), ucv);
      check(tag + "scv", scv_select_md(s, grid, PilotSpec::normal_reference(s)).chosen_index.value(), scv);
      check(tag + "pi", pi_select_md(s, grid, PilotSpec::psi4_normal_reference(s)).chosen_index.value(), pi);
    } else {
      const std::size_t n = 10 + static_cast<std::size_t>(rng() % 11);
      const auto& zoo2 = zoo(2);
      const auto& f = zoo2[rng() % zoo2.size()];
      const Sample s = f.sample(n, rng());
      const auto x = testing::rows(s);
      const BandwidthGrid grid = diagonal_grid(n, 2, kGauss, 24);
      const double nd = static_cast<double>(n);
      const PilotSpec scv_pilot = PilotSpec::normal_reference(s);
      const PilotSpec pi_pilot = PilotSpec::psi4_normal_reference(s);
      const oracle::Mat g2 = testing::to_mat(scv_pilot.bandwidth.covariance());
      const oracle::Mat p2 = oracle::scale(testing::to_mat(pi_pilot.bandwidth.covariance()), 0.5);

      double spread = max_eig(scv_pilot.bandwidth.covariance()) + 1.0;
      spread = std::max(spread, max_eig(pi_pilot.bandwidth.covariance()));
      const Nodes2d nodes = simpson_nodes(x, 9.0 * std::sqrt(spread), 241);
      const oracle::Gauss lg(g2);
      std::vector<double> base(nodes.points.size());
      std::vector<std::array<double, 3>> hess(nodes.points.size());
      const oracle::Gauss lp(p2);
      const oracle::Mat pinv = oracle::inv(p2);
      for (std::size_t q = 0; q < nodes.points.size(); ++q) {
        base[q] = oracle::kde_gauss(x, lg, nodes.points[q]);
        std::array<double, 3> hsum{0.0, 0.0, 0.0};
        for (const auto& xi : x) {
          const double u[2] = {nodes.points[q][0] - xi[0], nodes.points[q][1] - xi[1]};
          const double w0 = pinv[0][0] * u[0] + pinv[0][1] * u[1], w1 = pinv[1][0] * u[0] + pinv[1][1] * u[1];
          const double phi = lp(u);
          hsum[0] += phi * (w0 * w0 - pinv[0][0]);
          hsum[1] += phi * (w0 * w1 - pinv[0][1]);
          hsum[2] += phi * (w1 * w1 - pinv[1][1]);
        }
        for (double& v : hsum) v /= nd;
        hess[q] = hsum;
      }
      std::vector<double> pco(grid.size()), ucv(grid.size()), scv(grid.size()), pi(grid.size());
      const oracle::Vec hmin = diag_of(grid.h_min());
      const double cmin = diag_cross(x, hmin, hmin);
      for (std::size_t m = 0; m < grid.size(); ++m) {
        const Bandwidth& bw = grid.members[m];
        const oracle::Vec h = diag_of(bw);
        const double hh = diag_cross(x, h, h);
        const double sq = diag_kernel(h, h);
        pco[m] = cmin - 2.0 * diag_cross(x, hmin, h) + hh + (sq - (diag_kernel(hmin, hmin) - 2.0 * diag_kernel(hmin, h) + sq)) / nd;

        const oracle::Gauss kh(testing::to_mat(bw.covariance()));
        double loo = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
              const double u[2] = {x[i][0] - x[j][0], x[i][1] - x[j][1]};
              loo += kh(u) / (nd - 1.0);
            }
        ucv[m] = hh - ((nd - 1.0) / nd) * (2.0 / nd) * loo;

        const double var = 1.0 / (4.0 * kPi * nd * bw.determinant());
        const oracle::Gauss shifted(oracle::add(testing::to_mat(bw.covariance()), g2));
        const SymMatrix& h2 = bw.covariance();
        double bias = 0.0, amise = 0.0;
        for (std::size_t q = 0; q < nodes.points.size(); ++q) {
          bias += nodes.weights[q] * std::pow(oracle::kde_gauss(x, shifted, nodes.points[q]) - base[q], 2);
          const double tr = h2(0, 0) * hess[q][0] + 2.0 * h2(0, 1) * hess[q][1] + h2(1, 1) * hess[q][2];
          amise += nodes.weights[q] * tr * tr;
        }
        scv[m] = var + bias;
        pi[m] = var + 0.25 * amise;
      }
      const std::string tag = "d2#" + std::to_string(inst);
      check(tag + "pco", pco_select_md(s, grid).chosen_index.value(), pco);
      check(tag + "ucv", ucv_select_md(s, grid).chosen_index.value(), ucv);
      check(tag + "scv", scv_select_md(s, grid, scv_pilot).chosen_index.value(), scv);
      check(tag + "pi", pi_select_md(s, grid, pi_pilot).chosen_index.value(), pi);
    }
  }
  const bool ok = agree == total;
  report(5, ok, "oracle argmin on 20 random instances (PCO, UCV, SCV, PI; d = 1, 2)",
         std::to_string(agree) + "/" + std::to_string(total) + " agree" + (misses.empty() ? "" : "; misses " + misses));
  return ok;
}

bool criterion6() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> uh(0.05, 1.2);
  double worst[4] = {0, 0, 0, 0};
  int count[4] = {0, 0, 0, 0};
  const Kernel* kernels[3] = {&kGauss, &kEpan, &kBiw};
  for (int c = 0; c < 60; ++c) {
    const Kernel& k = *kernels[c % 3];
    const auto p = profile_of(k);
    const double h = uh(rng), hmin = uh(rng) * 0.3, lambda = uh(rng) * 2.0 - 0.2;
    const std::size_t n = 5 + rng() % 40;
    const double ref = (lambda * kernel_sq(p, h, reach(k)) - kernel_diff_sq(p, hmin, h, reach(k), 1.0)) / static_cast<double>(n);
    worst[0] = std::max(worst[0], testing::rel(pco_penalty(k, Bandwidth(h), Bandwidth(hmin), lambda, n), ref));
    ++count[0];

    const Sample s = find_density(1, c % 2 ? "MG" : "Sk").sample(n, 6000 + c);
    const std::vector<double> x(s.data().begin(), s.data().end());
    const double pcn = integrate_kde_sq_diff(x, p, hmin, h, reach(k));
    worst[1] = std::max(worst[1], testing::rel(pairwise_comparison_norm(s, k, Bandwidth(h), Bandwidth(hmin)), pcn));
    ++count[1];

    const double g = uh(rng);
    worst[2] = std::max(worst[2], testing::rel(scv_criterion(PairDifferences(s), Bandwidth(h), Bandwidth(g)), scv_oracle_1d(x, h, g)));
    ++count[2];

    const auto f = find_density(1, c % 2 ? "MG" : "G");
    const Sample t = f.sample(n, 7000 + c);
    const std::vector<double> y(t.data().begin(), t.data().end());
    std::vector<double> br = breaks_for(y, {h});
    double lo = std::min(*std::min_element(y.begin(), y.end()) - 12 * h, -8.0);
    double hi = std::max(*std::max_element(y.begin(), y.end()) + 12 * h, 8.0);
    for (const auto& comp : f.components()) br.push_back(comp.location()[0]);
    const double ise_ref = oracle::integrate_pieces(
        [&](double u) {
          double fu = 0.0;
          for (const auto& comp : f.components())
            fu += comp.weight() * oracle::gauss1(u - comp.location()[0], comp.covariance()(0, 0));
          return std::pow(oracle::kde1(y, oracle::Profile::kGaussian, h, u) - fu, 2);
        },
        lo, hi, br, 1e-14, 2);
    worst[3] = std::max(worst[3], testing::rel(ise(f, t, kGauss, Bandwidth(h)), ise_ref));
    ++count[3];
  }
  const bool ok = *std::max_element(worst, worst + 4) <= 1e-5 && *std::min_element(count, count + 4) >= 50;
  report(6, ok, "closed form vs quadrature, 60 cases each",
         "max rel err: penalty " + fmt(worst[0]) + ", comparison norm " + fmt(worst[1]) + ", SCV " + fmt(worst[2]) +
             ", ISE " + fmt(worst[3]));
  return ok;
}

bool criterion7() {
  std::mt19937_64 rng(707);
  double worst_fd = 0.0, worst_sym = 0.0;
  for (std::size_t d : {1u, 2u, 3u, 4u}) {
    const Bandwidth bw(testing::random_spd(d, rng, 0.5));
    const oracle::Gauss L(testing::to_mat(bw.covariance()));
    const auto f = [&](const oracle::Vec& u) { return L(u.data()); };
    const Psi4Matrix psi = psi4_hat(Sample(d, std::vector<double>(d, 1.5)), PilotSpec{bw});
    const Sample many = testing::normal_sample(30, d, rng);
    const Psi4Matrix psi_many = psi4_hat(many, PilotSpec::normal_reference(many));
    double top = 0.0;
    for (std::size_t e = 0; e < d * d * d * d; ++e) top = std::max(top, std::abs(psi.matrix(e / (d * d), e % (d * d))));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t e = 0; e < d; ++e) {
            const oracle::Vec zero(d, 0.0);
            const double coarse = oracle::fd4(f, zero, {a, b, c, e}, 2e-2);
            const double fine = oracle::fd4(f, zero, {a, b, c, e}, 1e-2);
            worst_fd = std::max(worst_fd, std::abs(psi(a, b, c, e) - (4.0 * fine - coarse) / 3.0) / top);
            std::array<std::size_t, 4> idx{a, b, c, e};
            std::sort(idx.begin(), idx.end());
            do {
              worst_sym = std::max(worst_sym, std::abs(psi_many(idx[0], idx[1], idx[2], idx[3]) - psi_many(a, b, c, e)));
            } while (std::next_permutation(idx.begin(), idx.end()));
          }
  }
  const bool ok = worst_fd <= 1e-4 && worst_sym <= 1e-12;
  report(7, ok, "psi4 finite differences (n = 1, d = 1..4) and permutation symmetry",
         "max fd rel err " + fmt(worst_fd) + ", max symmetry gap " + fmt(worst_sym));
  return ok;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool criterion8() {
  ExperimentConfig c;
  c.densities = {"U", "K", "Bi"};
  c.dims = {1, 2};
  c.methods = {"pco", "ucv", "rot"};
  c.trials = 6;
  c.grid_size = 64;
  const fs::path root = fs::temp_directory_path() / "pcokde_acceptance_determinism";
  fs::remove_all(root);
  bool ok = true;
  std::vector<std::string> outputs[3];
  const std::size_t threads[3] = {1, 1, 4};
  for (int run = 0; run < 3; ++run) {
    c.output_dir = (root / std::to_string(run)).string();
    for (const auto& p : simulate_to_directory(c, threads[run]))
      if (p.filename() != "config.txt") outputs[run].push_back(slurp(p));
  }
  ok = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
  fs::remove_all(root);
  report(8, ok, "simulate reruns byte-identical (threads 1, 1, 4)", std::to_string(outputs[0].size()) + " CSV files compared");
  return ok;
}

bool criterion9() {
  bool ok = true;
  std::string detail;
  const double off1[] = {37.5};
  const double off2[] = {-12.0, 8.25};
  {
    const Sample s = find_density(1, "Bi").sample(80, 901);
    const Sample t = s.translated(off1);
    int same = 0, total = 0;
    for (Method m : {Method::kPco, Method::kUcv}) {
      const MethodSpec spec{m, kGauss};
      const auto a = select_bandwidth(s, spec), b = select_bandwidth(t, spec);
      ++total;
      same += a.chosen_index == b.chosen_index;
    }
    for (Method m : {Method::kRot, Method::kRot0, Method::kBcv, Method::kSjSte, Method::kSjDpi}) {
      const MethodSpec spec{m, kGauss};
      ++total;
      same += testing::rel(select_bandwidth(t, spec).chosen.scalar(), select_bandwidth(s, spec).chosen.scalar()) < 1e-9;
    }
    const Sample s2 = find_density(2, "T").sample(60, 902);
    const Sample t2 = s2.translated(off2);
    for (Method m : {Method::kPco, Method::kUcv, Method::kScv, Method::kPi}) {
      MethodSpec spec{m, kGauss};
      spec.grid_size = 64;
      ++total;
      same += select_bandwidth(s2, spec).chosen_index == select_bandwidth(t2, spec).chosen_index;
    }
    ok = ok && same == total;
    detail += "translation " + std::to_string(same) + "/" + std::to_string(total) + "; ";
  }
  {
    const Sample s = find_density(1, "MG").sample(100, 903);
    double worst = 0.0;
    for (double c : {0.01, 3.0, 250.0})
      for (Method m : {Method::kRot, Method::kRot0, Method::kBcv, Method::kSjSte, Method::kSjDpi}) {
        const MethodSpec spec{m, kGauss};
        worst = std::max(worst, testing::rel(select_bandwidth(s.scaled(c), spec).chosen.scalar(), c * select_bandwidth(s, spec).chosen.scalar()));
      }
    ok = ok && worst < 1e-6;
    detail += "scale max rel " + fmt(worst) + "; ";
  }
  {
    std::mt19937_64 rng(904);
    std::normal_distribution<double> z;
    double worst = 0.0;
    for (std::size_t d : {2u, 3u, 4u}) {
      const Sample s = find_density(d, "ABi").sample(70, 905 + d);
      std::vector<std::vector<double>> q(d, std::vector<double>(d));
      for (auto& r : q)
        for (double& v : r) v = z(rng);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          double dot = 0.0;
          for (std::size_t k = 0; k < d; ++k) dot += q[i][k] * q[j][k];
          for (std::size_t k = 0; k < d; ++k) q[i][k] -= dot * q[j][k];
        }
        double nrm = 0.0;
        for (double v : q[i]) nrm += v * v;
        for (double& v : q[i]) v /= std::sqrt(nrm);
      }
      SquareMatrix qm(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) qm(i, j) = q[i][j];
      const SymMatrix h = rot_select_md(s).chosen.matrix(), hq = rot_select_md(s.rotated(qm)).chosen.matrix();
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          double ref = 0.0;
          for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) ref += q[i][a] * h(a, b) * q[j][b];
          worst = std::max(worst, std::abs(hq(i, j) - ref));
        }
    }
    ok = ok && worst <= 1e-10;
    detail += "rotation max abs " + fmt(worst) + "; ";
  }
  {
    int mono = 0, total = 0;
    for (int seed = 0; seed < 10; ++seed) {
      const std::size_t d = seed < 5 ? 1 : 2;
      const Sample s = find_density(d, seed % 2 ? "Bi" : "K").sample(100, 910 + seed);
      double prev = 0.0;
      bool up = true;
      for (double lambda : {0.5, 1.0, 2.0}) {
        MethodSpec spec{Method::kPco, kGauss, lambda};
        const double det = select_bandwidth(s, spec).chosen.determinant();
        up = up && det >= prev;
        prev = det;
      }
      ++total;
      mono += up;
    }
    ok = ok && mono == total;
    detail += "PCO det monotone in lambda " + std::to_string(mono) + "/" + std::to_string(total);
  }
  report(9, ok, "invariance suite", detail);
  return ok;
}

void criterion10() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"ABi", "DF"}) {
    const auto f = find_density(2, name);
    const Sample s = f.sample(100, 2024);
    const BandwidthGrid grid = diagonal_grid(100, 2, kGauss);
    const auto r = pco_select_md(s, grid);
    std::vector<double> ises(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) ises[m] = ise(f, s, kGauss, grid.members[m]);
    const double chosen = ises[r.chosen_index.value()];
    const auto below = std::count_if(ises.begin(), ises.end(), [&](double v) { return v < chosen; });
    const double frac = static_cast<double>(below) / static_cast<double>(ises.size());
    ok = ok && frac < 0.10;
    detail += std::string(name) + " rank fraction " + fmt(frac) + " (ISE " + fmt(chosen) + ", min " +
              fmt(*std::min_element(ises.begin(), ises.end())) + "); ";
  }
  report(10, ok, "PCO near the grid ISE optimum on ABi and DF, d = 2, n = 100", detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  // Criterion 4 is carried by the properties checked in 5 to 9.
  const bool p5 = criterion5();
  const bool p6 = criterion6();
  const bool p7 = criterion7();
  const bool p8 = criterion8();
  const bool p9 = criterion9();
  report(4, p5 && p6 && p7 && p8 && p9, "excluded cells (n = 10^4 multivariate, full 16^d grids in d = 3, 4, anomalous 3D/4D rows)",
         "not run as numeric targets; status is that of substitutes 5 to 9");
  criterion10();
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  return failures == 0 ? 0 : 1;
}
