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

#include "pcokde/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "pcokde/error.hpp"

namespace pcokde {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kInvalidArgument, "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

template <typename T>
T parse_scalar(std::string_view key, std::string_view value) {
  value = trim(value);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) bad_value(key, value);
  return out;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view value) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(parse_scalar<T>(key, item));
  if (out.empty()) bad_value(key, value);
  return out;
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_same_v<T, std::string>) {
      out += items[i];
    } else if constexpr (std::is_floating_point_v<T>) {
      out += format_number(items[i]);
    } else {
      out += std::to_string(items[i]);
    }
  }
  return out;
}

std::string vech_field(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ";";
    out += format_number(v[i]);
  }
  return out;
}

std::string number_or_na(double v) { return std::isfinite(v) ? format_number(v) : "NA"; }

std::size_t effective_grid_size(const ExperimentConfig& config, std::size_t dim) {
  if (config.grid_size > 0) return config.grid_size;
  return dim == 1 ? 400 : default_grid_size(dim);
}

std::string group_suffix(std::size_t dim, std::size_t n) {
  return "_d" + std::to_string(dim) + "_n" + std::to_string(n) + ".csv";
}

std::filesystem::path write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << content;
  return path;
}

std::string config_file_text(const ExperimentConfig& config) {
  std::string text = format_config(config);
  for (std::size_t d : config.dims)
    text += "# effective grid size d=" + std::to_string(d) + ": " + std::to_string(effective_grid_size(config, d)) +
            (d == 1 ? " (+ h_min)" : "") + "\n";
  return text;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "densities") {
    config.densities = split_list(value);
    if (config.densities.empty()) bad_value(key, value);
  } else if (key == "methods") {
    config.methods = value == "default" ? std::vector<std::string>{} : split_list(value);
  } else if (key == "kernel") {
    config.kernel = std::string(value);
  } else if (key == "dims") {
    config.dims = parse_list<std::size_t>(key, value);
  } else if (key == "n") {
    config.ns = parse_list<std::size_t>(key, value);
  } else if (key == "trials") {
    config.trials = parse_scalar<std::size_t>(key, value);
  } else if (key == "lambda") {
    config.lambda = parse_scalar<double>(key, value);
  } else if (key == "lambdas") {
    config.lambdas = value == "default" ? std::vector<double>{} : parse_list<double>(key, value);
  } else if (key == "grid") {
    config.grid = std::string(value);
  } else if (key == "grid_size") {
    config.grid_size = parse_scalar<std::size_t>(key, value);
  } else if (key == "master_seed") {
    config.master_seed = parse_scalar<std::uint64_t>(key, value);
  } else if (key == "output_dir") {
    config.output_dir = std::string(value);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::kInvalidArgument, "config line " + std::to_string(line_no) + ": expected key = value");
    set_config_value(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string format_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "densities = " << join(config.densities) << "\n";
  out << "methods = " << (config.methods.empty() ? std::string("default") : join(config.methods)) << "\n";
  out << "kernel = " << config.kernel << "\n";
  out << "dims = " << join(config.dims) << "\n";
  out << "n = " << join(config.ns) << "\n";
  out << "trials = " << config.trials << "\n";
  out << "lambda = " << format_number(config.lambda) << "\n";
  out << "lambdas = " << (config.lambdas.empty() ? std::string("default") : join(config.lambdas)) << "\n";
  out << "grid = " << config.grid << "\n";
  out << "grid_size = " << config.grid_size << "\n";
  out << "master_seed = " << config.master_seed << "\n";
  out << "output_dir = " << config.output_dir << "\n";
  return out.str();
}

std::vector<std::string> default_methods(std::size_t dim) {
  if (dim == 1) return {"rot", "ucv", "bcv", "sjste", "sjdpi", "pco"};
  return {"rot", "ucv", "pi", "scv", "pco"};
}

std::vector<double> default_lambdas() {
  return {-0.2, -0.1, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
}

std::vector<BenchmarkDensity> resolve_densities(const ExperimentConfig& config, std::size_t dim) {
  if (config.densities.size() == 1 && config.densities[0] == "all") return zoo(dim);
  std::vector<BenchmarkDensity> out;
  for (const auto& abbr : config.densities) out.push_back(find_density(dim, abbr));
  return out;
}

MethodSpec method_spec(const ExperimentConfig& config, std::string_view method, double lambda) {
  MethodSpec spec;
  spec.method = parse_method(method);
  spec.kernel = Kernel::parse(config.kernel);
  spec.lambda = lambda;
  spec.grid = parse_grid_kind(config.grid);
  spec.grid_size = config.grid_size;
  return spec;
}

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (!std::isfinite(config.lambda)) throw Error(ErrorCode::kInvalidArgument, "lambda must be finite");
  for (double l : config.lambdas)
    if (!std::isfinite(l)) throw Error(ErrorCode::kInvalidArgument, "lambdas must be finite");
  if (config.dims.empty() || config.ns.empty()) throw Error(ErrorCode::kInvalidArgument, "dims and n must be non-empty");
  for (std::size_t n : config.ns)
    if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be >= 2");
  const Kernel kernel = Kernel::parse(config.kernel);
  parse_grid_kind(config.grid);
  for (std::size_t d : config.dims) {
    if (d < 1 || d > 4) throw Error(ErrorCode::kUnsupportedDimension, "unsupported dimension " + std::to_string(d));
    kernel.require_dimension(d);
    resolve_densities(config, d);
    for (const auto& m : config.methods.empty() ? default_methods(d) : config.methods) parse_method(m);
  }
}

void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& reports) {
  out << "density,method,kernel,grid,lambda,n,trial,seed,ise_sqrt,chosen_bandwidth_vech,status\n";
  for (const auto& r : reports)
    for (const auto& t : r.trials) {
      std::string status = t.status;
      std::replace(status.begin(), status.end(), ',', ';');
      std::replace(status.begin(), status.end(), '\n', ' ');
      out << r.density << ',' << r.method << ',' << r.kernel << ',' << r.grid << ',' << format_number(r.lambda) << ','
          << r.n << ',' << t.trial << ',' << t.seed << ',' << (t.ok ? format_number(t.ise_sqrt) : "NA") << ','
          << vech_field(t.chosen_vech) << ',' << status << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const std::vector<RiskReport>& reports) {
  const RatioTable table = ratio_stats(reports);
  out << "density";
  for (const auto& m : table.methods) out << ',' << m << ',' << m << "_bold";
  out << '\n';
  for (std::size_t i = 0; i < table.densities.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : table.mean[i])
      if (std::isfinite(v)) best = std::min(best, v);
    out << table.densities[i];
    for (double v : table.mean[i]) out << ',' << number_or_na(v) << ',' << (std::isfinite(v) && v <= 1.05 * best ? 1 : 0);
    out << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RiskReport>& reports) {
  const RatioTable table = ratio_stats(reports);
  out << "density,method,mean,r_med,r_meth_min\n";
  for (std::size_t i = 0; i < table.densities.size(); ++i)
    for (std::size_t j = 0; j < table.methods.size(); ++j)
      out << table.densities[i] << ',' << table.methods[j] << ',' << number_or_na(table.mean[i][j]) << ','
          << number_or_na(table.r_med[i][j]) << ',' << number_or_na(table.r_meth_min[i][j]) << '\n';
  for (std::size_t j = 0; j < table.methods.size(); ++j)
    out << "r_bar," << table.methods[j] << ",NA,NA," << number_or_na(table.r_bar[j]) << '\n';
}

std::vector<RiskReport> run_simulation(const ExperimentConfig& config, std::size_t threads) {
  validate(config);
  std::vector<RiskReport> reports;
  for (std::size_t d : config.dims) {
    const auto densities = resolve_densities(config, d);
    const auto methods = config.methods.empty() ? default_methods(d) : config.methods;
    for (std::size_t n : config.ns)
      for (const auto& density : densities)
        for (const auto& m : methods)
          reports.push_back(
              monte_carlo_risk(density, method_spec(config, m, config.lambda), n, config.trials, config.master_seed, threads));
  }
  return reports;
}

std::vector<RiskReport> run_lambda_sweep(const ExperimentConfig& config, std::size_t threads) {
  validate(config);
  const auto lambdas = config.lambdas.empty() ? default_lambdas() : config.lambdas;
  if (*std::min_element(lambdas.begin(), lambdas.end()) > -0.2 || *std::max_element(lambdas.begin(), lambdas.end()) < 2.0)
    throw Error(ErrorCode::kInvalidArgument, "lambda list must cover [-0.2, 2]");
  std::vector<RiskReport> reports;
  for (std::size_t d : config.dims) {
    const auto densities = resolve_densities(config, d);
    for (std::size_t n : config.ns)
      for (const auto& density : densities)
        for (double lambda : lambdas)
          reports.push_back(
              monte_carlo_risk(density, method_spec(config, "pco", lambda), n, config.trials, config.master_seed, threads));
  }
  return reports;
}

void write_sweep_csv(std::ostream& out, const std::vector<RiskReport>& reports) {
  out << "density,dim,n,lambda,trials,failures,mean_ise,mean_ise_sqrt\n";
  for (const auto& r : reports) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& t : r.trials)
      if (t.ok) {
        sum += t.ise_sqrt * t.ise_sqrt;
        ++count;
      }
    const double mean_ise = count > 0 ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
    out << r.density << ',' << r.dim << ',' << r.n << ',' << format_number(r.lambda) << ',' << r.trials.size() << ','
        << r.failures << ',' << number_or_na(mean_ise) << ',' << number_or_na(r.mean) << '\n';
  }
}

std::vector<std::filesystem::path> simulate_to_directory(const ExperimentConfig& config, std::size_t threads) {
  const auto reports = run_simulation(config, threads);
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files{write_file(dir / "config.txt", config_file_text(config))};
  for (std::size_t d : config.dims)
    for (std::size_t n : config.ns) {
      std::vector<RiskReport> group;
      for (const auto& r : reports)
        if (r.dim == d && r.n == n) group.push_back(r);
      std::ostringstream risk, table, ratios;
      write_risk_csv(risk, group);
      write_aggregate_csv(table, group);
      write_ratio_csv(ratios, group);
      files.push_back(write_file(dir / ("risk" + group_suffix(d, n)), risk.str()));
      files.push_back(write_file(dir / ("table" + group_suffix(d, n)), table.str()));
      files.push_back(write_file(dir / ("ratios" + group_suffix(d, n)), ratios.str()));
    }
  return files;
}

std::vector<std::filesystem::path> lambda_sweep_to_directory(const ExperimentConfig& config, std::size_t threads) {
  const auto reports = run_lambda_sweep(config, threads);
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  std::ostringstream sweep, trials;
  write_sweep_csv(sweep, reports);
  write_risk_csv(trials, reports);
  return {write_file(dir / "config.txt", config_file_text(config)), write_file(dir / "lambda_sweep.csv", sweep.str()),
          write_file(dir / "lambda_sweep_trials.csv", trials.str())};
}

}  // namespace pcokde
