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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pcokde/density_zoo.hpp"
#include "pcokde/error.hpp"
#include "pcokde/experiment.hpp"
#include "pcokde/methods.hpp"
#include "pcokde/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(pcokde::ErrorCode code) {
  switch (code) {
    case pcokde::ErrorCode::kUnsupportedDimension:
    case pcokde::ErrorCode::kUnsupportedKernelDimension:
    case pcokde::ErrorCode::kInvalidArgument:
    case pcokde::ErrorCode::kInsufficientData:
    case pcokde::ErrorCode::kDimensionMismatch:
      return kExitInput;
    default:
      return kExitCompute;
  }
}

pcokde::Sample read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::vector<double> data;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t cols = 0;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &used);
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
      }
      if (field.find_first_not_of(" \t", used) != std::string::npos)
        throw InputError("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
      data.push_back(v);
      ++cols;
    }
    if (dim == 0) dim = cols;
    if (cols != dim) throw InputError("line " + std::to_string(line_no) + ": inconsistent column count");
    ++rows;
  }
  if (rows == 0) throw InputError("empty input " + path);
  if (dim > pcokde::kMaxDim) throw InputError("unsupported dimension " + std::to_string(dim));
  return pcokde::Sample(dim, std::move(data));
}

std::string join_numbers(const std::vector<double>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + pcokde::format_number(v[i]);
  return out;
}

struct SelectArgs {
  std::string input;
  std::string method = "pco";
  std::string kernel = "gaussian";
  double lambda = 1.0;
  std::string grid = "diagonal";
  std::size_t grid_size = 0;
  std::string curve;
};

int cmd_select(const SelectArgs& args) {
  const pcokde::Sample sample = read_csv(args.input);
  pcokde::MethodSpec spec;
  spec.method = pcokde::parse_method(args.method);
  spec.kernel = pcokde::Kernel::parse(args.kernel);
  spec.lambda = args.lambda;
  spec.grid = pcokde::parse_grid_kind(args.grid);
  spec.grid_size = args.grid_size;
  const auto result = pcokde::select_bandwidth(sample, spec);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  const std::size_t d = sample.dim();
  std::cout << "method " << args.method << " kernel " << args.kernel << " n " << sample.size() << " d " << d << '\n';
  if (d == 1) {
    std::cout << "h " << pcokde::format_number(result.chosen.scalar()) << '\n';
  } else {
    const auto& eig = result.chosen.eigen();
    std::cout << "vech(H) " << join_numbers(pcokde::vech(result.chosen.matrix()), ",") << '\n';
    std::cout << "eigenvalues " << join_numbers({eig.eigenvalues.begin(), eig.eigenvalues.begin() + d}, ",") << '\n';
  }
  if (!args.curve.empty()) {
    if (result.criterion.empty()) {
      std::cerr << "warning: method " << args.method << " has no criterion curve; " << args.curve << " not written\n";
      return kExitOk;
    }
    const auto grid = pcokde::build_grid(sample, spec);
    std::ofstream out(args.curve, std::ios::binary);
    if (!out) throw InputError("cannot write " + args.curve);
    if (d == 1) {
      out << "h,criterion\n";
      for (std::size_t k = 0; k < grid.size(); ++k)
        out << pcokde::format_number(grid.members[k].scalar()) << ',' << pcokde::format_number(result.criterion[k]) << '\n';
    } else {
      out << "detH,criterion";
      for (std::size_t j = 0; j < pcokde::vech_length(d); ++j) out << ",vech" << j + 1;
      out << '\n';
      for (std::size_t k = 0; k < grid.size(); ++k)
        out << pcokde::format_number(grid.members[k].determinant()) << ',' << pcokde::format_number(result.criterion[k])
            << ',' << join_numbers(pcokde::vech(grid.members[k].matrix()), ",") << '\n';
    }
  }
  return kExitOk;
}

/// Flag values kept as text and applied through the config parser so file and flags share one code path.
struct ExperimentArgs {
  std::string config_file;
  std::map<std::string, std::string> overrides;
  std::size_t threads = 0;
};

void add_experiment_options(CLI::App* cmd, ExperimentArgs& args, bool sweep) {
  cmd->add_option("--config", args.config_file, "key = value config file");
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"densities", "density abbreviations or 'all'"},
      {"methods", "comma-separated methods"},
      {"kernel", "gaussian | epanechnikov | biweight"},
      {"dims", "comma-separated dimensions"},
      {"n", "comma-separated sample sizes"},
      {"trials", "Monte-Carlo trials per cell"},
      {"grid", "diagonal | rotated"},
      {"grid_size", "grid size override"},
      {"master_seed", "master seed"},
      {"output_dir", "output directory"},
  };
  for (const auto& [key, help] : keys) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd->add_option_function<std::string>(flag, [&args, key = key](const std::string& v) { args.overrides[key] = v; },
                                          help);
  }
  if (sweep) {
    cmd->add_option_function<std::string>("--lambdas", [&args](const std::string& v) { args.overrides["lambdas"] = v; },
                                          "comma-separated lambda values");
  } else {
    cmd->add_option_function<std::string>("--lambda", [&args](const std::string& v) { args.overrides["lambda"] = v; },
                                          "PCO tuning parameter");
  }
  cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
}

pcokde::ExperimentConfig effective_config(const ExperimentArgs& args) {
  pcokde::ExperimentConfig config;
  if (const char* env = std::getenv("PCOKDE_OUTPUT_DIR"); env != nullptr && *env != '\0') config.output_dir = env;
  if (!args.config_file.empty()) config = pcokde::load_config(args.config_file, config);
  for (const auto& [key, value] : args.overrides) pcokde::set_config_value(config, key, value);
  return config;
}

int cmd_experiment(const ExperimentArgs& args, bool sweep) {
  const auto config = effective_config(args);
  const std::size_t threads = args.threads == 0 ? pcokde::default_thread_count() : args.threads;
  const auto files = sweep ? pcokde::lambda_sweep_to_directory(config, threads) : pcokde::simulate_to_directory(config, threads);
  for (const auto& f : files) std::cout << f.string() << '\n';
  return kExitOk;
}

int cmd_zoo(std::size_t dim, bool json) {
  if (json) {
    std::cout << pcokde::zoo_catalog_json(dim) << '\n';
    return kExitOk;
  }
  for (const auto& density : pcokde::zoo(dim))
    std::cout << density.abbreviation() << '\t' << density.name() << (density.projected() ? "\t(projected)" : "") << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel density bandwidth selection toolkit"};
  app.require_subcommand(1);

  SelectArgs select_args;
  auto* select = app.add_subcommand("select", "choose a bandwidth for a headerless CSV sample");
  select->add_option("--input", select_args.input, "headerless CSV, one observation per row")->required();
  select->add_option("--method", select_args.method, "pco | rot | rot0 | ucv | bcv | sjste | sjdpi | scv | pi");
  select->add_option("--kernel", select_args.kernel, "gaussian | epanechnikov | biweight");
  select->add_option("--lambda", select_args.lambda, "PCO tuning parameter");
  select->add_option("--grid", select_args.grid, "diagonal | rotated (d >= 2)");
  select->add_option("--grid-size", select_args.grid_size, "grid size override");
  select->add_option("--curve", select_args.curve, "write the criterion curve CSV here");

  ExperimentArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo risk tables");
  add_experiment_options(simulate, sim_args, false);

  ExperimentArgs sweep_args;
  auto* sweep = app.add_subcommand("lambda-sweep", "PCO risk as a function of lambda");
  add_experiment_options(sweep, sweep_args, true);

  std::size_t zoo_dim = 1;
  bool zoo_json = false;
  auto* zoo = app.add_subcommand("zoo", "list benchmark densities");
  zoo->add_option("--dim", zoo_dim, "dimension 1..4")->check(CLI::Range(1, 4));
  zoo->add_flag("--list", "list abbreviations and names (default)");
  zoo->add_flag("--json", zoo_json, "print the catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (select->parsed()) return cmd_select(select_args);
    if (simulate->parsed()) return cmd_experiment(sim_args, false);
    if (sweep->parsed()) return cmd_experiment(sweep_args, true);
    if (zoo->parsed()) return cmd_zoo(zoo_dim, zoo_json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const pcokde::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitInput;
}
