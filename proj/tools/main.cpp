// Copyright 2026 The qdasim Authors
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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "qdasim/error.hpp"

namespace {

using qdasim::cli::CommandConfig;

void add_data_options(CLI::App* cmd, CommandConfig& c) {
  cmd->add_option("--data", c.data_path, "CSV dataset (features..., label)")->check(CLI::ExistingFile);
  cmd->add_option("--synthetic", c.synthetic, "synthetic preset: two-gauss, three-gauss, adversarial, circles");
  cmd->add_option("--dim", c.dimension, "feature dimension for synthetic presets (0 = preset default)");
  cmd->add_option("--per-class", c.per_class, "samples per class for synthetic presets (0 = preset default)");
}

void add_common_options(CLI::App* cmd, CommandConfig& c, std::string& path) {
  cmd->add_option("--kappa", c.kappa_eff, "effective condition number cutoff")->capture_default_str();
  cmd->add_option("--epsilon", c.epsilon, "target precision")->capture_default_str();
  cmd->add_option("--t", c.t, "eigenvalue register qubits")->capture_default_str();
  cmd->add_option("--path", path, "quantum, classical or both")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated quantum discriminant analysis"};
  app.set_version_flag("--version", std::string(QDASIM_VERSION));
  app.require_subcommand(1);

  CommandConfig config;
  std::string path = "both";
  std::string report_path;
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "random seed (falls back to QDASIM_SEED, then 1)");
  app.add_option("--report", report_path, "write the JSON report here instead of stdout");

  auto* reduce = app.add_subcommand("reduce", "LDA dimensionality reduction");
  add_data_options(reduce, config);
  add_common_options(reduce, config, path);
  reduce->add_option("--p", config.p, "number of directions")->capture_default_str();
  reduce->add_option("--draws", config.draws, "eigenpair samples (0 = max(4096, 64 * 2^t))");

  auto* classify = app.add_subcommand("classify", "discriminant classification");
  add_data_options(classify, config);
  add_common_options(classify, config, path);
  classify->add_option("--test", config.test_path, "held-out CSV (required with --data)")->check(CLI::ExistingFile);
  classify->add_option("--test-per-class", config.test_per_class, "held-out samples per class for presets");
  classify->add_option("--shots", config.shots, "Hadamard-test shots per discriminant")->capture_default_str();
  classify->add_flag("--lda", config.lda, "share the pooled within-class covariance across classes");
  classify->add_flag("--literal-prior", config.literal_prior, "add pi_c instead of log pi_c");

  auto* chain = app.add_subcommand("chain", "normalized Hermitian chain product");
  add_data_options(chain, config);
  add_common_options(chain, config, path);
  chain->add_option("--operators", config.operators_path, "JSON file with PSD operators")->check(CLI::ExistingFile);
  chain->add_option("--functions", config.functions, "one spectral function per operator")->delimiter(',');
  chain->add_flag("--exact-rotation", config.exact_rotation, "rotate by C f(lambda) in doubles");

  auto* rotate = app.add_subcommand("rotate-check", "fixed-point rotation angle sweep");
  rotate->add_option("--function", config.rotate_functions, "functions to sweep")->delimiter(',');
  rotate->add_option("--c", config.constant, "rotation constant (default (1 - epsilon) / max f)");
  rotate->add_option("--integer-bits", config.integer_bits)->capture_default_str();
  rotate->add_option("--fraction-bits", config.fraction_bits)->capture_default_str();
  rotate->add_option("--f-order", config.f_order, "Taylor order for f")->capture_default_str();
  rotate->add_option("--arcsin-terms", config.arcsin_terms)->capture_default_str();
  rotate->add_option("--grid-bits", config.grid_bits, "lambda grid m / 2^g")->capture_default_str();
  rotate->add_option("--probe-cf", config.probe_cf, "argument for the arcsin truncation probe")->capture_default_str();
  rotate->add_option("--kappa", config.kappa_eff, "smallest lambda is 1 / kappa")->capture_default_str();
  rotate->add_option("--epsilon", config.epsilon)->capture_default_str();

  auto* gen = app.add_subcommand("gen", "write a synthetic dataset");
  gen->add_option("--synthetic", config.synthetic, "preset name")->required();
  gen->add_option("--dim", config.dimension);
  gen->add_option("--per-class", config.per_class);
  gen->add_option("--out", config.csv_out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    config.path = qdasim::cli::parse_path(path);
    if (seed) {
      config.seed = *seed;
    } else if (const char* env = std::getenv("QDASIM_SEED")) {
      try {
        config.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw std::invalid_argument("QDASIM_SEED must be an unsigned integer");
      }
    }
    auto report = qdasim::cli::run(config);
    report.stamp();
    if (report_path.empty()) {
      std::cout << report.dump() << "\n";
    } else {
      std::ofstream out(report_path);
      if (!out) throw std::invalid_argument(report_path + ": cannot write report");
      out << report.dump() << "\n";
    }
    return 0;
  } catch (const qdasim::DomainError& e) {
    std::cerr << "qdasim: " << e.what() << "\n";
    return 2;
  } catch (const qdasim::NumericalError& e) {
    std::cerr << "qdasim: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qdasim: " << e.what() << "\n" << "run 'qdasim --help' for usage\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qdasim: " << e.what() << "\n";
    return 3;
  }
}
