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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qdasim/chain.hpp"
#include "qdasim/error.hpp"
#include "qdasim/lda.hpp"
#include "qdasim/qda.hpp"
#include "qdasim/qram_oracle.hpp"
#include "qdasim/rotation.hpp"

namespace qdasim::cli {

using json = nlohmann::ordered_json;
using linalg::DensityOperator;
using linalg::SpectralFunction;

namespace {

bool wants_quantum(PathSelector p) { return p != PathSelector::classical; }
bool wants_classical(PathSelector p) { return p != PathSelector::quantum; }

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

json describe(const LabeledDataset& data, const std::string& source) {
  json d;
  d["source"] = source;
  d["rows"] = data.size();
  d["features"] = data.feature_names();
  json mapping = json::object();
  for (int c = 1; c <= data.class_count(); ++c) mapping[data.class_names()[static_cast<std::size_t>(c - 1)]] = c;
  d["labels"] = mapping;
  d["class_counts"] = data.class_counts();
  return d;
}

std::pair<LabeledDataset, std::string> training_data(const CommandConfig& config) {
  if (!config.data_path.empty() && !config.synthetic.empty()) {
    throw std::invalid_argument("--data and --synthetic are mutually exclusive");
  }
  if (!config.data_path.empty()) return {io::load_csv(config.data_path), config.data_path};
  if (!config.synthetic.empty()) {
    return {io::synthetic(config.synthetic, config.seed, {config.dimension, config.per_class}),
            "synthetic:" + config.synthetic};
  }
  throw std::invalid_argument("a dataset is required: pass --data FILE or --synthetic NAME");
}

json directions_json(const lda::ProjectionBasis& basis) {
  json out = json::array();
  for (const auto& w : basis.directions) out.push_back(io::to_json(w));
  return out;
}

json stage_list(const std::vector<double>& v) { return json(v); }

std::vector<int> decisions(const std::vector<qda::DiscriminantResult>& results) {
  std::vector<int> out;
  for (const auto& r : results) out.push_back(r.chosen);
  return out;
}

json classification_json(const std::vector<qda::DiscriminantResult>& results) {
  json values = json::array();
  json margins = json::array();
  for (const auto& r : results) {
    values.push_back(r.values);
    margins.push_back(r.margin);
  }
  json out;
  out["decisions"] = decisions(results);
  out["margins"] = margins;
  out["discriminants"] = values;
  return out;
}

linalg::Matrix parse_matrix(const json& j, const std::string& what) {
  const auto rows_of = [&](const json& a) -> Eigen::MatrixXd {
    if (!a.is_array() || a.empty()) throw std::invalid_argument(what + ": expected a non-empty array of rows");
    const std::size_t n = a.size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
      if (!a[r].is_array() || a[r].size() != n) throw std::invalid_argument(what + ": matrix must be square");
      for (std::size_t c = 0; c < n; ++c) {
        if (!a[r][c].is_number()) throw std::invalid_argument(what + ": non-numeric entry");
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a[r][c].get<double>();
      }
    }
    return m;
  };
  if (j.is_object()) {
    const Eigen::MatrixXd re = rows_of(j.at("re"));
    const Eigen::MatrixXd im = j.contains("im") ? rows_of(j.at("im")) : Eigen::MatrixXd::Zero(re.rows(), re.cols());
    if (im.rows() != re.rows()) throw std::invalid_argument(what + ": re and im shapes differ");
    linalg::Matrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
  }
  return rows_of(j).cast<linalg::Complex>();
}

DensityOperator parse_operator(const json& j, const std::string& what) {
  const linalg::Matrix m = parse_matrix(j, what);
  const linalg::HermitianOperator h(m);
  const double lmin = linalg::eig_hermitian(h).eigenvalues.minCoeff();
  if (lmin < -linalg::kPsdTolerance * std::max(1.0, std::abs(h.trace()))) {
    std::ostringstream os;
    os << what << ": not positive semidefinite (smallest eigenvalue " << lmin << ")";
    throw std::invalid_argument(os.str());
  }
  return DensityOperator::normalized(h.matrix());
}

}  // namespace

PathSelector parse_path(const std::string& text) {
  if (text == "quantum") return PathSelector::quantum;
  if (text == "classical") return PathSelector::classical;
  if (text == "both") return PathSelector::both;
  throw std::invalid_argument("--path must be quantum, classical or both");
}

std::string to_string(PathSelector path) {
  switch (path) {
    case PathSelector::quantum: return "quantum";
    case PathSelector::classical: return "classical";
    case PathSelector::both: return "both";
  }
  return "both";
}

void validate(const CommandConfig& config) {
  const auto require = [](bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
  };
  require(config.t >= 2 && config.t <= 12, "--t must lie in [2, 12]");
  require(config.kappa_eff >= 1.0 && std::isfinite(config.kappa_eff), "--kappa must be >= 1");
  require(config.epsilon > 0.0 && config.epsilon < 1.0, "--epsilon must lie in (0, 1)");
  require(config.shots >= 1, "--shots must be positive");
  require(config.draws >= 0, "--draws must be non-negative");
  require(config.p >= 1, "--p must be positive");
  require(config.dimension >= 0 && config.per_class >= 0 && config.test_per_class >= 0,
          "dataset sizes must be non-negative");
  require(config.integer_bits >= 1 && config.fraction_bits >= 4 &&
              config.integer_bits + config.fraction_bits <= rotation::kMaxTotalBits,
          "bit widths must satisfy ib >= 1, fb >= 4, ib + fb <= 60");
  require(config.f_order >= 1 && config.f_order <= 30, "--f-order must lie in [1, 30]");
  require(config.arcsin_terms >= 1 && config.arcsin_terms <= 40, "--arcsin-terms must lie in [1, 40]");
  require(config.grid_bits >= 1 && config.grid_bits <= 16, "--grid-bits must lie in [1, 16]");
  require(config.probe_cf > 0.0 && config.probe_cf < 1.0, "--probe-cf must lie in (0, 1)");
}

io::RunReport run_reduce(const CommandConfig& config) {
  const auto [data, source] = training_data(config);
  io::RunReport report("reduce", config.seed);
  auto& params = report.parameters();
  params["dataset"] = describe(data, source);
  params["p"] = config.p;
  params["kappa_eff"] = config.kappa_eff;
  params["epsilon"] = config.epsilon;
  params["t"] = config.t;
  params["path"] = to_string(config.path);

  const lda::ScatterPair scatter = lda::scatter_matrices(data);
  std::optional<lda::ProjectionBasis> classical;
  std::optional<lda::ProjectionBasis> quantum;
  if (wants_classical(config.path)) {
    classical = lda::classical_lda_oracle(data, config.p, config.kappa_eff);
    json out;
    out["directions"] = directions_json(*classical);
    out["eigenvalue_estimates"] = classical->eigenvalue_estimates;
    out["fisher_criterion"] = lda::fisher_criterion(scatter, classical->matrix());
    report.outputs()["classical"] = out;
  }
  if (wants_quantum(config.path)) {
    lda::QuantumLdaOptions options;
    options.epsilon = config.epsilon;
    options.t = config.t;
    options.seed = config.seed;
    options.draws = config.draws;
    quantum = lda::quantum_lda(data, config.p, config.kappa_eff, options);
    json out;
    out["directions"] = directions_json(*quantum);
    out["eigenvalue_estimates"] = quantum->eigenvalue_estimates;
    out["sample_frequencies"] = quantum->sample_frequencies;
    out["fisher_criterion"] = lda::fisher_criterion(scatter, quantum->matrix());
    report.outputs()["quantum"] = out;

    auto& metrics = report.metrics();
    metrics["chain_success_probabilities"] = stage_list(quantum->chain_success_probabilities);
    metrics["back_transform_success"] = quantum->back_transform_success;
    auto& res = report.resources();
    res["draws"] = quantum->draws;
    res["copies_used"] = quantum->copies_used;
    std::int64_t total = 0;
    for (auto c : quantum->copies_used) total += c;
    res["copies_total"] = total;
  }
  if (classical && quantum) {
    json overlaps = json::array();
    double min_overlap = 1.0;
    for (int r = 0; r < config.p; ++r) {
      const double o = std::abs(classical->directions[static_cast<std::size_t>(r)].dot(
          quantum->directions[static_cast<std::size_t>(r)]));
      overlaps.push_back(o);
      min_overlap = std::min(min_overlap, o);
    }
    report.metrics()["direction_overlaps"] = overlaps;
    report.metrics()["min_overlap"] = min_overlap;
  }
  return report;
}

io::RunReport run_classify(const CommandConfig& config) {
  const auto [train, source] = training_data(config);
  LabeledDataset test = train;
  std::string test_source;
  if (!config.data_path.empty()) {
    if (config.test_path.empty()) throw std::invalid_argument("classify needs --test FILE alongside --data");
    test = io::load_csv(config.test_path);
    test_source = config.test_path;
  } else {
    if (!config.test_path.empty()) {
      test = io::load_csv(config.test_path);
      test_source = config.test_path;
    } else {
      const int k = train.class_count();
      const int per_class = config.test_per_class > 0 ? config.test_per_class : (200 + k - 1) / k;
      test = io::synthetic(config.synthetic, child_seed(config.seed, 0xC1A55ULL),
                           {static_cast<int>(train.dimension()), per_class});
      test_source = "synthetic:" + config.synthetic + " (held out)";
    }
  }
  if (test.dimension() != train.dimension()) {
    throw std::invalid_argument("test set has " + std::to_string(test.dimension()) + " features, training set " +
                                std::to_string(train.dimension()));
  }
  // Test labels follow the training label names.
  std::map<std::string, int> train_index;
  for (int c = 1; c <= train.class_count(); ++c) train_index[train.class_names()[static_cast<std::size_t>(c - 1)]] = c;
  std::vector<int> truth;
  for (Eigen::Index j = 0; j < test.size(); ++j) {
    const std::string& name = test.class_names()[static_cast<std::size_t>(test.label(j) - 1)];
    const auto it = train_index.find(name);
    if (it == train_index.end()) throw std::invalid_argument("test label '" + name + "' does not occur in training data");
    truth.push_back(it->second);
  }

  io::RunReport report("classify", config.seed);
  auto& params = report.parameters();
  params["dataset"] = describe(train, source);
  params["test"] = describe(test, test_source);
  params["model"] = config.lda ? "lda" : "qda";
  params["prior"] = config.literal_prior ? "literal" : "log";
  params["kappa_eff"] = config.kappa_eff;
  params["t"] = config.t;
  params["shots"] = config.shots;
  params["path"] = to_string(config.path);

  qda::FitOptions fit_options;
  fit_options.kappa_eff = config.kappa_eff;
  fit_options.t = config.t;
  const qda::ClassifierModel model = config.lda ? qda::fit_lda(train, fit_options) : qda::fit(train, fit_options);
  {
    json priors = json::array();
    json scales = json::array();
    for (const auto& cls : model.classes) {
      priors.push_back(cls.prior);
      scales.push_back(cls.scale);
    }
    report.outputs()["priors"] = priors;
    report.outputs()["covariance_scales"] = scales;
  }

  qda::DiscriminantOptions options;
  options.shots = config.shots;
  options.seed = config.seed;
  options.prior = config.literal_prior ? qda::PriorTerm::literal_prior : qda::PriorTerm::log_prior;
  const auto accuracy = [&](const std::vector<int>& d) { return qda::agreement(d, truth); };

  std::optional<std::vector<int>> classical_decisions;
  std::optional<std::vector<int>> quantum_decisions;
  if (wants_classical(config.path)) {
    options.path = qda::Path::classical;
    const auto results = qda::classify_all(model, test.samples(), options);
    report.outputs()["classical"] = classification_json(results);
    classical_decisions = decisions(results);
    report.metrics()["classical_accuracy"] = accuracy(*classical_decisions);
  }
  if (wants_quantum(config.path)) {
    options.path = qda::Path::quantum;
    const auto results = qda::classify_all(model, test.samples(), options);
    report.outputs()["quantum"] = classification_json(results);
    quantum_decisions = decisions(results);
    report.metrics()["quantum_accuracy"] = accuracy(*quantum_decisions);
    json success = json::array();
    std::int64_t shots = 0;
    std::int64_t copies = 0;
    for (const auto& r : results) shots += r.shots;
    for (const auto& cls : model.classes) {
      success.push_back(cls.quantum.success);
      copies += cls.quantum.copies;
    }
    report.metrics()["inversion_success_probabilities"] = success;
    report.resources()["shots_total"] = shots;
    report.resources()["covariance_copies"] = copies;
  }
  if (classical_decisions && quantum_decisions) {
    report.metrics()["agreement"] = qda::agreement(*classical_decisions, *quantum_decisions);
  }
  return report;
}

io::RunReport run_chain(const CommandConfig& config) {
  chain::ChainSpec spec;
  spec.kappa_eff = config.kappa_eff;
  spec.epsilon = config.epsilon;
  spec.t = config.t;
  std::optional<DensityOperator> rho0;
  io::RunReport report("chain", config.seed);
  auto& params = report.parameters();

  if (!config.operators_path.empty()) {
    std::ifstream in(config.operators_path);
    if (!in) throw std::invalid_argument(config.operators_path + ": cannot open file");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(config.operators_path + ": " + e.what());
    }
    const json& ops = doc.is_array() ? doc : doc.at("operators");
    std::vector<std::string> functions = config.functions;
    if (functions.empty() && doc.is_object() && doc.contains("functions")) {
      functions = doc.at("functions").get<std::vector<std::string>>();
    }
    if (functions.size() != ops.size()) {
      throw std::invalid_argument("chain: " + std::to_string(ops.size()) + " operator(s) but " +
                                  std::to_string(functions.size()) + " function(s)");
    }
    for (std::size_t j = 0; j < ops.size(); ++j) {
      spec.stages.push_back({parse_operator(ops[j], "operator " + std::to_string(j + 1)),
                             SpectralFunction::parse(functions[j]), std::nullopt});
    }
    if (doc.is_object() && doc.contains("rho0")) rho0 = parse_operator(doc.at("rho0"), "rho0");
    params["operators"] = config.operators_path;
  } else {
    // LDA-shaped chain: S_B^1/2 S_W^-1/2 rho S_W^-1/2 S_B^1/2.
    const auto [data, source] = training_data(config);
    const auto stats = oracle::class_statistics(data);
    spec.stages = {{oracle::within_scatter(data, stats), SpectralFunction::inverse_sqrt(), std::nullopt},
                   {oracle::between_scatter(stats), SpectralFunction::sqrt(), std::nullopt}};
    params["dataset"] = describe(data, source);
  }
  if (spec.stages.empty()) throw std::invalid_argument("chain: no stages");
  {
    json fs = json::array();
    for (const auto& s : spec.stages) fs.push_back(s.f.name());
    params["functions"] = fs;
  }
  params["dimension"] = spec.stages.front().a.dim();
  params["kappa_eff"] = config.kappa_eff;
  params["epsilon"] = config.epsilon;
  params["t"] = config.t;
  params["rotation"] = config.exact_rotation ? "exact" : "fixed-point";
  params["path"] = to_string(config.path);

  std::optional<DensityOperator> oracle_out;
  if (wants_classical(config.path)) {
    oracle_out = chain::classical_chain_oracle(spec, rho0);
    report.outputs()["classical"] = io::to_json(oracle_out->matrix());
  }
  if (wants_quantum(config.path)) {
    chain::StageOptions options;
    options.arithmetic = config.exact_rotation ? rotation::Arithmetic::exact : rotation::Arithmetic::fixed_point;
    const chain::ChainReport r = chain::chain_apply(spec, rho0, options);
    report.outputs()["quantum"] = io::to_json(r.output.matrix());
    auto& m = report.metrics();
    json rows = json::array();
    bool holds = true;
    bool guaranteed = true;
    for (std::size_t j = 0; j < r.stage_success_probabilities.size(); ++j) {
      json row;
      row["function"] = spec.stages[j].f.name();
      row["success"] = r.stage_success_probabilities[j];
      row["bound"] = r.theoretical_bound[j];
      row["guaranteed"] = r.guaranteed_bound[j];
      row["constant"] = r.constants[j];
      row["condition_number"] = r.condition_numbers[j];
      row["support_weight"] = r.support_weights[j];
      holds = holds && r.stage_success_probabilities[j] >= r.theoretical_bound[j];
      guaranteed = guaranteed && r.stage_success_probabilities[j] >= r.guaranteed_bound[j];
      rows.push_back(row);
    }
    m["stages"] = rows;
    m["bound_holds"] = holds;
    m["guarantee_holds"] = guaranteed;
    m["total_success_probability"] = r.total_success_probability;
    m["amplified_bound_stage1"] = r.amplified_bound_stage1;
    if (oracle_out) m["trace_distance"] = linalg::trace_distance(*oracle_out, r.output);
    report.resources()["copies_used"] = r.copies_used;
  }
  report.metrics()["complexity_estimate"] = chain::complexity_estimate(spec, 1.0);
  return report;
}

io::RunReport run_rotate_check(const CommandConfig& config) {
  std::vector<std::string> names = config.rotate_functions;
  if (names.empty()) names = {"identity", "inverse", "inverse-sqrt"};
  rotation::RotationConfig rc;
  rc.integer_bits = config.integer_bits;
  rc.fraction_bits = config.fraction_bits;
  rc.f_order = config.f_order;
  rc.arcsin_terms = config.arcsin_terms;
  const double lambda_min = 1.0 / config.kappa_eff;
  rc.octaves = rotation::octaves_for(lambda_min);
  const double budget = std::ldexp(1.0, -(config.fraction_bits - 3));
  const int grid = 1 << config.grid_bits;

  io::RunReport report("rotate-check", config.seed);
  auto& params = report.parameters();
  params["functions"] = names;
  if (config.constant) params["c"] = *config.constant;
  params["integer_bits"] = config.integer_bits;
  params["fraction_bits"] = config.fraction_bits;
  params["f_order"] = config.f_order;
  params["arcsin_terms"] = config.arcsin_terms;
  params["grid_bits"] = config.grid_bits;
  params["kappa_eff"] = config.kappa_eff;
  params["epsilon"] = config.epsilon;

  json rows = json::array();
  bool all_within = true;
  std::int64_t points = 0;
  for (const auto& name : names) {
    const SpectralFunction f = SpectralFunction::parse(name);
    std::vector<double> grid_points;
    for (int m = 1; m <= grid; ++m) {
      const double lambda = static_cast<double>(m) / grid;
      if (lambda >= lambda_min) grid_points.push_back(lambda);
    }
    double fmax = 0.0;
    for (double l : grid_points) fmax = std::max(fmax, std::abs(f(l)));
    const double c = config.constant ? *config.constant : (1.0 - config.epsilon) / fmax;
    double worst = 0.0;
    double worst_lambda = 0.0;
    int saturated = 0;
    for (double l : grid_points) {
      const auto r = rotation::rotation_angle(l, f, c, rc);
      saturated += r.saturated;
      const double err = std::abs(r.theta.to_double() - rotation::exact_angle(l, f, c));
      if (err > worst) {
        worst = err;
        worst_lambda = l;
      }
    }
    points += static_cast<std::int64_t>(grid_points.size());
    json row;
    row["function"] = f.name();
    row["c"] = c;
    row["grid_points"] = grid_points.size();
    row["max_error"] = worst;
    row["worst_lambda"] = worst_lambda;
    row["saturated"] = saturated;
    row["within_budget"] = worst <= budget;
    all_within = all_within && worst <= budget;
    rows.push_back(row);
  }
  report.outputs()["sweep"] = rows;
  report.metrics()["error_budget"] = budget;
  report.metrics()["within_budget"] = all_within;

  const double x = config.probe_cf;
  const double err_n = std::abs(rotation::arcsin_series_exact(x, config.arcsin_terms) - std::asin(x));
  const double err_2n = std::abs(rotation::arcsin_series_exact(x, 2 * config.arcsin_terms) - std::asin(x));
  json probe;
  probe["cf"] = x;
  probe["terms"] = config.arcsin_terms;
  probe["truncation_error"] = err_n;
  probe["doubled_terms_error"] = err_2n;
  probe["reduced"] = err_2n < err_n;
  report.metrics()["arcsin_truncation"] = probe;
  report.resources()["angle_evaluations"] = points;
  return report;
}

io::RunReport run_gen(const CommandConfig& config) {
  if (config.synthetic.empty()) throw std::invalid_argument("gen needs --synthetic NAME");
  if (config.csv_out.empty()) throw std::invalid_argument("gen needs --out FILE");
  const LabeledDataset data = io::synthetic(config.synthetic, config.seed, {config.dimension, config.per_class});
  io::save_csv(data, config.csv_out);
  io::RunReport report("gen", config.seed);
  report.parameters()["synthetic"] = config.synthetic;
  report.parameters()["dimension"] = data.dimension();
  report.parameters()["per_class"] = config.per_class;
  report.outputs()["dataset"] = describe(data, config.csv_out);
  json means = json::array();
  for (int c = 1; c <= data.class_count(); ++c) {
    means.push_back(io::to_json(Eigen::VectorXd(data.class_samples(c).colwise().mean().transpose())));
  }
  report.outputs()["sample_means"] = means;
  return report;
}

io::RunReport run(const CommandConfig& config) {
  validate(config);
  if (config.subcommand == "reduce") return run_reduce(config);
  if (config.subcommand == "classify") return run_classify(config);
  if (config.subcommand == "chain") return run_chain(config);
  if (config.subcommand == "rotate-check") return run_rotate_check(config);
  if (config.subcommand == "gen") return run_gen(config);
  throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
}

}  // namespace qdasim::cli
