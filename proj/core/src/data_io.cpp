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

#include "qdasim/data_io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qdasim::io {

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& reason) {
  std::ostringstream os;
  os << source << ":" << line << ": " << reason;
  throw std::invalid_argument(os.str());
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

LabeledDataset parse_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) header = split(line);
  }
  if (header.empty()) fail(source, line_no, "empty file");
  if (header.back() != "label") fail(source, line_no, "missing label column (last header must be 'label')");
  if (header.size() < 2) fail(source, line_no, "no feature columns");
  const std::size_t n = header.size() - 1;

  std::vector<double> values;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::map<std::string, int> class_index;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      std::ostringstream os;
      os << "ragged row: expected " << header.size() << " cells, found " << cells.size();
      fail(source, line_no, os.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& cell = cells[i];
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        fail(source, line_no, "non-numeric value '" + cell + "' in column '" + header[i] + "'");
      }
      values.push_back(v);
    }
    const std::string& label = cells.back();
    if (label.empty()) fail(source, line_no, "empty label");
    auto [it, inserted] = class_index.emplace(label, static_cast<int>(class_names.size()) + 1);
    if (inserted) class_names.push_back(label);
    labels.push_back(it->second);
  }
  if (labels.empty()) fail(source, line_no, "no data rows");
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    for (Eigen::Index c = 0; c < samples.cols(); ++c) {
      samples(r, c) = values[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)];
    }
  }
  header.pop_back();
  const int k = static_cast<int>(class_names.size());
  return LabeledDataset(std::move(samples), std::move(labels), k, std::move(header), std::move(class_names));
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path.string() + ": cannot open file");
  return parse_csv(in, path.string());
}

void write_csv(const LabeledDataset& data, std::ostream& out) {
  for (const auto& name : data.feature_names()) out << name << ",";
  out << "label\n";
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    for (Eigen::Index i = 0; i < data.dimension(); ++i) out << format_double(data.samples()(j, i)) << ",";
    out << data.class_names()[static_cast<std::size_t>(data.label(j) - 1)] << "\n";
  }
}

void save_csv(const LabeledDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path.string() + ": cannot write file");
  write_csv(data, out);
}

LabeledDataset generate(const SyntheticSpec& spec) {
  const std::size_t k = spec.class_sizes.size();
  if (k == 0 || spec.means.size() != k || spec.covariances.size() != k) {
    throw std::invalid_argument("generate: need one size, mean and covariance per class");
  }
  const Eigen::Index n = spec.means.front().size();
  std::vector<Eigen::MatrixXd> factors;
  for (std::size_t c = 0; c < k; ++c) {
    const Eigen::MatrixXd& cov = spec.covariances[c];
    if (spec.means[c].size() != n || cov.rows() != n || cov.cols() != n) {
      throw std::invalid_argument("generate: class " + std::to_string(c + 1) + " has the wrong dimension");
    }
    if (spec.class_sizes[c] < 2) {
      throw std::invalid_argument("generate: class " + std::to_string(c + 1) + " needs at least 2 samples");
    }
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("generate: covariance " + std::to_string(c + 1) + " is not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) {
      factors.emplace_back(llt.matrixL());
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
      throw std::invalid_argument("generate: covariance " + std::to_string(c + 1) + " is not positive semidefinite");
    }
    factors.emplace_back(eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal());
  }

  Eigen::Index total = 0;
  for (int m : spec.class_sizes) total += m;
  Eigen::MatrixXd samples(total, n);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(total));
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;
  Eigen::Index row = 0;
  Eigen::VectorXd z(n);
  for (std::size_t c = 0; c < k; ++c) {
    for (int s = 0; s < spec.class_sizes[c]; ++s) {
      for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
      samples.row(row++) = (spec.means[c] + factors[c] * z).transpose();
      labels.push_back(static_cast<int>(c) + 1);
    }
  }
  return LabeledDataset(std::move(samples), std::move(labels), static_cast<int>(k));
}

SyntheticSpec random_gaussian_spec(int dimension, int classes, int per_class, double separation,
                                   double anisotropy, bool shared_covariance, std::uint64_t seed) {
  if (dimension < 1 || classes < 1 || per_class < 2 || !(anisotropy >= 1.0)) {
    throw std::invalid_argument("random_gaussian_spec: invalid shape parameters");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto random_covariance = [&]() {
    Eigen::MatrixXd g(dimension, dimension);
    for (int i = 0; i < dimension; ++i)
      for (int j = 0; j < dimension; ++j) g(i, j) = normal(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd spread(dimension);
    for (int i = 0; i < dimension; ++i) spread(i) = std::pow(anisotropy, -unit(rng));
    return Eigen::MatrixXd(q * spread.asDiagonal() * q.transpose());
  };
  SyntheticSpec spec;
  spec.seed = seed ^ 0x9e3779b97f4a7c15ULL;
  const Eigen::MatrixXd shared = random_covariance();
  for (int c = 0; c < classes; ++c) {
    Eigen::VectorXd mu(dimension);
    for (int i = 0; i < dimension; ++i) mu(i) = normal(rng);
    spec.means.push_back(separation * mu / mu.norm());
    spec.covariances.push_back(shared_covariance ? shared : random_covariance());
    spec.class_sizes.push_back(per_class);
  }
  return spec;
}

std::vector<std::string> preset_names() { return {"two-gauss", "three-gauss", "adversarial", "circles"}; }

SyntheticSpec preset_spec(const std::string& name, std::uint64_t seed, const PresetOptions& options) {
  SyntheticSpec spec;
  spec.seed = seed;
  const auto pick = [](int requested, int fallback) { return requested > 0 ? requested : fallback; };
  if (name == "two-gauss") {
    // Balanced classes at +-1.5 e1 with isotropic unit noise.
    const int n = pick(options.dimension, 4);
    const int m = pick(options.per_class, 200);
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    mu(0) = 1.5;
    spec.means = {mu, -mu};
    spec.covariances = {Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(n, n)};
    spec.class_sizes = {m, m};
  } else if (name == "three-gauss") {
    // Three classes with distinct axis-aligned covariances.
    const int n = pick(options.dimension, 4);
    const int m = pick(options.per_class, 200);
    if (n < 2) throw std::invalid_argument("three-gauss needs dimension >= 2");
    const double r = 2.0;
    for (int c = 0; c < 3; ++c) {
      const double angle = 2.0 * std::numbers::pi * c / 3.0;
      Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
      mu(0) = r * std::cos(angle);
      mu(1) = r * std::sin(angle);
      Eigen::VectorXd var = Eigen::VectorXd::Ones(n);
      var((c + 1) % n) = 0.4 + 0.6 * c;
      var(c % n) = 1.5 - 0.4 * c;
      spec.means.push_back(mu);
      spec.covariances.push_back(var.asDiagonal());
      spec.class_sizes.push_back(m);
    }
  } else if (name == "adversarial") {
    // Separation along e1, ten times the within-class variance along e2.
    const int n = pick(options.dimension, 2);
    const int m = pick(options.per_class, 200);
    if (n < 2) throw std::invalid_argument("adversarial needs dimension >= 2");
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    mu(0) = 2.5;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(n, n);
    cov(1, 1) = 10.0;
    spec.means = {mu, -mu};
    spec.covariances = {cov, cov};
    spec.class_sizes = {m, m};
  } else if (name == "circles") {
    throw std::invalid_argument("preset 'circles' is not Gaussian; use synthetic()");
  } else {
    throw std::invalid_argument("unknown synthetic preset '" + name + "'");
  }
  return spec;
}

LabeledDataset concentric_circles(int per_class, double noise, std::uint64_t seed) {
  if (per_class < 2 || !(noise >= 0.0)) throw std::invalid_argument("concentric_circles: invalid parameters");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> normal(0.0, noise > 0.0 ? noise : 1.0);
  Eigen::MatrixXd samples(2 * per_class, 2);
  std::vector<int> labels;
  for (int c = 0; c < 2; ++c) {
    const double radius = c == 0 ? 1.0 : 3.0;
    for (int s = 0; s < per_class; ++s) {
      const double a = angle(rng);
      const double r = radius + (noise > 0.0 ? normal(rng) : 0.0);
      samples.row(c * per_class + s) << r * std::cos(a), r * std::sin(a);
      labels.push_back(c + 1);
    }
  }
  return LabeledDataset(std::move(samples), std::move(labels), 2);
}

LabeledDataset synthetic(const std::string& name, std::uint64_t seed, const PresetOptions& options) {
  if (name == "circles") {
    if (options.dimension > 0 && options.dimension != 2) {
      throw std::invalid_argument("preset 'circles' is two-dimensional");
    }
    return concentric_circles(options.per_class > 0 ? options.per_class : 200, 0.2, seed);
  }
  return generate(preset_spec(name, seed, options));
}

// ---------------------------------------------------------------------------

RunReport::RunReport(std::string command, std::uint64_t seed) {
  doc_["schema"] = kReportSchema;
  doc_["version"] = QDASIM_VERSION;
  doc_["command"] = std::move(command);
  doc_["seed"] = seed;
  doc_["timestamp"] = "";
  doc_["parameters"] = json::object();
  doc_["outputs"] = json::object();
  doc_["metrics"] = json::object();
  doc_["resources"] = json::object();
}

void RunReport::stamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  doc_["timestamp"] = os.str();
}

std::string RunReport::dump(bool with_timestamp) const {
  if (with_timestamp) return doc_.dump(2);
  json copy = doc_;
  copy.erase("timestamp");
  return copy.dump(2);
}

RunReport RunReport::parse(const std::string& text) {
  RunReport r;
  r.doc_ = json::parse(text);
  if (!r.doc_.is_object() || r.doc_.value("schema", "") != kReportSchema) {
    throw std::invalid_argument("RunReport::parse: not a qdasim report");
  }
  return r;
}

nlohmann::ordered_json to_json(const Eigen::VectorXd& v) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

nlohmann::ordered_json to_json(const Eigen::MatrixXd& m) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return out;
}

nlohmann::ordered_json to_json(const linalg::Matrix& m) {
  nlohmann::ordered_json out;
  out["re"] = to_json(Eigen::MatrixXd(m.real()));
  out["im"] = to_json(Eigen::MatrixXd(m.imag()));
  return out;
}

nlohmann::ordered_json to_json(const linalg::Vector& v) {
  nlohmann::ordered_json out;
  out["re"] = to_json(Eigen::VectorXd(v.real()));
  out["im"] = to_json(Eigen::VectorXd(v.imag()));
  return out;
}

}  // namespace qdasim::io
