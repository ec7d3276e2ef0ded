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

#pragma once

// CSV datasets, seeded Gaussian generators and the JSON run report.

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qdasim/dataset.hpp"
#include "qdasim/linalg.hpp"

namespace qdasim::io {

/// Header row of feature names followed by a final `label` column; labels
/// are arbitrary strings numbered 1..k in order of first appearance. Errors
/// throw std::invalid_argument as "<source>:<line>: <reason>".
LabeledDataset parse_csv(std::istream& in, const std::string& source = "<stream>");
LabeledDataset load_csv(const std::filesystem::path& path);

/// Values written in shortest round-trip form.
void write_csv(const LabeledDataset& data, std::ostream& out);
void save_csv(const LabeledDataset& data, const std::filesystem::path& path);

struct SyntheticSpec {
  std::vector<int> class_sizes;               ///< M_c >= 2
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;   ///< symmetric PSD
  std::uint64_t seed = 1;
};

/// x = mu_c + L z with z standard normal and L L^T = Sigma_c (Cholesky, or
/// V sqrt(Lambda) when Sigma_c is only semidefinite).
LabeledDataset generate(const SyntheticSpec& spec);

struct PresetOptions {
  int dimension = 0;        ///< 0 keeps the preset's own dimension
  int per_class = 0;        ///< 0 keeps the preset's own count
};

/// Named benchmark sets: "two-gauss", "three-gauss", "adversarial", "circles".
std::vector<std::string> preset_names();
SyntheticSpec preset_spec(const std::string& name, std::uint64_t seed, const PresetOptions& options = {});
LabeledDataset synthetic(const std::string& name, std::uint64_t seed, const PresetOptions& options = {});

/// Two noisy concentric rings (radii 1 and 3) in the plane.
LabeledDataset concentric_circles(int per_class, double noise, std::uint64_t seed);

/// Random well-conditioned Gaussian classification problem: class means
/// spread over a sphere of radius `separation`, per-class covariances
/// rotated and rescaled with condition number up to `anisotropy`.
SyntheticSpec random_gaussian_spec(int dimension, int classes, int per_class, double separation,
                                   double anisotropy, bool shared_covariance, std::uint64_t seed);

inline constexpr const char* kReportSchema = "qdasim.report/1";

/// Machine-readable record of one command: echo, parameters, outputs,
/// metrics and resource counters, with stable key order. Only `timestamp`
/// varies between runs with the same seed.
class RunReport {
 public:
  using json = nlohmann::ordered_json;

  RunReport(std::string command, std::uint64_t seed);

  json& parameters() { return doc_["parameters"]; }
  json& outputs() { return doc_["outputs"]; }
  json& metrics() { return doc_["metrics"]; }
  json& resources() { return doc_["resources"]; }
  const json& document() const { return doc_; }

  void stamp();  ///< records the current UTC time
  std::string dump(bool with_timestamp = true) const;
  static RunReport parse(const std::string& text);

 private:
  RunReport() = default;
  json doc_;
};

nlohmann::ordered_json to_json(const Eigen::VectorXd& v);
nlohmann::ordered_json to_json(const Eigen::MatrixXd& m);
/// {"re": [[...]], "im": [[...]]}
nlohmann::ordered_json to_json(const linalg::Matrix& m);
nlohmann::ordered_json to_json(const linalg::Vector& v);

}  // namespace qdasim::io
