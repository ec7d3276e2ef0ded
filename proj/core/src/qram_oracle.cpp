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

#include "qdasim/qram_oracle.hpp"

#include <sstream>
#include <stdexcept>

#include "qdasim/error.hpp"

namespace qdasim::oracle {

using linalg::Complex;
using linalg::DensityOperator;
using linalg::Subsystem;

ClassStatistics class_statistics(const LabeledDataset& data) {
  const int k = data.class_count();
  const Eigen::Index n = data.dimension();
  ClassStatistics s;
  s.class_counts = data.class_counts();
  s.class_means.assign(static_cast<std::size_t>(k), Eigen::VectorXd::Zero(n));
  s.global_mean = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    const auto row = data.samples().row(j).transpose();
    s.class_means[static_cast<std::size_t>(data.label(j) - 1)] += row;
    s.global_mean += row;
  }
  for (int c = 0; c < k; ++c) {
    const int count = s.class_counts[static_cast<std::size_t>(c)];
    if (count == 0) {
      throw DomainError("class_statistics: class " + std::to_string(c + 1) + " is empty");
    }
    s.class_means[static_cast<std::size_t>(c)] /= static_cast<double>(count);
  }
  s.global_mean /= static_cast<double>(data.size());

  s.per_class_norm.assign(static_cast<std::size_t>(k), 0.0);
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    const auto c = static_cast<std::size_t>(data.label(j) - 1);
    const double d2 = (data.samples().row(j).transpose() - s.class_means[c]).squaredNorm();
    s.per_class_norm[c] += d2;
    s.norm_within += d2;
  }
  for (const auto& mu : s.class_means) s.norm_between += (mu - s.global_mean).squaredNorm();
  return s;
}

linalg::Vector weighted_superposition(std::span<const Eigen::VectorXd> vectors) {
  if (vectors.empty()) {
    throw DomainError("weighted_superposition: no vectors");
  }
  const Eigen::Index n = vectors.front().size();
  const auto count = static_cast<Eigen::Index>(vectors.size());
  double total = 0.0;
  for (const auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("weighted_superposition: ragged vectors");
    total += v.squaredNorm();
  }
  if (!(total > 0.0)) {
    throw DomainError("weighted_superposition: every vector is zero");
  }
  // |v_i| * |v_i / |v_i|> is just v_i; the norm register is a function of the
  // index and drops out of every reduced operator, so it is not materialized.
  linalg::Vector psi(count * n);
  const double scale = 1.0 / std::sqrt(total);
  for (Eigen::Index i = 0; i < count; ++i) {
    psi.segment(i * n, n) = (vectors[static_cast<std::size_t>(i)] * scale).cast<Complex>();
  }
  return psi;
}

namespace {

DensityOperator reduced_from_superposition(const std::vector<Eigen::VectorXd>& vectors,
                                           const char* what) {
  std::vector<Eigen::VectorXd> nonzero;
  nonzero.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.squaredNorm() > 0.0) nonzero.push_back(v);
  }
  if (nonzero.empty()) {
    throw DomainError(std::string(what) + ": every difference vector is zero");
  }
  const linalg::Vector psi = weighted_superposition(nonzero);
  const Eigen::Index n = nonzero.front().size();
  return DensityOperator::normalized(
      linalg::partial_trace_pure(psi, static_cast<Eigen::Index>(nonzero.size()), n, Subsystem::first));
}

}  // namespace

DensityOperator between_scatter(const ClassStatistics& stats) {
  if (!(stats.norm_between > 0.0)) {
    throw DomainError("between_scatter: all class means coincide (A = 0)");
  }
  std::vector<Eigen::VectorXd> diffs;
  for (const auto& mu : stats.class_means) diffs.push_back(mu - stats.global_mean);
  return reduced_from_superposition(diffs, "between_scatter");
}

DensityOperator within_scatter(const LabeledDataset& data, const ClassStatistics& stats) {
  if (!(stats.norm_within > 0.0)) {
    throw DomainError("within_scatter: every sample equals its class mean (B = 0)");
  }
  std::vector<Eigen::VectorXd> diffs;
  diffs.reserve(static_cast<std::size_t>(data.size()));
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    diffs.push_back(data.samples().row(j).transpose() -
                    stats.class_means[static_cast<std::size_t>(data.label(j) - 1)]);
  }
  return reduced_from_superposition(diffs, "within_scatter");
}

DensityOperator class_covariance_operator(const LabeledDataset& data, const ClassStatistics& stats,
                                          int c) {
  if (c < 1 || c > data.class_count()) {
    throw std::invalid_argument("class_covariance_operator: class index out of range");
  }
  const auto idx = static_cast<std::size_t>(c - 1);
  if (!(stats.per_class_norm[idx] > 0.0)) {
    std::ostringstream os;
    os << "class_covariance_operator: class " << c << " has no spread (A_c = 0)";
    throw DomainError(os.str());
  }
  std::vector<Eigen::VectorXd> diffs;
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    if (data.label(j) == c) {
      diffs.push_back(data.samples().row(j).transpose() - stats.class_means[idx]);
    }
  }
  return reduced_from_superposition(diffs, "class_covariance_operator");
}

Eigen::MatrixXd classical_between_scatter(const ClassStatistics& stats) {
  const Eigen::Index n = stats.global_mean.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (const auto& mu : stats.class_means) {
    const Eigen::VectorXd d = mu - stats.global_mean;
    s += d * d.transpose();
  }
  return s;
}

Eigen::MatrixXd classical_within_scatter(const LabeledDataset& data, const ClassStatistics& stats) {
  const Eigen::Index n = data.dimension();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    const Eigen::VectorXd d = data.samples().row(j).transpose() -
                              stats.class_means[static_cast<std::size_t>(data.label(j) - 1)];
    s += d * d.transpose();
  }
  return s;
}

}  // namespace qdasim::oracle
