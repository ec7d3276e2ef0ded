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

// Emulation of the quantum-RAM data oracles. Norms and normalized difference
// vectors are read straight from the stored dataset; the norm-weighted
// superpositions are built as exact state vectors and the scatter operators
// come out of the partial trace over the index register.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qdasim/dataset.hpp"
#include "qdasim/linalg.hpp"

namespace qdasim::oracle {

struct ClassStatistics {
  std::vector<Eigen::VectorXd> class_means;  ///< mu_c, index c-1
  Eigen::VectorXd global_mean;               ///< sample mean over all x_j
  std::vector<int> class_counts;             ///< M_c
  double norm_within = 0.0;                  ///< B = sum_j |x_j - mu_{c_j}|^2
  double norm_between = 0.0;                 ///< A = sum_c |mu_c - xbar|^2
  std::vector<double> per_class_norm;        ///< A_c = sum_{j in c} |x_j - mu_c|^2
};

ClassStatistics class_statistics(const LabeledDataset& data);

/// sum_i |v_i| |i> (x) |v_i / |v_i|> / sqrt(sum_i |v_i|^2), index register
/// first. Zero vectors get zero amplitude. Throws DomainError if all are zero.
linalg::Vector weighted_superposition(std::span<const Eigen::VectorXd> vectors);

/// Unit-trace between-class operator (1/A) sum_c |mu_c - xbar|^2 |.><.|.
/// Throws DomainError when A = 0.
linalg::DensityOperator between_scatter(const ClassStatistics& stats);

/// Unit-trace within-class operator (1/B) sum_j |x_j - mu_{c_j}|^2 |.><.|.
/// Throws DomainError when B = 0.
linalg::DensityOperator within_scatter(const LabeledDataset& data, const ClassStatistics& stats);

/// Unit-trace class operator (1/A_c) sum_{j in c} |x_j - mu_c|^2 |.><.|.
/// Throws DomainError when A_c = 0 (e.g. a one-sample class).
linalg::DensityOperator class_covariance_operator(const LabeledDataset& data,
                                                  const ClassStatistics& stats, int c);

/// Unnormalized scatter matrices sum_c (mu_c - xbar)(mu_c - xbar)^T and
/// sum_j (x_j - mu_{c_j})(x_j - mu_{c_j})^T. A * between_scatter and
/// B * within_scatter reproduce them.
Eigen::MatrixXd classical_between_scatter(const ClassStatistics& stats);
Eigen::MatrixXd classical_within_scatter(const LabeledDataset& data, const ClassStatistics& stats);

}  // namespace qdasim::oracle
