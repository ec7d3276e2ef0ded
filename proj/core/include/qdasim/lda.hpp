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

// Linear discriminant analysis: the exact spectral oracle, the simulated
// pipeline (scatter operators -> chain product S_B^1/2 S_W^-1 S_B^1/2 ->
// phase estimation and sampling -> S_W^-1 S_B^1/2 back-transform), the Fisher
// criterion, projection, a polynomial feature map and PCA for comparison.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qdasim/chain.hpp"
#include "qdasim/dataset.hpp"
#include "qdasim/linalg.hpp"

namespace qdasim::lda {

struct ProjectionBasis {
  int p = 0;
  std::vector<Eigen::VectorXd> directions;     ///< w_r, unit norm
  std::vector<linalg::Vector> intermediate;    ///< v_r, orthonormal
  std::vector<double> eigenvalue_estimates;    ///< of the unit-trace chain product

  // Simulated path only.
  std::vector<double> sample_frequencies;
  std::vector<double> chain_success_probabilities;
  std::vector<double> back_transform_success;
  std::vector<std::int64_t> copies_used;
  std::int64_t draws = 0;

  /// N x p matrix with w_r as columns.
  Eigen::MatrixXd matrix() const;
};

/// Unnormalized between- and within-class scatter matrices.
struct ScatterPair {
  Eigen::MatrixXd between;
  Eigen::MatrixXd within;
};

ScatterPair scatter_matrices(const LabeledDataset& data);

/// Top-p eigenvectors v_r of S_B^1/2 S_W^-1 S_B^1/2 (unit-trace operators,
/// kappa filtering) and w_r = S_W^-1 S_B^1/2 v_r. Throws DomainError when p exceeds
/// the number of kept eigenvalues.
ProjectionBasis classical_lda_oracle(const LabeledDataset& data, int p, double kappa_eff);

struct QuantumLdaOptions {
  double epsilon = 0.1;
  int t = 8;
  std::uint64_t seed = 1;
  std::int64_t draws = 0;  ///< 0 selects max(4096, 64 * 2^t)
  chain::StageOptions stage;
};

std::int64_t default_draws(int t);

/// Simulated pipeline. Throws DomainError when fewer than p eigenpairs rise
/// above the sampling noise floor or a v_r falls outside the support of S_B.
ProjectionBasis quantum_lda(const LabeledDataset& data, int p, double kappa_eff,
                            const QuantumLdaOptions& options = {});

/// w^T S_B w / w^T S_W w for one direction; Tr(W^T S_B W) / Tr(W^T S_W W)
/// for several. Throws DomainError when the denominator is below 1e-14.
double fisher_criterion(const ScatterPair& scatter, const Eigen::MatrixXd& w);
double fisher_criterion(const LabeledDataset& data, const ProjectionBasis& basis);

/// Rows x_j^T w_r / |w_r|, labels kept.
LabeledDataset project(const LabeledDataset& data, const ProjectionBasis& basis);

/// All monomials of total degree 1..d (d in {1, 2, 3}), graded then
/// lexicographic. Throws std::invalid_argument above 256 output features.
LabeledDataset feature_map(const LabeledDataset& data, int degree);

/// Top-p principal directions of the sample covariance.
ProjectionBasis pca(const LabeledDataset& data, int p);

}  // namespace qdasim::lda
