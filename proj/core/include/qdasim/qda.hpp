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

// Gaussian discriminant classification. Each class keeps a unit-trace
// covariance operator plus the scalar needed to restore the statistical
// covariance, its mean, its prior and Sigma_c^-1 mu_c as a unit direction
// with a recorded norm. Discriminants are overlaps between that direction
// and x - mu_c / 2, estimated by a Hadamard test and rescaled by the norms.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qdasim/chain.hpp"
#include "qdasim/dataset.hpp"
#include "qdasim/linalg.hpp"

namespace qdasim::qda {

enum class Path { quantum, classical };

/// Inverse applied to the mean: unit direction and |Sigma_c^-1 mu_c|.
struct InvertedMean {
  Eigen::VectorXd direction;
  double norm = 0.0;
  double success = 1.0;      ///< stage success probability (quantum path)
  std::int64_t copies = 0;   ///< covariance copies consumed (quantum path)
};

struct ClassModel {
  linalg::DensityOperator covariance;  ///< unit trace
  double scale = 0.0;                  ///< scale * covariance = Sigma_c
  Eigen::VectorXd mean;
  double mean_norm = 0.0;
  double prior = 0.0;
  InvertedMean classical;
  InvertedMean quantum;
};

struct ClassifierModel {
  std::vector<ClassModel> classes;
  double kappa_eff = 100.0;
  int t = 8;
  bool shared_covariance = false;

  int class_count() const { return static_cast<int>(classes.size()); }
  Eigen::Index dimension() const { return classes.empty() ? 0 : classes.front().mean.size(); }
  const ClassModel& at(int c) const;  ///< 1-based
};

struct FitOptions {
  double kappa_eff = 100.0;
  int t = 8;
  chain::StageOptions stage;
};

/// Per-class covariances Sigma_c = A_c / (M_c - 1) * (unit-trace operator).
/// Throws std::invalid_argument naming any class with M_c < 2.
ClassifierModel fit(const LabeledDataset& data, const FitOptions& options = {});

/// Shared pooled covariance S_W / (M - k) for every class.
ClassifierModel fit_lda(const LabeledDataset& data, const FitOptions& options = {});

/// Model from explicit statistical covariances, means and priors.
ClassifierModel model_from_parts(const std::vector<Eigen::VectorXd>& means,
                                 const std::vector<Eigen::MatrixXd>& covariances,
                                 const std::vector<double>& priors, const FitOptions& options = {});

/// Sigma_c^-1 mu_c for class c (1-based). The quantum path runs one chain
/// stage with f = inverse on |mu_c><mu_c| and reads off the dominant
/// eigenvector; its norm is the classical one. Throws DomainError when mu_c
/// has no weight on the kept spectrum.
InvertedMean invert_apply(const ClassModel& cls, Path path, int t, double kappa_eff,
                          const chain::StageOptions& stage = {});

enum class PriorTerm { log_prior, literal_prior };

struct DiscriminantOptions {
  Path path = Path::quantum;
  std::int64_t shots = 8192;
  std::uint64_t seed = 1;
  PriorTerm prior = PriorTerm::log_prior;
};

struct DiscriminantValue {
  double value = 0.0;
  double standard_error = 0.0;
  std::int64_t shots = 0;
};

/// (x - mu_c / 2)^T Sigma_c^-1 mu_c + log pi_c. The classical path is exact;
/// the quantum path estimates the overlap with `shots` Hadamard-test shots.
DiscriminantValue discriminant(const ClassifierModel& model, const Eigen::VectorXd& x, int c,
                               const DiscriminantOptions& options = {});

struct DiscriminantResult {
  std::vector<double> values;
  int chosen = 0;          ///< 1-based; lowest index among the maxima
  double margin = 0.0;     ///< best minus runner-up
  std::int64_t shots = 0;
};

/// Argmax over `values` with lowest-index tie-break.
DiscriminantResult decide(std::vector<double> values);

DiscriminantResult classify(const ClassifierModel& model, const Eigen::VectorXd& x,
                            const DiscriminantOptions& options = {});

/// classify on a model whose classes share one covariance (fit_lda).
DiscriminantResult lda_classify(const ClassifierModel& lda_model, const Eigen::VectorXd& x,
                                const DiscriminantOptions& options = {});

/// Decisions for every row; sample j uses a seed derived from (seed, j).
std::vector<DiscriminantResult> classify_all(const ClassifierModel& model, const Eigen::MatrixXd& x,
                                             const DiscriminantOptions& options = {});

/// Fraction of equal entries.
double agreement(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace qdasim::qda
