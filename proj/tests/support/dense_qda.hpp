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

// Dense Gaussian discriminant written from the textbook formula, sharing no
// code with the library: sample means, unbiased covariances, LDLT solves.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qdasim/dataset.hpp"

namespace qdasim::testing {

inline std::vector<int> dense_qda(const LabeledDataset& train, const Eigen::MatrixXd& test) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const int k = train.class_count();
  std::vector<VectorXd> weights(k);
  std::vector<double> offsets(k);
  for (int c = 0; c < k; ++c) {
    const MatrixXd x = train.class_samples(c + 1);
    const VectorXd mu = x.colwise().mean().transpose();
    const MatrixXd centred = x.rowwise() - mu.transpose();
    const MatrixXd sigma = centred.transpose() * centred / static_cast<double>(x.rows() - 1);
    weights[c] = sigma.ldlt().solve(mu);
    offsets[c] = -0.5 * mu.dot(weights[c]) +
                 std::log(static_cast<double>(x.rows()) / static_cast<double>(train.size()));
  }
  std::vector<int> out;
  for (Eigen::Index j = 0; j < test.rows(); ++j) {
    const VectorXd x = test.row(j).transpose();
    int best = 1;
    double best_value = x.dot(weights[0]) + offsets[0];
    for (int c = 1; c < k; ++c) {
      const double d = x.dot(weights[c]) + offsets[c];
      if (d > best_value) {
        best_value = d;
        best = c + 1;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace qdasim::testing
