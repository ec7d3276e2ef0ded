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

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qdasim {

/// M labelled real feature vectors of dimension N. Row j of `samples` is x_j
/// and `labels[j]` is its class in 1..k. Every class is non-empty and every
/// entry is finite; the constructor enforces both.
class LabeledDataset {
 public:
  LabeledDataset(Eigen::MatrixXd samples, std::vector<int> labels, int class_count,
                 std::vector<std::string> feature_names = {},
                 std::vector<std::string> class_names = {});

  Eigen::Index dimension() const { return samples_.cols(); }
  Eigen::Index size() const { return samples_.rows(); }
  int class_count() const { return class_count_; }

  const Eigen::MatrixXd& samples() const { return samples_; }
  const std::vector<int>& labels() const { return labels_; }
  Eigen::VectorXd sample(Eigen::Index j) const { return samples_.row(j).transpose(); }
  int label(Eigen::Index j) const { return labels_[static_cast<std::size_t>(j)]; }

  /// Column names; defaults to x1..xN.
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  /// Original label strings in index order; defaults to "1".."k".
  const std::vector<std::string>& class_names() const { return class_names_; }

  std::vector<int> class_counts() const;
  /// Rows belonging to class c (1-based), in dataset order.
  Eigen::MatrixXd class_samples(int c) const;

 private:
  Eigen::MatrixXd samples_;
  std::vector<int> labels_;
  int class_count_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
};

}  // namespace qdasim
