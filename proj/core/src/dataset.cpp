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

#include "qdasim/dataset.hpp"

#include <sstream>
#include <stdexcept>

namespace qdasim {

LabeledDataset::LabeledDataset(Eigen::MatrixXd samples, std::vector<int> labels, int class_count,
                               std::vector<std::string> feature_names,
                               std::vector<std::string> class_names)
    : samples_(std::move(samples)),
      labels_(std::move(labels)),
      class_count_(class_count),
      feature_names_(std::move(feature_names)),
      class_names_(std::move(class_names)) {
  if (samples_.rows() < 1 || samples_.cols() < 1) {
    throw std::invalid_argument("LabeledDataset: need at least one sample and one feature");
  }
  if (static_cast<Eigen::Index>(labels_.size()) != samples_.rows()) {
    throw std::invalid_argument("LabeledDataset: label count does not match sample count");
  }
  if (class_count_ < 1) {
    throw std::invalid_argument("LabeledDataset: class count must be positive");
  }
  if (!samples_.allFinite()) {
    throw std::invalid_argument("LabeledDataset: non-finite feature value");
  }
  std::vector<int> counts(static_cast<std::size_t>(class_count_), 0);
  for (int c : labels_) {
    if (c < 1 || c > class_count_) {
      std::ostringstream os;
      os << "LabeledDataset: label " << c << " outside 1.." << class_count_;
      throw std::invalid_argument(os.str());
    }
    ++counts[static_cast<std::size_t>(c - 1)];
  }
  for (int c = 1; c <= class_count_; ++c) {
    if (counts[static_cast<std::size_t>(c - 1)] == 0) {
      std::ostringstream os;
      os << "LabeledDataset: class " << c << " has no samples";
      throw std::invalid_argument(os.str());
    }
  }
  if (feature_names_.empty()) {
    for (Eigen::Index i = 0; i < samples_.cols(); ++i) feature_names_.push_back("x" + std::to_string(i + 1));
  } else if (static_cast<Eigen::Index>(feature_names_.size()) != samples_.cols()) {
    throw std::invalid_argument("LabeledDataset: feature name count does not match dimension");
  }
  if (class_names_.empty()) {
    for (int c = 1; c <= class_count_; ++c) class_names_.push_back(std::to_string(c));
  } else if (static_cast<int>(class_names_.size()) != class_count_) {
    throw std::invalid_argument("LabeledDataset: class name count does not match class count");
  }
}

std::vector<int> LabeledDataset::class_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(class_count_), 0);
  for (int c : labels_) ++counts[static_cast<std::size_t>(c - 1)];
  return counts;
}

Eigen::MatrixXd LabeledDataset::class_samples(int c) const {
  const auto counts = class_counts();
  Eigen::MatrixXd out(counts.at(static_cast<std::size_t>(c - 1)), samples_.cols());
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < samples_.rows(); ++j) {
    if (labels_[static_cast<std::size_t>(j)] == c) out.row(row++) = samples_.row(j);
  }
  return out;
}

}  // namespace qdasim
