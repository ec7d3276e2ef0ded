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

#include "qdasim/qda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qdasim/error.hpp"
#include "qdasim/qram_oracle.hpp"
#include "qdasim/qsim.hpp"

namespace qdasim::qda {

using linalg::DensityOperator;
using linalg::SpectralFunction;

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ClassModel make_class(DensityOperator covariance, double scale, Eigen::VectorXd mean, double prior,
                      const FitOptions& options) {
  ClassModel cls{.covariance = std::move(covariance),
                 .scale = scale,
                 .mean = std::move(mean),
                 .mean_norm = 0.0,
                 .prior = prior,
                 .classical = {},
                 .quantum = {}};
  cls.mean_norm = cls.mean.norm();
  cls.classical = invert_apply(cls, Path::classical, options.t, options.kappa_eff, options.stage);
  cls.quantum = invert_apply(cls, Path::quantum, options.t, options.kappa_eff, options.stage);
  return cls;
}

void require_two_per_class(const LabeledDataset& data) {
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 2) {
      throw std::invalid_argument("class '" + data.class_names()[c] + "' has " + std::to_string(counts[c]) +
                                  " sample(s); covariance estimation needs at least 2");
    }
  }
}

}  // namespace

const ClassModel& ClassifierModel::at(int c) const {
  if (c < 1 || c > class_count()) {
    throw std::invalid_argument("class index " + std::to_string(c) + " outside 1.." + std::to_string(class_count()));
  }
  return classes[static_cast<std::size_t>(c - 1)];
}

ClassifierModel fit(const LabeledDataset& data, const FitOptions& options) {
  require_two_per_class(data);
  const auto stats = oracle::class_statistics(data);
  const double m = static_cast<double>(data.size());
  ClassifierModel model{.classes = {}, .kappa_eff = options.kappa_eff, .t = options.t, .shared_covariance = false};
  for (int c = 1; c <= data.class_count(); ++c) {
    const std::size_t i = static_cast<std::size_t>(c - 1);
    const int mc = stats.class_counts[i];
    model.classes.push_back(make_class(oracle::class_covariance_operator(data, stats, c),
                                       stats.per_class_norm[i] / (mc - 1), stats.class_means[i], mc / m,
                                       options));
  }
  return model;
}

ClassifierModel fit_lda(const LabeledDataset& data, const FitOptions& options) {
  require_two_per_class(data);
  const auto stats = oracle::class_statistics(data);
  const auto m = data.size();
  const DensityOperator pooled = oracle::within_scatter(data, stats);
  const double scale = stats.norm_within / static_cast<double>(m - data.class_count());
  ClassifierModel model{.classes = {}, .kappa_eff = options.kappa_eff, .t = options.t, .shared_covariance = true};
  for (int c = 1; c <= data.class_count(); ++c) {
    const std::size_t i = static_cast<std::size_t>(c - 1);
    model.classes.push_back(make_class(pooled, scale, stats.class_means[i],
                                       stats.class_counts[i] / static_cast<double>(m), options));
  }
  return model;
}

ClassifierModel model_from_parts(const std::vector<Eigen::VectorXd>& means,
                                 const std::vector<Eigen::MatrixXd>& covariances,
                                 const std::vector<double>& priors, const FitOptions& options) {
  if (means.empty() || means.size() != covariances.size() || means.size() != priors.size()) {
    throw std::invalid_argument("model_from_parts: need one mean, covariance and prior per class");
  }
  double total = 0.0;
  for (double p : priors) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("model_from_parts: priors must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("model_from_parts: priors must sum to 1");
  ClassifierModel model{.classes = {}, .kappa_eff = options.kappa_eff, .t = options.t, .shared_covariance = false};
  for (std::size_t c = 0; c < means.size(); ++c) {
    const double tr = covariances[c].trace();
    if (!(tr > 0.0)) throw DomainError("model_from_parts: covariance " + std::to_string(c + 1) + " has zero trace");
    model.classes.push_back(make_class(DensityOperator::normalized(covariances[c].cast<linalg::Complex>()), tr,
                                       means[c], priors[c], options));
  }
  model.shared_covariance = std::all_of(covariances.begin(), covariances.end(), [&](const Eigen::MatrixXd& s) {
    return (s - covariances.front()).cwiseAbs().maxCoeff() <= 1e-12 * covariances.front().cwiseAbs().maxCoeff();
  });
  return model;
}

InvertedMean invert_apply(const ClassModel& cls, Path path, int t, double kappa_eff,
                          const chain::StageOptions& stage) {
  const auto n = cls.mean.size();
  if (cls.mean_norm == 0.0) return {.direction = Eigen::VectorXd::Zero(n), .norm = 0.0, .success = 1.0, .copies = 0};

  const auto spectrum = linalg::filtered_spectrum(cls.covariance.base(), kappa_eff);
  const linalg::Matrix inv_unit = linalg::matrix_function(spectrum, SpectralFunction::inverse()).matrix();
  const Eigen::VectorXd classical = (inv_unit * cls.mean.cast<linalg::Complex>()).real() / cls.scale;
  const double norm = classical.norm();
  if (!(norm > 1e-14 * cls.mean_norm / (cls.scale * spectrum.lambda_max))) {
    throw DomainError("class mean has no weight on the kept covariance spectrum");
  }
  if (path == Path::classical) return {.direction = classical / norm, .norm = norm, .success = 1.0, .copies = 0};

  const linalg::Vector mu = cls.mean.cast<linalg::Complex>() / cls.mean_norm;
  const auto result = chain::chain_stage(DensityOperator::pure(mu), cls.covariance, SpectralFunction::inverse(), t,
                                         kappa_eff, std::nullopt, 0.1, stage);
  const linalg::Vector v = linalg::principal_vector(result.output.matrix(), &mu);
  Eigen::VectorXd direction = v.real();
  direction /= direction.norm();
  return {.direction = direction,
          .norm = norm,
          .success = result.success,
          .copies = chain::copies_required(result.condition_number, 0.1)};
}

DiscriminantValue discriminant(const ClassifierModel& model, const Eigen::VectorXd& x, int c,
                               const DiscriminantOptions& options) {
  const ClassModel& cls = model.at(c);
  if (x.size() != cls.mean.size()) {
    throw std::invalid_argument("discriminant: sample has dimension " + std::to_string(x.size()) + ", model " +
                                std::to_string(cls.mean.size()));
  }
  if (!x.allFinite()) throw std::invalid_argument("discriminant: sample has non-finite entries");
  const double prior = options.prior == PriorTerm::log_prior ? std::log(cls.prior) : cls.prior;

  const Eigen::VectorXd shifted = x - 0.5 * cls.mean;
  const double shifted_norm = shifted.norm();
  if (shifted_norm == 0.0 || cls.classical.norm == 0.0) return {.value = prior, .standard_error = 0.0, .shots = 0};
  const double scale = shifted_norm * cls.classical.norm;

  if (options.path == Path::classical) {
    return {.value = scale * cls.classical.direction.dot(shifted / shifted_norm) + prior, .standard_error = 0.0,
            .shots = 0};
  }
  const auto shot = qsim::overlap_test_signed(cls.quantum.direction.cast<linalg::Complex>(),
                                              (shifted / shifted_norm).cast<linalg::Complex>(), options.shots,
                                              options.seed);
  return {.value = scale * shot.estimate + prior, .standard_error = scale * shot.standard_error, .shots = shot.shots};
}

DiscriminantResult decide(std::vector<double> values) {
  DiscriminantResult r{.values = std::move(values), .chosen = 0, .margin = 0.0, .shots = 0};
  if (r.values.empty()) throw std::invalid_argument("decide: no discriminant values");
  std::size_t best = 0;
  for (std::size_t c = 1; c < r.values.size(); ++c) {
    if (r.values[c] > r.values[best]) best = c;
  }
  r.chosen = static_cast<int>(best) + 1;
  double runner_up = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < r.values.size(); ++c) {
    if (c != best) runner_up = std::max(runner_up, r.values[c]);
  }
  r.margin = r.values.size() > 1 ? r.values[best] - runner_up : 0.0;
  return r;
}

DiscriminantResult classify(const ClassifierModel& model, const Eigen::VectorXd& x,
                            const DiscriminantOptions& options) {
  std::vector<double> values;
  std::int64_t shots = 0;
  for (int c = 1; c <= model.class_count(); ++c) {
    DiscriminantOptions per_class = options;
    per_class.seed = derive_seed(options.seed, static_cast<std::uint64_t>(c));
    const auto d = discriminant(model, x, c, per_class);
    values.push_back(d.value);
    shots += d.shots;
  }
  auto result = decide(std::move(values));
  result.shots = shots;
  return result;
}

DiscriminantResult lda_classify(const ClassifierModel& lda_model, const Eigen::VectorXd& x,
                                const DiscriminantOptions& options) {
  if (!lda_model.shared_covariance) throw std::invalid_argument("lda_classify: classes do not share one covariance");
  return classify(lda_model, x, options);
}

std::vector<DiscriminantResult> classify_all(const ClassifierModel& model, const Eigen::MatrixXd& x,
                                             const DiscriminantOptions& options) {
  std::vector<DiscriminantResult> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    DiscriminantOptions per_sample = options;
    per_sample.seed = derive_seed(options.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(j));
    out.push_back(classify(model, x.row(j).transpose(), per_sample));
  }
  return out;
}

double agreement(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("agreement: sizes differ or are zero");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

}  // namespace qdasim::qda
