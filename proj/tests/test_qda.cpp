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

#include <gtest/gtest.h>

#include <cmath>

#include "qdasim/data_io.hpp"
#include "qdasim/error.hpp"
#include "qdasim/qda.hpp"
#include "support/dense_qda.hpp"
#include "support/generators.hpp"

namespace qdasim::qda {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::dense_qda;
using testing::Gen;

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

DiscriminantOptions classical_opts() {
  DiscriminantOptions o;
  o.path = Path::classical;
  return o;
}

std::vector<int> chosen(const std::vector<DiscriminantResult>& results) {
  std::vector<int> out;
  for (const auto& r : results) out.push_back(r.chosen);
  return out;
}

LabeledDataset held_out(const std::string& preset, std::uint64_t seed, int per_class) {
  io::PresetOptions opts;
  opts.per_class = per_class;
  return io::synthetic(preset, seed, opts);
}

// --- fit -------------------------------------------------------------------

TEST(QdaFit, BalancedPriors) {
  const auto model = fit(io::synthetic("two-gauss", 1));
  EXPECT_DOUBLE_EQ(model.at(1).prior, 0.5);
  EXPECT_DOUBLE_EQ(model.at(2).prior, 0.5);
  EXPECT_THROW(model.at(3), std::invalid_argument);
}

TEST(QdaFit, PairAroundMeanGivesRankOneCovariance) {
  MatrixXd x(4, 2);
  x << 2.0, 1.0, 0.0, 1.0, -3.0, 0.0, -3.0, 2.0;
  const auto model = fit(LabeledDataset(x, {1, 1, 2, 2}, 2));
  const auto& c1 = model.at(1);
  EXPECT_NEAR(c1.scale, 2.0, 1e-12);
  EXPECT_NEAR(std::abs(c1.covariance.matrix()(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(testing::max_abs(c1.covariance.matrix()) - 1.0, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c1.covariance.matrix()(1, 1)), 0.0, 1e-12);
}

TEST(QdaFit, ScaledOperatorIsSampleCovariance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Gen g(seed);
    const auto data = g.dataset(3, 2, 5 + static_cast<int>(seed % 7));
    const auto model = fit(data);
    for (int c = 1; c <= 2; ++c) {
      const MatrixXd x = data.class_samples(c);
      const MatrixXd centred = x.rowwise() - x.colwise().mean();
      const MatrixXd sigma = centred.transpose() * centred / static_cast<double>(x.rows() - 1);
      const MatrixXd ours = model.at(c).scale * model.at(c).covariance.matrix().real();
      EXPECT_LT((ours - sigma).cwiseAbs().maxCoeff(), 1e-9);
    }
    double total = 0.0;
    for (const auto& cls : model.classes) {
      EXPECT_TRUE(std::isfinite(std::log(cls.prior)));
      EXPECT_GE(cls.classical.norm, 0.0);
      total += cls.prior;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(QdaFit, RejectsSingletonClass) {
  MatrixXd x(3, 2);
  x << 0.0, 0.0, 1.0, 1.0, 5.0, 5.0;
  const LabeledDataset data(x, {1, 1, 2}, 2, {}, {"left", "right"});
  try {
    fit(data);
    FAIL() << "singleton class accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("right"), std::string::npos);
  }
  EXPECT_THROW(fit_lda(data), std::invalid_argument);
}

TEST(QdaFit, ModelFromPartsChecksPriors) {
  const std::vector<VectorXd> means{vec({1, 0}), vec({-1, 0})};
  const std::vector<MatrixXd> covs{MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2)};
  EXPECT_THROW(model_from_parts(means, covs, {0.5, 0.6}), std::invalid_argument);
  EXPECT_TRUE(model_from_parts(means, covs, {0.5, 0.5}).shared_covariance);
}

// --- inversion -------------------------------------------------------------

TEST(QdaInvert, IsotropicCovarianceKeepsDirection) {
  const auto model = model_from_parts({vec({3, 4, 0})}, {2.0 * MatrixXd::Identity(3, 3)}, {1.0});
  const auto& cls = model.at(1);
  const VectorXd expected = vec({0.6, 0.8, 0.0});
  EXPECT_LT((cls.classical.direction - expected).norm(), 1e-12);
  EXPECT_NEAR(cls.classical.norm, 2.5, 1e-12);
  EXPECT_GT(std::abs(cls.quantum.direction.dot(expected)), 1.0 - 1e-9);
}

TEST(QdaInvert, DiagonalByHand) {
  MatrixXd sigma = MatrixXd::Zero(2, 2);
  sigma.diagonal() << 1.0, 0.5;
  const auto model = model_from_parts({vec({1, 1}) / std::sqrt(2.0)}, {sigma}, {1.0});
  const auto& cls = model.at(1);
  EXPECT_NEAR(cls.scale, 1.5, 1e-15);
  const VectorXd expected = vec({1, 2}) / std::sqrt(5.0);
  EXPECT_LT((cls.classical.direction - expected).norm(), 1e-12);
  EXPECT_NEAR(cls.classical.norm, std::sqrt(5.0 / 2.0), 1e-12);
  EXPECT_GT(cls.quantum.direction.dot(expected), 0.999);
}

TEST(QdaInvert, QuantumPathTracksClassical) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(100 + seed);
    const auto n = 2 + static_cast<Eigen::Index>(seed % 3);
    const MatrixXd sigma = g.conditioned(n, 8.0).matrix().real() * 3.0;
    const auto model = model_from_parts({g.real_vector(n)}, {sigma}, {1.0});
    const auto& cls = model.at(1);
    EXPECT_GE(cls.quantum.direction.dot(cls.classical.direction), 0.99) << "seed " << seed;
    EXPECT_EQ(cls.quantum.norm, cls.classical.norm);
    EXPECT_GT(cls.quantum.copies, 0);
  }
}

TEST(QdaInvert, FilteredMeanRejected) {
  MatrixXd sigma = MatrixXd::Zero(2, 2);
  sigma(0, 0) = 1.0;
  EXPECT_THROW(model_from_parts({vec({0, 1})}, {sigma}, {1.0}), DomainError);
}

// --- discriminant ----------------------------------------------------------

TEST(QdaDiscriminant, ClosedFormIdentityCovariance) {
  const VectorXd m1 = vec({1.0, 2.0});
  const VectorXd m2 = vec({-0.5, 0.25});
  const auto model = model_from_parts({m1, m2}, {MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2)}, {0.5, 0.5});
  // Unit-trace operator I/2 with scale 2 reproduces Sigma = I.
  EXPECT_NEAR(model.at(1).scale, 2.0, 1e-15);
  const VectorXd x = vec({0.3, -1.1});
  for (int c = 1; c <= 2; ++c) {
    const VectorXd& mu = c == 1 ? m1 : m2;
    const double expected = x.dot(mu) - 0.5 * mu.squaredNorm() + std::log(0.5);
    EXPECT_NEAR(discriminant(model, x, c, classical_opts()).value, expected, 1e-12);
    EXPECT_NEAR(discriminant(model, mu, c, classical_opts()).value, 0.5 * mu.squaredNorm() + std::log(0.5), 1e-12);
  }
  // x = mu / 2 contributes no inner-product term.
  EXPECT_DOUBLE_EQ(discriminant(model, m1 / 2.0, 1).value, std::log(0.5));
  auto literal = classical_opts();
  literal.prior = PriorTerm::literal_prior;
  EXPECT_NEAR(discriminant(model, x, 1, literal).value - discriminant(model, x, 1, classical_opts()).value,
              0.5 - std::log(0.5), 1e-12);
}

TEST(QdaDiscriminant, ShotEstimateCoverage) {
  const auto model = model_from_parts({vec({1.0, 0.5, 0.0}), vec({-1.0, 0.0, 0.5})},
                                      {MatrixXd::Identity(3, 3), MatrixXd::Identity(3, 3)}, {0.5, 0.5});
  const VectorXd x = vec({0.2, 0.9, -0.4});
  const double exact = discriminant(model, x, 1, classical_opts()).value;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    DiscriminantOptions o;
    o.seed = seed;
    const auto d = discriminant(model, x, 1, o);
    EXPECT_EQ(d.shots, 8192);
    if (std::abs(d.value - exact) <= 3.0 * d.standard_error) ++inside;
  }
  EXPECT_GE(inside, 990);
}

TEST(QdaDiscriminant, DoublingShotsShrinksSpread) {
  const auto model = model_from_parts({vec({1.0, -0.5})}, {MatrixXd::Identity(2, 2)}, {1.0});
  const VectorXd x = vec({0.7, 0.4});
  const auto spread = [&](std::int64_t shots) {
    std::vector<double> v;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      DiscriminantOptions o;
      o.shots = shots;
      o.seed = 7000 + seed;
      v.push_back(discriminant(model, x, 1, o).value);
    }
    const VectorXd e = Eigen::Map<VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    return std::sqrt((e.array() - e.mean()).square().sum() / static_cast<double>(e.size() - 1));
  };
  const double ratio = spread(2048) / spread(4096);
  EXPECT_GE(ratio, 1.25);
  EXPECT_LE(ratio, 1.6);
}

// --- classification --------------------------------------------------------

TEST(QdaClassify, SymmetricClasses) {
  const auto model = model_from_parts({vec({1, 0}), vec({-1, 0})}, {MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2)},
                                      {0.5, 0.5});
  EXPECT_EQ(classify(model, vec({1, 0})).chosen, 1);
  EXPECT_EQ(classify(model, vec({-1, 0})).chosen, 2);
  const auto tie = classify(model, vec({0, 3}), classical_opts());
  EXPECT_EQ(tie.chosen, 1);
  EXPECT_EQ(tie.margin, 0.0);
  EXPECT_LT(classify(model, vec({0, 0})).margin, 0.05);
  const auto lda_tie = lda_classify(model, vec({0, 0}), classical_opts());
  EXPECT_EQ(lda_tie.chosen, 1);
  EXPECT_NEAR(lda_tie.margin, 0.0, 1e-12);
}

TEST(QdaClassify, DecideTieBreakAndShiftInvariance) {
  EXPECT_EQ(decide({1.0, 3.0, 3.0}).chosen, 2);
  EXPECT_DOUBLE_EQ(decide({1.0, 3.0, 2.5}).margin, 0.5);
  Gen g(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(4);
    for (double& x : v) x = g.normal();
    const int before = decide(v).chosen;
    const double shift = 100.0 * g.normal();
    for (double& x : v) x += shift;
    EXPECT_EQ(decide(v).chosen, before);
  }
}

TEST(QdaClassify, SharedIsotropicCovarianceIsNearestMean) {
  Gen g(22);
  std::vector<VectorXd> means;
  for (int c = 0; c < 3; ++c) means.push_back(2.0 * g.real_vector(3));
  const std::vector<MatrixXd> covs(3, MatrixXd::Identity(3, 3));
  const std::vector<double> priors{0.2, 0.3, 0.5};
  const auto model = model_from_parts(means, covs, priors);
  for (int trial = 0; trial < 100; ++trial) {
    const VectorXd x = 2.0 * g.real_vector(3);
    int best = 0;
    double best_score = 1e300;
    for (int c = 0; c < 3; ++c) {
      const double score = 0.5 * (x - means[c]).squaredNorm() - std::log(priors[c]);
      if (score < best_score) {
        best_score = score;
        best = c + 1;
      }
    }
    EXPECT_EQ(lda_classify(model, x, classical_opts()).chosen, best);
  }
}

TEST(QdaClassify, LdaRequiresSharedCovariance) {
  EXPECT_THROW(lda_classify(fit(io::synthetic("three-gauss", 1)), VectorXd::Zero(4)), std::invalid_argument);
}

TEST(QdaClassify, SharedCovarianceDataLdaMatchesQda) {
  const auto spec = io::random_gaussian_spec(4, 3, 300, 2.5, 3.0, true, 23);
  const auto train = io::generate(spec);
  auto test_spec = spec;
  test_spec.seed = 24;
  for (auto& m : test_spec.class_sizes) m = 67;
  const auto test = io::generate(test_spec);
  const auto qda_model = fit(train);
  const auto lda_model = fit_lda(train);
  EXPECT_TRUE(lda_model.shared_covariance);
  const auto a = chosen(classify_all(qda_model, test.samples(), classical_opts()));
  const auto b = chosen(classify_all(lda_model, test.samples(), classical_opts()));
  EXPECT_GE(agreement(a, b), 0.98);
}

TEST(QdaClassify, ClassicalPathMatchesDenseOracle) {
  for (const char* preset : {"two-gauss", "three-gauss", "adversarial"}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto train = io::synthetic(preset, seed);
      const auto test = held_out(preset, seed + 100, 100);
      const auto ours = chosen(classify_all(fit(train), test.samples(), classical_opts()));
      EXPECT_EQ(ours, dense_qda(train, test.samples())) << preset << " seed " << seed;
    }
  }
}

TEST(QdaClassify, QuantumPathAgreesWithOracle) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto train = io::synthetic("three-gauss", seed);
    const auto test = held_out("three-gauss", seed + 500, 67);
    DiscriminantOptions o;
    o.seed = seed;
    const auto results = classify_all(fit(train), test.samples(), o);
    EXPECT_GE(agreement(chosen(results), dense_qda(train, test.samples())), 0.95) << "seed " << seed;
    for (const auto& r : results) EXPECT_EQ(r.shots, 3 * 8192);
  }
}

TEST(QdaClassify, Deterministic) {
  const auto train = io::synthetic("three-gauss", 5);
  const auto model = fit(train);
  const MatrixXd x = held_out("three-gauss", 6, 10).samples();
  const auto a = classify_all(model, x);
  const auto b = classify_all(model, x);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a[j].values, b[j].values);
}

}  // namespace
}  // namespace qdasim::qda
