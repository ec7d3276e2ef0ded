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

#include "qdasim/error.hpp"
#include "qdasim/qram_oracle.hpp"
#include "support/generators.hpp"

namespace qdasim::oracle {
namespace {

using linalg::Complex;
using linalg::Matrix;
using testing::Gen;
using testing::max_abs;

LabeledDataset rows(std::initializer_list<std::initializer_list<double>> xs, std::vector<int> labels, int k) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xs.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& x : xs) {
    Eigen::Index c = 0;
    for (double v : x) m(r, c++) = v;
    ++r;
  }
  return LabeledDataset(m, std::move(labels), k);
}

Matrix e_proj(int n, int i) {
  Matrix m = Matrix::Zero(n, n);
  m(i, i) = 1.0;
  return m;
}

TEST(ClassStatistics, OneClassSymmetricPair) {
  const auto s = class_statistics(rows({{1, 0}, {-1, 0}}, {1, 1}, 1));
  EXPECT_LT(s.class_means[0].norm(), 1e-15);
  EXPECT_LT(s.global_mean.norm(), 1e-15);
  EXPECT_DOUBLE_EQ(s.norm_between, 0.0);
  EXPECT_DOUBLE_EQ(s.norm_within, 2.0);
}

TEST(ClassStatistics, OneSamplePerClass) {
  const auto s = class_statistics(rows({{1, 0}, {-1, 0}}, {1, 2}, 2));
  EXPECT_LT(s.global_mean.norm(), 1e-15);
  EXPECT_DOUBLE_EQ(s.norm_between, 2.0);
  EXPECT_DOUBLE_EQ(s.norm_within, 0.0);
}

TEST(ClassStatistics, IdenticalSamplesAreDegenerate) {
  const auto s = class_statistics(rows({{2, 3}, {2, 3}, {2, 3}, {2, 3}}, {1, 2, 1, 2}, 2));
  EXPECT_DOUBLE_EQ(s.norm_between, 0.0);
  EXPECT_DOUBLE_EQ(s.norm_within, 0.0);
  EXPECT_THROW(between_scatter(s), DomainError);
}

TEST(ClassStatistics, CountsSumToM) {
  Gen g(4);
  const auto data = g.dataset(3, 4, 7);
  const auto s = class_statistics(data);
  int total = 0;
  for (int m : s.class_counts) total += m;
  EXPECT_EQ(total, data.size());
}

TEST(BetweenScatter, OppositeMeansGiveOneRay) {
  const auto s = class_statistics(rows({{1, 0}, {-1, 0}}, {1, 2}, 2));
  EXPECT_LT(max_abs(between_scatter(s).matrix() - e_proj(2, 0)), 1e-12);
}

TEST(BetweenScatter, OrthogonalMeansEqualWeights) {
  // Means +-e1 and +-e2 keep xbar = 0 with equal norms on two orthogonal rays.
  const auto data = rows({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {1, 2, 3, 4}, 4);
  const auto sb = between_scatter(class_statistics(data));
  EXPECT_LT(max_abs(sb.matrix() - Matrix::Identity(2, 2) / 2.0), 1e-12);
}

TEST(BetweenScatter, SingleDisplacedMeanIsProjector) {
  const auto data = rows({{0, 0}, {0, 0}, {0, 0}, {3, 4}}, {1, 1, 1, 2}, 2);
  const auto s = class_statistics(data);
  const Eigen::VectorXd d = (s.class_means[1] - s.global_mean).normalized();
  // Both class deviations lie on the same ray.
  EXPECT_LT(max_abs(between_scatter(s).matrix() - linalg::projector(d.cast<Complex>())), 1e-12);
}

TEST(WithinScatter, DeviationsOnOneRay) {
  const auto data = rows({{2, 1}, {2, -1}}, {1, 1}, 1);
  EXPECT_LT(max_abs(within_scatter(data, class_statistics(data)).matrix() - e_proj(2, 1)), 1e-12);
}

TEST(WithinScatter, IsotropicDeviations) {
  const auto data = rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 2, 2}, 2);
  EXPECT_LT(max_abs(within_scatter(data, class_statistics(data)).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-12);
}

TEST(WithinScatter, ZeroDeviationSamplesSkipped) {
  const auto a = rows({{0, 1}, {0, -1}, {0, 0}}, {1, 1, 1}, 1);
  EXPECT_LT(max_abs(within_scatter(a, class_statistics(a)).matrix() - e_proj(2, 1)), 1e-12);
  const auto b = rows({{1, 1}, {1, 1}}, {1, 1}, 1);
  EXPECT_THROW(within_scatter(b, class_statistics(b)), DomainError);
}

TEST(ClassCovariance, PairOnOneRay) {
  const auto data = rows({{3, 0}, {1, 0}, {9, 9}, {9, 8}}, {1, 1, 2, 2}, 2);
  EXPECT_LT(max_abs(class_covariance_operator(data, class_statistics(data), 1).matrix() - e_proj(2, 0)), 1e-12);
}

TEST(ClassCovariance, SquaredNormWeights) {
  // Deviations e1 (norm 1) and 2 e2 (norm 2) around the mean, plus a
  // balancing sample so the mean is unchanged.
  const auto data = rows({{1, 0}, {0, 2}, {-1, -2}}, {1, 1, 1}, 1);
  const auto s = class_statistics(data);
  ASSERT_LT(s.class_means[0].norm(), 1e-15);
  const Matrix got = class_covariance_operator(data, s, 1).matrix();
  // Classical reference: (1/A_c) sum_j d_j d_j^T.
  Matrix expected = Matrix::Zero(2, 2);
  for (Eigen::Index j = 0; j < 3; ++j) {
    const Eigen::VectorXd d = data.sample(j);
    expected += (d * d.transpose()).cast<Complex>();
  }
  expected /= s.per_class_norm[0];
  EXPECT_LT(max_abs(got - expected), 1e-12);

  const auto two = rows({{1, 0}, {-1, 0}, {0, 2}, {0, -2}}, {1, 1, 1, 1}, 1);
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = 0.2;
  w(1, 1) = 0.8;
  EXPECT_LT(max_abs(class_covariance_operator(two, class_statistics(two), 1).matrix() - w), 1e-12);
}

TEST(ClassCovariance, OneSampleClassRejected) {
  const auto data = rows({{0, 0}, {1, 1}, {2, 0}}, {1, 1, 2}, 2);
  EXPECT_THROW(class_covariance_operator(data, class_statistics(data), 2), DomainError);
}

TEST(WeightedSuperposition, SingleVector) {
  std::vector<Eigen::VectorXd> v{Eigen::Vector2d(3, 4)};
  const auto psi = weighted_superposition(v);
  ASSERT_EQ(psi.size(), 2);
  EXPECT_NEAR(psi(0).real(), 0.6, 1e-15);
  EXPECT_NEAR(psi(1).real(), 0.8, 1e-15);
}

TEST(WeightedSuperposition, EqualNormsSameKet) {
  std::vector<Eigen::VectorXd> v{Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0)};
  const auto psi = weighted_superposition(v);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(psi(0).real(), h, 1e-15);
  EXPECT_NEAR(psi(1).real(), 0.0, 1e-15);
  EXPECT_NEAR(psi(2).real(), h, 1e-15);
  EXPECT_NEAR(psi(3).real(), 0.0, 1e-15);
}

TEST(WeightedSuperposition, NormWeightedIndexAmplitudes) {
  std::vector<Eigen::VectorXd> v{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 2)};
  const auto psi = weighted_superposition(v);
  EXPECT_NEAR(psi(0).real(), 1.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(psi(3).real(), 2.0 / std::sqrt(5.0), 1e-15);
  std::vector<Eigen::VectorXd> zeros{Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()};
  EXPECT_THROW(weighted_superposition(zeros), DomainError);
}

TEST(OracleProperties, ScattersAreDensityOperators) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Gen g(seed);
    const auto data = g.dataset(g.integer(2, 5), g.integer(2, 4), g.integer(2, 6));
    const auto s = class_statistics(data);
    for (const auto& rho : {between_scatter(s), within_scatter(data, s)}) {
      EXPECT_NEAR(rho.base().trace(), 1.0, 1e-9);
      EXPECT_GE(linalg::eig_hermitian(rho.base()).eigenvalues.minCoeff(), -1e-10);
    }
  }
}

TEST(OracleProperties, SuperpositionTraceMatchesDirectBetweenScatter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(200 + seed);
    const auto data = g.dataset(4, 3, 5);
    const auto s = class_statistics(data);
    std::vector<Eigen::VectorXd> diffs;
    for (const auto& mu : s.class_means) diffs.push_back(mu - s.global_mean);
    const auto psi = weighted_superposition(diffs);
    const Matrix reduced = linalg::partial_trace(linalg::projector(psi), 3, 4, linalg::Subsystem::first);
    const Matrix direct = classical_between_scatter(s).cast<Complex>() / s.norm_between;
    EXPECT_LT(max_abs(reduced - direct), 1e-10);
    EXPECT_LT(max_abs(between_scatter(s).matrix() - direct), 1e-10);
  }
}

TEST(OracleProperties, BalancedBetweenScatterRankAtMostKMinusOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(300 + seed);
    const int k = g.integer(2, 4);
    const auto data = g.dataset(6, k, 5);
    const auto ev = linalg::eig_hermitian(between_scatter(class_statistics(data)).base()).eigenvalues;
    for (Eigen::Index i = k - 1; i < ev.size(); ++i) EXPECT_LT(std::abs(ev(i)), 1e-9);
  }
}

TEST(OracleProperties, ScaledWithinScatterIsClassicalScatter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(400 + seed);
    const auto data = g.dataset(4, 3, 6);
    const auto s = class_statistics(data);
    Eigen::MatrixXd classical = Eigen::MatrixXd::Zero(4, 4);
    for (Eigen::Index j = 0; j < data.size(); ++j) {
      const Eigen::VectorXd d = data.sample(j) - s.class_means[static_cast<std::size_t>(data.label(j) - 1)];
      classical += d * d.transpose();
    }
    EXPECT_LT((s.norm_within * within_scatter(data, s).matrix().real() - classical).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((classical_within_scatter(data, s) - classical).cwiseAbs().maxCoeff(), 1e-9);
  }
}

}  // namespace
}  // namespace qdasim::oracle
