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

#include <filesystem>
#include <sstream>

#include "qdasim/data_io.hpp"
#include "qdasim/error.hpp"
#include "support/generators.hpp"

namespace qdasim::io {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_csv(in, "data.csv");
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return {};
}

SyntheticSpec single_class(const MatrixXd& cov, int count, std::uint64_t seed) {
  return SyntheticSpec{{count, count}, {VectorXd::Zero(cov.rows()), VectorXd::Ones(cov.rows())}, {cov, cov}, seed};
}

// --- CSV -------------------------------------------------------------------

TEST(Csv, LabelsNumberedByFirstAppearance) {
  std::istringstream in("f1,f2,label\n1.5,2,a\n-3,4e-1,b\n0,0.25,a\n");
  const auto data = parse_csv(in);
  EXPECT_EQ(data.size(), 3);
  EXPECT_EQ(data.dimension(), 2);
  EXPECT_EQ(data.class_count(), 2);
  EXPECT_EQ(data.labels(), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(data.class_names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(data.feature_names(), (std::vector<std::string>{"f1", "f2"}));
  EXPECT_DOUBLE_EQ(data.samples()(1, 1), 0.4);
}

TEST(Csv, RejectionsCiteTheLine) {
  EXPECT_NE(error_of("x,label\n1,a\nfoo,b\n").find("data.csv:3"), std::string::npos);
  EXPECT_NE(error_of("x,y,label\n1,2,a\n1,b\n").find("data.csv:3"), std::string::npos);
  EXPECT_NE(error_of("x,y\n1,2\n").find("data.csv:1"), std::string::npos);
  EXPECT_NE(error_of("x,label\nnan,a\n").find("data.csv:2"), std::string::npos);
  EXPECT_FALSE(error_of("").empty());
  EXPECT_FALSE(error_of("x,label\n").empty());
  EXPECT_THROW(load_csv("/nonexistent/qdasim.csv"), std::invalid_argument);
}

TEST(Csv, RoundTripIsExact) {
  testing::Gen g(3);
  MatrixXd x(20, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g.normal() * std::pow(10.0, g.uniform(-30.0, 30.0));
  std::vector<int> labels;
  for (int j = 0; j < 20; ++j) labels.push_back(1 + j % 3);
  const LabeledDataset data(x, labels, 3, {"u", "v", "w"}, {"setosa", "versicolor", "virginica"});
  const auto path = std::filesystem::temp_directory_path() / "qdasim_roundtrip.csv";
  save_csv(data, path);
  const auto back = load_csv(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.samples(), data.samples());
  EXPECT_EQ(back.labels(), data.labels());
  EXPECT_EQ(back.class_names(), data.class_names());
  EXPECT_EQ(back.feature_names(), data.feature_names());
}

// --- generation ------------------------------------------------------------

TEST(Generate, ZeroCovarianceGivesMeans) {
  const auto data = generate(single_class(MatrixXd::Zero(3, 3), 5, 1));
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    const VectorXd expected = data.label(j) == 1 ? VectorXd::Zero(3) : VectorXd::Ones(3);
    EXPECT_EQ(data.sample(j), expected);
  }
}

TEST(Generate, IdentityCovarianceConverges) {
  const auto data = generate(single_class(MatrixXd::Identity(3, 3), 10000, 2));
  const MatrixXd x = data.class_samples(1);
  const MatrixXd centred = x.rowwise() - x.colwise().mean();
  const MatrixXd cov = centred.transpose() * centred / static_cast<double>(x.rows() - 1);
  EXPECT_LT((cov - MatrixXd::Identity(3, 3)).norm(), 0.05);
}

TEST(Generate, SemidefiniteCovarianceStaysOnItsSupport) {
  const VectorXd axis = VectorXd::Ones(3).normalized();
  const auto data = generate(single_class(axis * axis.transpose(), 50, 3));
  const MatrixXd x = data.class_samples(1);
  const MatrixXd off = x - x * axis * axis.transpose();
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Generate, DeterministicPerSeed) {
  const auto spec = random_gaussian_spec(4, 3, 20, 3.0, 5.0, false, 9);
  EXPECT_EQ(generate(spec).samples(), generate(spec).samples());
  auto other = spec;
  other.seed = 10;
  EXPECT_NE(generate(other).samples(), generate(spec).samples());
  for (const auto& name : preset_names()) EXPECT_EQ(synthetic(name, 4).samples(), synthetic(name, 4).samples());
}

TEST(Generate, RejectsInvalidSpecs) {
  MatrixXd bad(2, 2);
  bad << 1.0, 0.0, 0.0, -0.5;
  EXPECT_THROW(generate(single_class(bad, 5, 1)), std::invalid_argument);
  MatrixXd skew(2, 2);
  skew << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(generate(single_class(skew, 5, 1)), std::invalid_argument);
  EXPECT_THROW(generate(single_class(MatrixXd::Identity(2, 2), 1, 1)), std::invalid_argument);
  EXPECT_THROW(synthetic("no-such-preset", 1), std::invalid_argument);
}

TEST(Generate, PresetShapes) {
  EXPECT_EQ(synthetic("two-gauss", 1).dimension(), 4);
  EXPECT_EQ(synthetic("three-gauss", 1).class_count(), 3);
  EXPECT_EQ(synthetic("adversarial", 1).dimension(), 2);
  const auto circles = synthetic("circles", 1);
  EXPECT_EQ(circles.dimension(), 2);
  EXPECT_EQ(circles.class_count(), 2);
  PresetOptions opts;
  opts.dimension = 6;
  opts.per_class = 7;
  const auto wide = synthetic("two-gauss", 1, opts);
  EXPECT_EQ(wide.dimension(), 6);
  EXPECT_EQ(wide.size(), 14);
}

// --- reports ---------------------------------------------------------------

TEST(Report, RoundTripKeepsBitsAndKeyOrder) {
  RunReport report("reduce --p 1", 42);
  report.parameters()["zeta"] = 1;
  report.parameters()["alpha"] = 2;
  report.metrics()["value"] = 0.1 + 0.2;
  report.metrics()["tiny"] = 4.9406564584124654e-324;
  report.outputs()["matrix"] = to_json(MatrixXd(MatrixXd::Identity(2, 2) / 3.0));
  report.stamp();
  const auto back = RunReport::parse(report.dump());
  EXPECT_EQ(back.dump(), report.dump());
  EXPECT_EQ(back.document()["metrics"]["value"].get<double>(), 0.1 + 0.2);
  EXPECT_EQ(back.document()["metrics"]["tiny"].get<double>(), 4.9406564584124654e-324);
  std::vector<std::string> keys;
  for (const auto& item : back.document().items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "version", "command", "seed", "timestamp", "parameters",
                                            "outputs", "metrics", "resources"}));
  EXPECT_EQ(back.document()["parameters"].begin().key(), "zeta");
}

TEST(Report, TimestampIsTheOnlyVaryingField) {
  RunReport a("gen", 1);
  RunReport b("gen", 1);
  a.stamp();
  EXPECT_EQ(a.dump(false), b.dump(false));
  EXPECT_EQ(a.dump(false).find("timestamp"), std::string::npos);
  EXPECT_THROW(RunReport::parse(R"({"schema": "other/9"})"), std::invalid_argument);
}

TEST(Report, ComplexMatricesSplitIntoParts) {
  linalg::Matrix m(1, 2);
  m << linalg::Complex(1.0, -2.0), linalg::Complex(0.5, 0.0);
  const auto j = to_json(m);
  EXPECT_EQ(j["re"][0][0].get<double>(), 1.0);
  EXPECT_EQ(j["im"][0][0].get<double>(), -2.0);
  EXPECT_EQ(j["re"][0][1].get<double>(), 0.5);
}

}  // namespace
}  // namespace qdasim::io
