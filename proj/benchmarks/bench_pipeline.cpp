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

#include <benchmark/benchmark.h>

#include "qdasim/data_io.hpp"
#include "qdasim/lda.hpp"
#include "qdasim/qda.hpp"

namespace {

using namespace qdasim;

void BM_QuantumLda(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto data = io::generate(io::random_gaussian_spec(n, 3, 100, 3.0, 4.0, false, 7));
  lda::QuantumLdaOptions opts;
  opts.t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(lda::quantum_lda(data, 2, 100.0, opts));
}
BENCHMARK(BM_QuantumLda)->ArgsProduct({{4, 16}, {6, 8, 10}})->Unit(benchmark::kMillisecond);

void BM_ClassicalLdaOracle(benchmark::State& state) {
  const auto data = io::generate(io::random_gaussian_spec(static_cast<int>(state.range(0)), 3, 100, 3.0, 4.0, false, 7));
  for (auto _ : state) benchmark::DoNotOptimize(lda::classical_lda_oracle(data, 2, 100.0));
}
BENCHMARK(BM_ClassicalLdaOracle)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_QdaFit(benchmark::State& state) {
  const auto data = io::synthetic("three-gauss", 1);
  for (auto _ : state) benchmark::DoNotOptimize(qda::fit(data));
}
BENCHMARK(BM_QdaFit)->Unit(benchmark::kMillisecond);

void BM_QdaClassify(benchmark::State& state) {
  const auto model = qda::fit(io::synthetic("three-gauss", 1));
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(4, 0.3);
  qda::DiscriminantOptions o;
  o.shots = state.range(0);
  for (auto _ : state) {
    ++o.seed;
    benchmark::DoNotOptimize(qda::classify(model, x, o));
  }
}
BENCHMARK(BM_QdaClassify)->Arg(1024)->Arg(8192);

}  // namespace
