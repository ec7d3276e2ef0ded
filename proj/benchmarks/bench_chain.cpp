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

#include <random>

#include "qdasim/chain.hpp"

namespace {

using namespace qdasim;
using linalg::Complex;
using linalg::DensityOperator;
using linalg::Matrix;
using linalg::SpectralFunction;

DensityOperator random_density(linalg::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (linalg::Index i = 0; i < g.size(); ++i) g(i) = Complex(normal(rng), normal(rng));
  return DensityOperator::normalized(Matrix(g * g.adjoint() + 0.1 * Matrix::Identity(n, n)));
}

void BM_ChainStageRegister(benchmark::State& state) {
  const auto n = state.range(0);
  const int t = static_cast<int>(state.range(1));
  const auto a = random_density(n, 1);
  const auto rho = random_density(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chain::chain_stage(rho, a, SpectralFunction::inverse(), t, 100.0, std::nullopt, 0.1));
  }
}
BENCHMARK(BM_ChainStageRegister)->ArgsProduct({{2, 8, 32}, {6, 8, 10}})->Unit(benchmark::kMicrosecond);

void BM_ChainApplyThreeStages(benchmark::State& state) {
  const auto n = state.range(0);
  chain::ChainSpec spec{{{random_density(n, 3), SpectralFunction::inverse_sqrt(), std::nullopt},
                         {random_density(n, 4), SpectralFunction::inverse(), std::nullopt},
                         {random_density(n, 5), SpectralFunction::sqrt(), std::nullopt}}};
  for (auto _ : state) benchmark::DoNotOptimize(chain::chain_apply(spec));
}
BENCHMARK(BM_ChainApplyThreeStages)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

}  // namespace
