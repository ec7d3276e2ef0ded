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

#include "qdasim/qsim.hpp"

namespace {

using namespace qdasim;
using linalg::DensityOperator;
using linalg::RealVector;

DensityOperator spectrum_state(linalg::Index n) {
  RealVector d(n);
  for (linalg::Index i = 0; i < n; ++i) d(i) = static_cast<double>(i + 1);
  return DensityOperator::normalized(linalg::Matrix(d.cast<linalg::Complex>().asDiagonal()));
}

void BM_PhaseEstimationExact(benchmark::State& state) {
  const auto g = spectrum_state(state.range(0));
  const int t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(qsim::phase_estimation(g, g, t));
}
BENCHMARK(BM_PhaseEstimationExact)->ArgsProduct({{4, 16}, {4, 8, 12}})->Unit(benchmark::kMicrosecond);

void BM_PhaseEstimationSimulated(benchmark::State& state) {
  const auto g = spectrum_state(4);
  qsim::PhaseEstimationOptions o;
  o.path = qsim::QpePath::simulation;
  o.steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qsim::phase_estimation(g, g, 4, o));
}
BENCHMARK(BM_PhaseEstimationSimulated)->Arg(64)->Arg(20000)->Unit(benchmark::kMicrosecond);

void BM_DensityExponentiationStep(benchmark::State& state) {
  const auto g = spectrum_state(state.range(0));
  const auto x = DensityOperator::maximally_mixed(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qsim::density_exponentiation_step(g, x, 0.01));
}
BENCHMARK(BM_DensityExponentiationStep)->Arg(4)->Arg(16)->Arg(64);

void BM_SignedOverlap(benchmark::State& state) {
  linalg::Vector a = linalg::Vector::Ones(8).normalized();
  linalg::Vector b = linalg::Vector::Unit(8, 0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(qsim::overlap_test_signed(a, b, state.range(0), ++seed));
}
BENCHMARK(BM_SignedOverlap)->Arg(1024)->Arg(8192)->Arg(65536);

}  // namespace
