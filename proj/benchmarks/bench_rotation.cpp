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

#include "qdasim/rotation.hpp"

namespace {

using qdasim::linalg::SpectralFunction;
using namespace qdasim::rotation;

void BM_RotationAngle(benchmark::State& state) {
  RotationConfig config;
  config.fraction_bits = static_cast<int>(state.range(0));
  config.octaves = octaves_for(1.0 / 100.0);
  const auto f = SpectralFunction::inverse();
  double lambda = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rotation_angle(lambda, f, 0.009, config));
    lambda = lambda < 0.99 ? lambda + 0.0037 : 0.01;
  }
}
BENCHMARK(BM_RotationAngle)->Arg(8)->Arg(16)->Arg(24)->Arg(32);

void BM_ShiftAddMultiply(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  const auto a = FixedPointValue::from_double(0.7312, 4, bits);
  const auto b = FixedPointValue::from_double(1.2093, 4, bits);
  for (auto _ : state) benchmark::DoNotOptimize(shift_add_multiply(a, b));
}
BENCHMARK(BM_ShiftAddMultiply)->Arg(16)->Arg(32)->Arg(48);

}  // namespace
