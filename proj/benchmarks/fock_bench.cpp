// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "catsim/fock.hpp"

namespace {

using namespace catsim;

void BM_Expm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const Matrix gen = (annihilation_op(dim).matrix() * cplx(0.7, 0.2) -
                      creation_op(dim).matrix() * cplx(0.7, -0.2));
  for (auto _ : state) benchmark::DoNotOptimize(expm(gen));
}
BENCHMARK(BM_Expm)->Arg(20)->Arg(40)->Arg(80);

void BM_Displacement(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(displacement_op(dim, cplx(1.5, 0.5)));
}
BENCHMARK(BM_Displacement)->Arg(20)->Arg(40);

void BM_CatState(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cat_state(dim, 2.0, CatPhase::plus));
}
BENCHMARK(BM_CatState)->Arg(20)->Arg(40);

}  // namespace
