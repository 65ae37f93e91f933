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

#include "catsim/device.hpp"
#include "catsim/wigner.hpp"

namespace {

using namespace catsim;

void BM_WignerMap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DensityMatrix rho = DensityMatrix::from_pure(cat_state(20, 2.0, CatPhase::plus));
  const Grid grid = Grid::for_alpha(2.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_map(rho, grid));
}
BENCHMARK(BM_WignerMap)->Arg(41)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_WignerPoint(benchmark::State& state) {
  const DensityMatrix rho = DensityMatrix::from_pure(cat_state(20, 2.0, CatPhase::plus));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_point(rho, cplx(1.0, 0.5)));
}
BENCHMARK(BM_WignerPoint);

void BM_ParityReadoutMeasure(benchmark::State& state) {
  const ParityReadout readout(DeviceParams{}, 16, false);
  const DensityMatrix rho = DensityMatrix::from_pure(cat_state(12, 1.2, CatPhase::plus));
  for (auto _ : state) benchmark::DoNotOptimize(readout.measure(rho, cplx(0.3, 0.2)));
}
BENCHMARK(BM_ParityReadoutMeasure);

}  // namespace
