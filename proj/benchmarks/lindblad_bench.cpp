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
#include "catsim/lindblad.hpp"

namespace {

using namespace catsim;

void BM_RhsReduced(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const LindbladModel model = build_reduced_model(DeviceParams{}, 2.0, false, dim);
  const Matrix rho = DensityMatrix::from_pure(coherent_state(dim, 2.0)).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(model, 0.0, rho));
}
BENCHMARK(BM_RhsReduced)->Arg(20)->Arg(30)->Arg(40);

void BM_RhsBipartite(benchmark::State& state) {
  const DeviceParams p;
  const BipartiteDims dims{static_cast<int>(state.range(0)), 4};
  const LindbladModel model = build_bipartite_model(
      p, [d = stabilizing_drive(p, 2.0)](double) { return d; }, dims);
  const Matrix rho = DensityMatrix::from_pure(
                         tensor(coherent_state(dims.memory, 2.0), fock_state(dims.buffer, 0)))
                         .matrix();
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(model, 0.0, rho));
}
BENCHMARK(BM_RhsBipartite)->Arg(14)->Arg(20);

void BM_PropagateReduced(benchmark::State& state) {
  const int dim = 20;
  const LindbladModel model = build_reduced_model(DeviceParams{}, 2.0, false, dim);
  const DensityMatrix vac = DensityMatrix::from_pure(fock_state(dim, 0));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(model, vac, 0.0, 100.0, 10.0));
}
BENCHMARK(BM_PropagateReduced)->Unit(benchmark::kMillisecond);

}  // namespace
