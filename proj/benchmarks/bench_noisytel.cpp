// Copyright 2026 The noisytel Authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "noisytel/channels.hpp"
#include "noisytel/decomp.hpp"
#include "noisytel/entanglement.hpp"
#include "noisytel/teleport.hpp"

namespace {

using namespace noisytel;

DensityOperator random_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double re = n(rng);
      g(r, c) = Complex(re, n(rng));
    }
  }
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(0.5 * (m + m.adjoint()));
}

void BM_ConcurrenceMixed(benchmark::State& state) {
  const DensityOperator rho = random_state(1);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_mixed(rho));
}
BENCHMARK(BM_ConcurrenceMixed);

void BM_WoottersDecomposition(benchmark::State& state) {
  const DensityOperator rho = random_state(2);
  for (auto _ : state) benchmark::DoNotOptimize(wootters_decomposition(rho));
}
BENCHMARK(BM_WoottersDecomposition);

void BM_AverageFidelity64x64(benchmark::State& state) {
  const DensityOperator rho = analytic_channel(NoiseSpec(NoiseKind::parse("xz"), 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(average_fidelity(rho, 64, 64));
}
BENCHMARK(BM_AverageFidelity64x64);

void BM_LindbladEvolve(benchmark::State& state) {
  const NoiseKind kind = state.range(0) == 2 ? NoiseKind::isotropic() : NoiseKind::w_same_axis_x();
  const DensityOperator rho0 = ideal_resource(kind);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lindblad_evolve(rho0, kind, 0.2, default_lindblad_steps(0.2)));
  }
}
BENCHMARK(BM_LindbladEvolve)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PmaxNumericW(benchmark::State& state) {
  const PureState w = w_state();
  for (auto _ : state) benchmark::DoNotOptimize(pmax_numeric(w));
}
BENCHMARK(BM_PmaxNumericW)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
