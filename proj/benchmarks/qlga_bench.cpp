// Copyright 2026 The qlga Authors
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

#include "qlga/clifford.hpp"
#include "qlga/decider.hpp"
#include "qlga/sim.hpp"
#include "support/oracles.hpp"
#include "support/random_qca.hpp"

using namespace qlga;
using namespace qlga::testing;

static void BM_DoubleCommutant(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<OperatorSubspace> algebras;
  for (int i = 0; i < 16; ++i) {
    auto b = random_block_algebra(rng);
    algebras.push_back(orthonormalize(b.basis, {Slot{{0}, 0}}, {b.ambient}));
  }
  size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(commutant(commutant(algebras[k++ % algebras.size()])));
}
BENCHMARK(BM_DoubleCommutant)->Unit(benchmark::kMillisecond);

static void BM_DenseDAlgebras(benchmark::State& state, const char* file) {
  auto d = load_descriptor(data_path(file));
  for (auto _ : state) benchmark::DoNotOptimize(dense_d_algebras(d));
}
BENCHMARK_CAPTURE(BM_DenseDAlgebras, meyer, "meyer.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DenseDAlgebras, toffoli, "toffoli.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DenseDAlgebras, cnot, "cnot1d.json")->Unit(benchmark::kMillisecond);

static void BM_CliffordDAlgebras(benchmark::State& state, const char* file) {
  auto d = load_descriptor(data_path(file));
  for (auto _ : state) benchmark::DoNotOptimize(pauli_cell_algebra_dims(d));
}
BENCHMARK_CAPTURE(BM_CliffordDAlgebras, cnot, "cnot1d.json")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_CliffordDAlgebras, kari, "kari2d.json")->Unit(benchmark::kMicrosecond);

static void BM_RingUnitary(benchmark::State& state) {
  auto d = load_descriptor(data_path("meyer.json"));
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_window_unitary(d, {L}));
}
BENCHMARK(BM_RingUnitary)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Decide(benchmark::State& state, const char* file) {
  auto d = load_descriptor(data_path(file));
  DecideOptions o;
  o.dense_cap = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(decide(d, o));
}
BENCHMARK_CAPTURE(BM_Decide, meyer, "meyer.json")->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Decide, shifted, "toffoli_shifted.json")->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_DecideRandomQlga(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<QcaDescriptor> ds;
  for (int i = 0; i < 8; ++i) ds.push_back(parse_descriptor(random_qlga(rng, static_cast<int>(state.range(0))).doc));
  DecideOptions o;
  o.dense_cap = 256;
  size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decide(ds[k++ % ds.size()], o));
}
BENCHMARK(BM_DecideRandomQlga)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SimulateMeyer(benchmark::State& state) {
  auto d = load_descriptor(data_path("meyer.json"));
  auto s = basis_state(d.qlga(), 1, {{{0}, 1}});
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(s, d.qlga(), steps));
}
BENCHMARK(BM_SimulateMeyer)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
