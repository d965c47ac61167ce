// Copyright 2026 The qfs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>
#include <string>

#include "qfs/backend.hpp"
#include "qfs/baselines.hpp"
#include "qfs/circuit.hpp"
#include "qfs/dataset.hpp"
#include "qfs/estimator.hpp"
#include "qfs/logreg.hpp"
#include "qfs/mps.hpp"
#include "qfs/objective.hpp"
#include "qfs/qnspsa.hpp"
#include "qfs/statevector.hpp"

namespace {

using namespace qfs;

ParamVector random_theta(std::size_t m, Rng& rng) {
  ParamVector t(static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = (2 * rng.uniform() - 1) * std::numbers::pi;
  return t;
}

BoundCircuit random_bound(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  const Circuit c = build_real_amplitudes(n, d);
  return bind(c, random_theta(c.param_count(), rng));
}

const Dataset& credit_train() {
  static const Dataset train = [] {
    const Dataset full = one_hot_encode(load_german(std::string(QFS_DATA_DIR) + "/german.data"));
    return split(full, 0.5, 0, 100000).train;
  }();
  return train;
}

void BM_SvRyLayer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StateVector sv(n);
  for (auto _ : state) {
    for (std::size_t q = 0; q < n; ++q) sv.apply_ry(q, 0.3);
    benchmark::DoNotOptimize(sv.amplitude(0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SvRyLayer)->DenseRange(10, 20, 2);

void BM_SvCnot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StateVector sv = run_sv(random_bound(n, 1, 1));
  for (auto _ : state) {
    sv.apply_cnot(0, 1);
    benchmark::DoNotOptimize(sv.amplitude(1));
  }
}
BENCHMARK(BM_SvCnot)->DenseRange(10, 20, 2);

void BM_MpsTwoQubitGate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const BoundCircuit b = random_bound(20, d, 2);
  MpsState base = run_mps(b);
  for (auto _ : state) {
    state.PauseTiming();
    MpsState m = base;
    state.ResumeTiming();
    m.apply_cnot(9, 10);
    benchmark::DoNotOptimize(m.max_bond_dimension());
  }
  state.counters["chi"] = static_cast<double>(base.max_bond_dimension());
}
BENCHMARK(BM_MpsTwoQubitGate)->DenseRange(0, 3, 1);

// Cost of 1024 shots as the register grows; should be roughly linear in n.
void BM_MpsSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const MpsState m = run_mps(random_bound(n, 1, 3));
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(mps_sample(m, 1024, rng).distinct());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MpsSample)->RangeMultiplier(2)->Range(8, 64)->Complexity(benchmark::oN);

void BM_MpsSimulate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BoundCircuit b = random_bound(n, 1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(run_mps(b).max_bond_dimension());
}
BENCHMARK(BM_MpsSimulate)->Arg(10)->Arg(20)->Arg(59);

void BM_LogRegFit(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Dataset& train = credit_train();
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  const Dataset d = train.take_columns(cols);
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_logreg(d.features(), d.labels()).intercept);
  }
}
BENCHMARK(BM_LogRegFit)->Arg(5)->Arg(10)->Arg(20)->Arg(59)->Unit(benchmark::kMicrosecond);

void BM_QnspsaStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  const SubsetObjective f(credit_train().take_columns(cols));
  const Circuit c = build_real_amplitudes(n, 1);
  const MpsBackend be;
  OptimizerConfig cfg;
  const Estimator est(be, cfg.shots);
  const OptimizerState start = initial_state(cfg, est, c, f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnspsa_step(start, cfg, est, c, f).current_loss);
  }
}
BENCHMARK(BM_QnspsaStep)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
