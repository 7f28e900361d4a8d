// Copyright 2026 The DHEvo Toolkit Authors.
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

#include "dhevo/gen/generators.hpp"
#include "dhevo/milp/bnb.hpp"
#include "dhevo/milp/lp.hpp"

namespace {

using namespace dhevo;

milp::Instance instance_for(gen::Family family, const char* preset) {
  return gen::generate(gen::preset(family, preset, 1));
}

void BM_RootLp(benchmark::State& state) {
  const auto family = static_cast<gen::Family>(state.range(0));
  const milp::Instance inst = instance_for(family, "tiny");
  for (auto _ : state) benchmark::DoNotOptimize(milp::solve_lp(inst));
  state.SetLabel(std::string(gen::to_string(family)));
}
BENCHMARK(BM_RootLp)->DenseRange(0, 3);

void BM_BranchAndBound(benchmark::State& state) {
  const auto family = static_cast<gen::Family>(state.range(0));
  const milp::Instance inst = instance_for(family, "tiny");
  for (auto _ : state) benchmark::DoNotOptimize(milp::solve_bnb(inst));
  state.SetLabel(std::string(gen::to_string(family)));
}
BENCHMARK(BM_BranchAndBound)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
