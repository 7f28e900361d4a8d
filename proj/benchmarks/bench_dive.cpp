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

#include "dhevo/diving/dive.hpp"
#include "dhevo/diving/scorer.hpp"
#include "dhevo/gen/generators.hpp"

namespace {

using namespace dhevo;

void BM_Dive(benchmark::State& state) {
  const auto family = static_cast<gen::Family>(state.range(0));
  const milp::Instance inst = gen::generate(gen::preset(family, "tiny", 2));
  const diving::DivePrep prep = diving::DivePrep::build(inst);
  const diving::Scorer scorer = diving::Scorer::builtin(diving::builtin_scorer_names()[state.range(1)]);
  const std::size_t d_max = diving::default_dmax(inst);
  for (auto _ : state) benchmark::DoNotOptimize(diving::dive(prep, scorer, d_max));
  state.SetLabel(std::string(gen::to_string(family)) + "/" + diving::builtin_scorer_names()[state.range(1)]);
}
BENCHMARK(BM_Dive)->ArgsProduct({{0, 1, 2, 3}, {0, 1, 2}});

void BM_DivePrep(benchmark::State& state) {
  const milp::Instance inst = gen::generate(gen::preset(gen::Family::Setcover, "tiny", 2));
  for (auto _ : state) benchmark::DoNotOptimize(diving::DivePrep::build(inst));
}
BENCHMARK(BM_DivePrep);

}  // namespace
