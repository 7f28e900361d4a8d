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

#include <random>

#include "dhevo/common/rng.hpp"
#include "dhevo/dsl/eval.hpp"
#include "dhevo/dsl/ops.hpp"
#include "dhevo/dsl/parser.hpp"
#include "dhevo/dsl/render.hpp"

namespace {

using namespace dhevo;

diving::FeatureVector sample_features() {
  diving::FeatureVector fv;
  fv.candsol = 0.75;
  fv.candsfrac = 0.75;
  fv.nlocksup = 1;
  fv.obj = -1.0;
  fv.objnorm = 1.4142135623730951;
  fv.nNonz = 1;
  fv.isBinary = true;
  fv.mayrounddown = true;
  return fv;
}

void BM_EvalReference(benchmark::State& state) {
  const dsl::Program p = dsl::parse("score: candsfrac * 80 roundup: candsfrac > 0.5");
  const auto fv = sample_features();
  for (auto _ : state) benchmark::DoNotOptimize(dsl::eval(p, fv));
}
BENCHMARK(BM_EvalReference);

void BM_EvalRandom(benchmark::State& state) {
  Rng rng(static_cast<std::uint64_t>(state.range(0)));
  const dsl::Program p = dsl::random_program(rng, static_cast<std::size_t>(state.range(0)));
  const auto fv = sample_features();
  for (auto _ : state) benchmark::DoNotOptimize(dsl::eval(p, fv));
  state.counters["nodes"] = static_cast<double>(dsl::node_count(p));
}
BENCHMARK(BM_EvalRandom)->Arg(4)->Arg(8)->Arg(16);

void BM_ParseRender(benchmark::State& state) {
  Rng rng(3);
  const std::string text = dsl::render(dsl::random_program(rng, 8));
  for (auto _ : state) benchmark::DoNotOptimize(dsl::render(dsl::parse(text)));
}
BENCHMARK(BM_ParseRender);

void BM_Mutate(benchmark::State& state) {
  Rng rng(4);
  const dsl::Program p = dsl::random_program(rng, 8);
  for (auto _ : state) benchmark::DoNotOptimize(dsl::mutate(p, rng));
}
BENCHMARK(BM_Mutate);

}  // namespace
