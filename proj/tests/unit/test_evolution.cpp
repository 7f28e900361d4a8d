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

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "dhevo/agents/provider.hpp"
#include "dhevo/common/error.hpp"
#include "dhevo/common/rng.hpp"
#include "dhevo/diving/scorer.hpp"
#include "dhevo/evolution/dhevo.hpp"
#include "dhevo/evolution/fitness.hpp"
#include "dhevo/evolution/selection.hpp"
#include "dhevo/gen/generators.hpp"
#include "dhevo/io/json_io.hpp"
#include "support/oracles.hpp"

using namespace dhevo;
using namespace dhevo::evolution;

namespace {

milp::Instance fixed_value_instance(double cost) {
  milp::Instance inst;
  inst.name = "fixed";
  inst.obj = {cost};
  inst.lb = {1.0};
  inst.ub = {1.0};
  inst.is_int = {true};
  return inst;
}

std::vector<TrainingInstance> training_set(gen::Family family, std::size_t n, std::uint64_t seed) {
  std::vector<milp::Instance> raw;
  for (std::size_t i = 0; i < n; ++i) raw.push_back(gen::generate(gen::preset(family, "tiny", derive_seed(seed, i))));
  return prepare_instances(std::move(raw));
}

EvolveConfig small_config(std::size_t n) {
  EvolveConfig cfg;
  cfg.m = 4;
  cfg.n = n;
  cfg.k = 3;
  cfg.iterations = 3;
  cfg.offspring = 2;
  cfg.seed = 17;
  return cfg;
}

}  // namespace

TEST_SUITE("evolution") {
  TEST_CASE("fitness from the dive objective") {
    const auto scorer = diving::Scorer::builtin("fractional");
    const milp::Instance inst = fixed_value_instance(110.0);
    CHECK(evaluate_fitness(scorer, inst, 110.0, 10.0, 0).fitness == 0.0);
    const FitnessResult r = evaluate_fitness(scorer, inst, 100.0, 10.0, 0);
    CHECK(r.fitness == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(r.objective == 110.0);
    CHECK(evaluate_fitness(scorer, inst, 1.0, 10.0, 0).fitness == -10.0);

    milp::Instance infeasible = testing::two_var_fixture();
    infeasible.sense = {milp::Sense::GE};
    infeasible.rhs = {5.0};
    const FitnessResult none = evaluate_fitness(scorer, infeasible, -1.0, 10.0, 0);
    CHECK(none.fitness == -10.0);
    CHECK_FALSE(none.objective.has_value());
  }

  TEST_CASE("reference objectives") {
    const Reference r = compute_reference(testing::two_var_fixture());
    CHECK(r.z == -1.0);
    CHECK(r.proven);
    milp::Instance infeasible = testing::two_var_fixture();
    infeasible.sense = {milp::Sense::GE};
    infeasible.rhs = {5.0};
    CHECK_THROWS_AS(compute_reference(infeasible), Error);
  }

  TEST_CASE("cold selection is rank selection") {
    const std::vector<DataCodePair> pairs{{0, "a", -0.1}, {1, "b", -0.5}, {2, "c", -0.9}};
    Rng rng(1);
    const auto got = select_topk_pairs(pairs, 2, 1e-9, rng);
    REQUIRE(got.size() == 2);
    std::set<std::string> ids{got[0].heuristic_id, got[1].heuristic_id};
    CHECK(ids == std::set<std::string>{"a", "b"});
    CHECK(select_topk_pairs(pairs, 3, 5.0, rng).size() == 3);
    CHECK_THROWS_AS(select_topk_pairs(pairs, 4, 1.0, rng), Error);
    CHECK_THROWS_AS(select_topk_pairs(pairs, 1, 0.0, rng), Error);

    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> u(-10.0, 0.0);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<DataCodePair> many;
      const std::size_t n = 2 + trial % 9;
      for (std::size_t i = 0; i < n; ++i) many.push_back({i, "h" + std::to_string(i), u(g)});
      const std::size_t k = 1 + trial % n;
      const auto sampled = select_topk_pairs(many, k, 1e-9, rng);
      auto sorted = many;
      std::stable_sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.fitness > b.fitness; });
      std::set<std::size_t> want, have;
      for (std::size_t i = 0; i < k; ++i) {
        want.insert(sorted[i].instance);
        have.insert(sampled[i].instance);
      }
      CHECK(want == have);
      const auto ranked = rank_topk_pairs(many, k);
      for (std::size_t i = 0; i < k; ++i) CHECK(ranked[i].instance == sorted[i].instance);
    }
  }

  TEST_CASE("equal fitness gives uniform subsets") {
    const std::vector<DataCodePair> pairs{{0, "a", -1.0}, {1, "b", -1.0}, {2, "c", -1.0}, {3, "d", -1.0}};
    Rng rng(3);
    std::map<std::set<std::size_t>, int> counts;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      std::set<std::size_t> s;
      for (const auto& p : select_topk_pairs(pairs, 2, 1.0, rng)) s.insert(p.instance);
      ++counts[s];
    }
    REQUIRE(counts.size() == 6);
    double chi2 = 0.0;
    const double expected = trials / 6.0;
    for (const auto& [s, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 5 degrees of freedom, 0.1% critical value.
    CHECK(chi2 < 20.52);
  }

  TEST_CASE("temperature favors fitter pairs") {
    const std::vector<DataCodePair> pairs{{0, "a", 0.0}, {1, "b", -5.0}};
    Rng rng(4);
    int first = 0;
    for (int t = 0; t < 2000; ++t) first += select_topk_pairs(pairs, 1, 1.0, rng)[0].instance == 0;
    // exp(0) / (exp(0) + exp(-5)) ~= 0.9933
    CHECK(first > 1950);
  }

  TEST_CASE("fitness proportional parents") {
    Rng rng(5);
    const std::vector<double> f{0.0, -10.0};
    int zero = 0;
    for (int t = 0; t < 1000; ++t) zero += fitness_proportional(f, 10.0, rng) == 0;
    CHECK(zero > 990);
  }

  TEST_CASE("per-instance run: structure, budget, bounds and elitism") {
    const auto inst = training_set(gen::Family::Cauctions, 6, 1);
    EvolveConfig cfg = small_config(6);
    agents::MockProvider mock(cfg.seed);
    const auto prompts = agents::PromptLibrary::builtin();
    const Archive a = run_dhevo(cfg, inst, mock, prompts);
    CHECK(a.complete);
    CHECK(a.mode == "dhevo");
    REQUIRE(a.generations.size() == 3);
    CHECK(a.episode_count() == episode_budget(cfg));
    CHECK(episode_budget(cfg) == 4 + 6 * 2 + 2 * 3 * 2);
    for (const auto& g : a.generations) {
      for (const auto& e : g.fitness) {
        CHECK(e.fitness <= 0.0);
        CHECK(e.fitness >= -cfg.gap_cap);
      }
      CHECK(g.selected.size() == cfg.k);
      for (const auto& ep : g.episodes) CHECK(ep.transcript.calls() <= cfg.limits.call_budget);
    }
    for (std::size_t g = 1; g < a.generations.size(); ++g) {
      for (std::size_t i = 0; i < cfg.n; ++i) {
        CHECK(a.generations[g].pairs[i].fitness >= a.generations[g - 1].pairs[i].fitness);
      }
    }
    REQUIRE(a.portfolio.size() == cfg.k);
    for (std::size_t i = 1; i < a.portfolio.size(); ++i) CHECK(a.portfolio[i - 1].f_avg >= a.portfolio[i].f_avg);
  }

  TEST_CASE("portfolio statistics match the stored fitness") {
    const auto inst = training_set(gen::Family::Indset, 4, 2);
    EvolveConfig cfg = small_config(4);
    cfg.k = 2;
    agents::MockProvider mock(cfg.seed);
    const Archive a = run_dhevo(cfg, inst, mock, agents::PromptLibrary::builtin());
    for (const auto& p : a.portfolio) {
      const auto m = testing::two_pass(p.fitness);
      CHECK(p.f_avg == doctest::Approx(static_cast<double>(m.mean)).epsilon(1e-12));
      CHECK(p.variance == doctest::Approx(static_cast<double>(m.variance)).epsilon(1e-12));
      for (std::size_t q = 0; q < p.instances.size(); ++q) {
        const auto* h = a.find(p.heuristic_id);
        REQUIRE(h);
        const auto fr = evaluate_fitness(diving::Scorer::program(h->program), inst[p.instances[q]].instance,
                                         inst[p.instances[q]].reference.z, cfg.gap_cap, cfg.d_max);
        CHECK(fr.fitness == p.fitness[q]);
      }
    }
    const auto again = final_select(a, inst, cfg.k);
    REQUIRE(again.size() == a.portfolio.size());
    for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].heuristic_id == a.portfolio[i].heuristic_id);
  }

  TEST_CASE("single iteration archives generation one only") {
    const auto inst = training_set(gen::Family::Setcover, 3, 3);
    EvolveConfig cfg = small_config(3);
    cfg.iterations = 1;
    cfg.k = 2;
    agents::MockProvider mock(cfg.seed);
    const Archive a = run_dhevo(cfg, inst, mock, agents::PromptLibrary::builtin());
    CHECK(a.generations.size() == 1);
    CHECK(a.episode_count() == cfg.m + cfg.n * cfg.offspring);
  }

  TEST_CASE("runs are reproducible") {
    const auto inst = training_set(gen::Family::Cauctions, 3, 4);
    EvolveConfig cfg = small_config(3);
    cfg.k = 2;
    agents::MockProvider m1(cfg.seed), m2(cfg.seed);
    const auto prompts = agents::PromptLibrary::builtin();
    const std::string a = io::dump_archive(run_dhevo(cfg, inst, m1, prompts));
    const std::string b = io::dump_archive(run_dhevo(cfg, inst, m2, prompts));
    CHECK(a == b);
    cfg.threads = 3;
    agents::MockProvider m3(cfg.seed);
    Archive threaded = run_dhevo(cfg, inst, m3, prompts);
    threaded.config.threads = 1;
    CHECK(io::dump_archive(threaded) == a);
  }

  TEST_CASE("an interrupted run resumes to the same archive") {
    const auto inst = training_set(gen::Family::Cauctions, 4, 5);
    EvolveConfig cfg = small_config(4);
    cfg.k = 2;
    const auto prompts = agents::PromptLibrary::builtin();
    agents::MockProvider full_mock(cfg.seed);
    const std::string full = io::dump_archive(run_dhevo(cfg, inst, full_mock, prompts));

    Archive partial;
    EvolveHooks hooks;
    hooks.on_generation = [&](const Archive& a) { partial = a; };
    hooks.cancelled = [&] { return partial.generations.size() >= 1; };
    agents::MockProvider mock(cfg.seed);
    try {
      (void)run_dhevo(cfg, inst, mock, prompts, hooks);
      FAIL("expected Interrupted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Interrupted);
    }
    CHECK_FALSE(partial.complete);
    REQUIRE(partial.generations.size() == 1);
    const Archive reloaded = io::archive_from_json(nlohmann::json::parse(io::dump_archive(partial)));
    agents::MockProvider resume_mock(cfg.seed);
    const Archive resumed = run_dhevo(cfg, inst, resume_mock, prompts, {}, &reloaded);
    CHECK(io::dump_archive(resumed) == full);

    EvolveConfig other = cfg;
    other.seed = 99;
    agents::MockProvider m(other.seed);
    CHECK_THROWS_AS(run_dhevo(other, inst, m, prompts, {}, &reloaded), Error);
  }

  TEST_CASE("failed episodes fall back to random programs") {
    const auto inst = training_set(gen::Family::Setcover, 3, 6);
    EvolveConfig cfg = small_config(3);
    cfg.k = 2;
    cfg.iterations = 2;
    agents::MockProvider garbage(cfg.seed, agents::MockFault::Garbage);
    const Archive a = run_dhevo(cfg, inst, garbage, agents::PromptLibrary::builtin());
    CHECK(a.complete);
    for (const auto& g : a.generations) {
      for (const auto& h : g.population) CHECK(h.fallback);
      for (const auto& e : g.episodes) CHECK_FALSE(e.error.empty());
    }
    CHECK(a.episode_count() == episode_budget(cfg));
  }

  TEST_CASE("baseline run keeps the best average fitness") {
    const auto inst = training_set(gen::Family::Cauctions, 4, 7);
    EvolveConfig cfg = small_config(4);
    cfg.fitness_mode = FitnessMode::Averaged;
    agents::MockProvider mock(cfg.seed);
    const Archive a = run_baseline_ec(cfg, inst, mock, agents::PromptLibrary::builtin());
    CHECK(a.mode == "baseline_ec");
    CHECK(a.episode_count() == episode_budget(cfg));
    double prev = -1e300;
    for (const auto& g : a.generations) {
      double best = -1e300;
      for (const auto& p : g.pairs) best = std::max(best, p.fitness);
      CHECK(best >= prev);
      prev = best;
      CHECK(g.pairs.size() == cfg.m);
    }
    for (const auto& p : a.portfolio) CHECK(p.instances.size() == cfg.n);
  }

  TEST_CASE("ablation arms differ only through selection and fitness") {
    const auto inst = training_set(gen::Family::Cauctions, 4, 8);
    EvolveConfig cfg = small_config(4);
    const auto prompts = agents::PromptLibrary::builtin();
    agents::MockProvider m1(cfg.seed), m2(cfg.seed);
    const Archive per = run_dhevo(cfg, inst, m1, prompts);
    EvolveConfig avg_cfg = cfg;
    avg_cfg.fitness_mode = FitnessMode::Averaged;
    const Archive avg = run_baseline_ec(avg_cfg, inst, m2, prompts);
    const AblationDiff diff = compare_ablation(per, avg);
    for (const auto& p : diff.problems) MESSAGE(p);
    CHECK(diff.ok);
    CHECK(diff.matched_episodes + diff.divergent_episodes > 0);

    Archive tampered = avg;
    tampered.generations[0].episodes[0].transcript.entries[0].response += "x";
    CHECK_FALSE(compare_ablation(per, tampered).ok);
  }

  TEST_CASE("configuration invariants") {
    EvolveConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.k = cfg.n + 1;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.temperature = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.m = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    CHECK(parse_fitness_mode("averaged") == FitnessMode::Averaged);
  }
}
