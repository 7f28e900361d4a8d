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

#include "dhevo/evolution/dhevo.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dhevo/common/error.hpp"
#include "dhevo/common/parallel.hpp"
#include "dhevo/common/rng.hpp"
#include "dhevo/diving/dive.hpp"
#include "dhevo/dsl/ops.hpp"
#include "dhevo/dsl/render.hpp"
#include "dhevo/evolution/selection.hpp"
#include "dhevo/metrics/metrics.hpp"

namespace dhevo::evolution {

std::string_view to_string(FitnessMode m) {
  return m == FitnessMode::PerInstance ? "per_instance" : "averaged";
}

FitnessMode parse_fitness_mode(std::string_view s) {
  if (s == "per_instance") return FitnessMode::PerInstance;
  if (s == "averaged") return FitnessMode::Averaged;
  fail(ErrorCode::ConfigError, "unknown fitness mode '" + std::string(s) + "'");
}

void EvolveConfig::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::ConfigError, what);
  };
  need(m >= 1, "m must be >= 1");
  need(n >= 1, "n must be >= 1");
  need(k >= 1 && k <= n, "k must be in [1, n]");
  need(iterations >= 1, "iterations must be >= 1");
  need(temperature > 0.0, "temperature must be > 0");
  need(gap_cap > 0.0, "gap_cap must be > 0");
  need(offspring >= 1, "offspring must be >= 1");
  need(crossover_rate >= 0.0 && crossover_rate <= 1.0, "crossover_rate must be in [0, 1]");
  need(limits.max_rounds >= 1 && limits.max_retries >= 1 && limits.call_budget >= 1,
       "episode limits must be >= 1");
}

bool EvolveConfig::operator==(const EvolveConfig& o) const {
  return m == o.m && n == o.n && k == o.k && iterations == o.iterations && temperature == o.temperature &&
         gap_cap == o.gap_cap && seed == o.seed && d_max == o.d_max && fitness_mode == o.fitness_mode &&
         offspring == o.offspring && crossover_rate == o.crossover_rate &&
         limits.max_rounds == o.limits.max_rounds && limits.max_retries == o.limits.max_retries &&
         limits.call_budget == o.limits.call_budget;
}

const Heuristic* Archive::find(std::string_view id) const {
  for (const auto& g : generations)
    for (const auto& h : g.population)
      if (h.id == id) return &h;
  return nullptr;
}

std::size_t Archive::episode_count() const {
  std::size_t n = 0;
  for (const auto& g : generations) n += g.episodes.size();
  return n;
}

std::size_t episode_budget(const EvolveConfig& cfg) {
  return cfg.m + cfg.n * cfg.offspring + (cfg.iterations - 1) * cfg.k * cfg.offspring;
}

std::vector<TrainingInstance> prepare_instances(std::vector<milp::Instance> instances,
                                                const milp::BnbLimits& limits, std::size_t threads) {
  std::vector<TrainingInstance> out(instances.size());
  parallel_for(instances.size(), threads, [&](std::size_t i) {
    out[i].reference = compute_reference(instances[i], limits);
    out[i].instance = std::move(instances[i]);
  });
  return out;
}

namespace {

using agents::Operation;

// Slot plan: what an episode does, fixed before any episode runs.
struct SlotPlan {
  std::size_t slot = 0;
  Operation op = Operation::Init;
  std::vector<std::string> parents;
};

struct Scored {
  std::string id;
  double fitness = 0.0;
};

class Engine {
 public:
  Engine(const EvolveConfig& cfg, std::span<const TrainingInstance> instances, agents::Provider& provider,
         const agents::PromptLibrary& prompts, const EvolveHooks& hooks, std::string mode)
      : cfg_(cfg), instances_(instances), provider_(provider), prompts_(prompts), hooks_(hooks) {
    cfg_.validate();
    if (instances.size() != cfg_.n) {
      fail(ErrorCode::ConfigError,
           "config expects " + std::to_string(cfg_.n) + " instances, got " + std::to_string(instances.size()));
    }
    archive_.mode = std::move(mode);
    archive_.config = cfg_;
    archive_.provider = provider.name();
    for (const auto& t : instances) {
      archive_.instances.push_back({t.instance.name, t.hash, t.reference.z, t.reference.proven});
    }
    preps_.resize(instances.size());
    parallel_for(instances.size(), cfg_.threads,
                 [&](std::size_t i) { preps_[i] = diving::DivePrep::build(instances[i].instance); });
  }

  Archive run(const Archive* resume) {
    std::size_t next = 1;
    if (resume) next = restore(*resume);
    for (std::size_t g = next; g <= cfg_.iterations; ++g) {
      Generation gen = g == 1 ? first_generation() : later_generation(g);
      archive_.generations.push_back(std::move(gen));
      for (const auto& h : archive_.generations.back().population) index_[h.id] = &h;
      emit({{"event", "generation"}, {"index", g}, {"pairs", archive_.generations.back().pairs.size()}});
      if (hooks_.on_generation) hooks_.on_generation(archive_);
      if (hooks_.cancelled && hooks_.cancelled() && g < cfg_.iterations) {
        fail(ErrorCode::Interrupted, "stopped after generation " + std::to_string(g));
      }
    }
    archive_.portfolio = final_selection();
    archive_.complete = true;
    if (hooks_.on_generation) hooks_.on_generation(archive_);
    return std::move(archive_);
  }

 private:
  bool per_instance() const { return cfg_.fitness_mode == FitnessMode::PerInstance; }

  void emit(const nlohmann::json& event) const {
    if (hooks_.on_event) hooks_.on_event(event);
  }

  std::uint64_t generation_seed(std::size_t g) const {
    return derive_seed(derive_seed(cfg_.seed, "generation"), g);
  }

  std::size_t restore(const Archive& prior) {
    if (prior.mode != archive_.mode || !(prior.config == cfg_)) {
      fail(ErrorCode::ConfigError, "archive was written by a different configuration");
    }
    if (prior.instances.size() != archive_.instances.size()) {
      fail(ErrorCode::ConfigError, "archive instance set differs");
    }
    for (std::size_t i = 0; i < prior.instances.size(); ++i) {
      const auto& a = prior.instances[i];
      const auto& b = archive_.instances[i];
      if (a.name != b.name || a.hash != b.hash) {
        fail(ErrorCode::ConfigError, "archive instance " + std::to_string(i) + " differs");
      }
      archive_.instances[i] = a;  // keep the recorded references
    }
    if (prior.generations.size() > cfg_.iterations) fail(ErrorCode::SchemaMismatch, "archive has too many generations");
    archive_.generations = prior.generations;
    for (const auto& g : archive_.generations)
      for (const auto& h : g.population) index_[h.id] = &h;
    return archive_.generations.size() + 1;
  }

  double z_ref(std::size_t i) const { return archive_.instances[i].z_ref; }

  const Heuristic& heuristic(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) fail(ErrorCode::SchemaMismatch, "unknown heuristic id " + id);
    return *it->second;
  }

  // Runs all planned episodes in parallel; failed episodes fall back to a
  // random program so the population size stays fixed.
  void run_episodes(std::size_t g, const std::vector<SlotPlan>& plans, Generation& gen) {
    std::vector<Heuristic> made(plans.size());
    std::vector<EpisodeRecord> records(plans.size());
    parallel_for(plans.size(), cfg_.threads, [&](std::size_t p) {
      const SlotPlan& plan = plans[p];
      const std::uint64_t nonce = derive_seed(derive_seed(derive_seed(cfg_.seed, "episode"), g), plan.slot);
      std::vector<agents::Candidate> parents;
      for (const auto& id : plan.parents) {
        const Heuristic& h = heuristic(id);
        parents.push_back({h.program, h.description, {}, h.origin});
      }
      agents::EpisodeOutcome outcome;
      try {
        outcome = agents::try_run_episode(plan.op, parents, provider_, cfg_.limits, nonce, prompts_);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        outcome.error = e.what();
      }
      Heuristic h;
      h.id = "g" + std::to_string(g) + "-s" + std::to_string(plan.slot);
      h.origin = plan.op;
      h.parents = plan.parents;
      h.generation = g;
      if (outcome.candidate) {
        h.program = std::move(outcome.candidate->program);
        h.description = std::move(outcome.candidate->description);
      } else {
        Rng fb(derive_seed(nonce, "fallback"));
        h.program = dsl::random_program(fb, 3);
        h.description = "Random fallback after a failed episode.";
        h.fallback = true;
      }
      records[p] = {h.id, plan.slot, plan.op, plan.parents, std::move(outcome.transcript), outcome.error};
      made[p] = std::move(h);
    });
    for (std::size_t p = 0; p < plans.size(); ++p) {
      emit({{"event", "episode"},
            {"generation", g},
            {"slot", plans[p].slot},
            {"id", made[p].id},
            {"op", agents::to_string(plans[p].op)},
            {"verdict", agents::to_string(records[p].transcript.verdict)},
            {"calls", records[p].transcript.calls()},
            {"fallback", made[p].fallback}});
      gen.population.push_back(std::move(made[p]));
      gen.episodes.push_back(std::move(records[p]));
    }
  }

  // Evaluates (heuristic, instance) jobs and appends them to the table.
  std::vector<FitnessEntry> evaluate(const std::vector<std::pair<const Heuristic*, std::size_t>>& jobs) {
    std::vector<FitnessEntry> out(jobs.size());
    parallel_for(jobs.size(), cfg_.threads, [&](std::size_t j) {
      const auto& [h, i] = jobs[j];
      const FitnessResult r =
          evaluate_fitness(diving::Scorer::program(h->program), preps_[i], z_ref(i), cfg_.gap_cap, cfg_.d_max);
      out[j] = {h->id, i, r.fitness, r.objective};
    });
    emit({{"event", "evaluation"}, {"jobs", jobs.size()}});
    return out;
  }

  std::vector<std::pair<const Heuristic*, std::size_t>> all_instance_jobs(const std::vector<Heuristic>& hs,
                                                                          std::size_t from) const {
    std::vector<std::pair<const Heuristic*, std::size_t>> jobs;
    for (std::size_t h = from; h < hs.size(); ++h)
      for (std::size_t i = 0; i < cfg_.n; ++i) jobs.emplace_back(&hs[h], i);
    return jobs;
  }

  static double mean_fitness(const std::vector<FitnessEntry>& table, const std::string& id) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& e : table) {
      if (e.heuristic_id != id) continue;
      sum += e.fitness;
      ++count;
    }
    return count ? sum / static_cast<double>(count) : 0.0;
  }

  // Draws the operator and parents of one offspring slot from `pool`.
  SlotPlan plan_offspring(std::size_t g, std::size_t slot, const std::vector<Scored>& pool, bool can_cross,
                          std::optional<std::size_t> fixed_first) const {
    Rng rng(derive_seed(generation_seed(g), slot));
    SlotPlan plan;
    plan.slot = slot;
    const bool cross = can_cross && rng.bernoulli(cfg_.crossover_rate);
    plan.op = cross ? Operation::Crossover : Operation::Mutation;
    std::vector<double> fit;
    for (const auto& s : pool) fit.push_back(s.fitness);
    const std::size_t first = fixed_first ? *fixed_first : fitness_proportional(fit, cfg_.gap_cap, rng);
    plan.parents.push_back(pool[first].id);
    if (cross) {
      std::vector<std::size_t> rest;
      std::vector<double> rest_fit;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i == first) continue;
        rest.push_back(i);
        rest_fit.push_back(pool[i].fitness);
      }
      plan.parents.push_back(pool[rest[fitness_proportional(rest_fit, cfg_.gap_cap, rng)]].id);
    }
    return plan;
  }

  static std::size_t best_of(const std::vector<FitnessEntry>& entries) {
    std::size_t best = 0;
    for (std::size_t e = 1; e < entries.size(); ++e)
      if (entries[e].fitness > entries[best].fitness) best = e;
    return best;
  }

  // Averaged mode: the m best of the previous population and the offspring
  // by mean fitness; the previous population wins ties.
  std::vector<DataCodePair> retain(std::vector<DataCodePair> candidates) const {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const DataCodePair& a, const DataCodePair& b) { return a.fitness > b.fitness; });
    if (candidates.size() > cfg_.m) candidates.resize(cfg_.m);
    return candidates;
  }

  Generation first_generation() {
    Generation gen;
    gen.index = 1;
    std::vector<SlotPlan> init;
    for (std::size_t j = 0; j < cfg_.m; ++j) init.push_back({j, Operation::Init, {}});
    run_episodes(1, init, gen);
    for (const auto& h : gen.population) index_[h.id] = &h;

    // Initial population fitness.
    std::vector<std::pair<const Heuristic*, std::size_t>> jobs;
    if (per_instance()) {
      for (std::size_t j = 0; j < cfg_.m; ++j) jobs.emplace_back(&gen.population[j], j % cfg_.n);
    } else {
      jobs = all_instance_jobs(gen.population, 0);
    }
    gen.fitness = evaluate(jobs);
    std::vector<Scored> pool;
    for (const auto& h : gen.population) pool.push_back({h.id, mean_fitness(gen.fitness, h.id)});

    std::vector<SlotPlan> plans;
    for (std::size_t q = 0; q < cfg_.n * cfg_.offspring; ++q) {
      plans.push_back(plan_offspring(1, cfg_.m + q, pool, cfg_.m >= 2, std::nullopt));
    }
    // Population storage must not move while index_ points into it.
    gen.population.reserve(cfg_.m + plans.size());
    index_.clear();
    for (const auto& g : archive_.generations)
      for (const auto& h : g.population) index_[h.id] = &h;
    for (const auto& h : gen.population) index_[h.id] = &h;
    run_episodes(1, plans, gen);

    if (per_instance()) {
      jobs.clear();
      for (std::size_t q = 0; q < plans.size(); ++q) jobs.emplace_back(&gen.population[cfg_.m + q], q / cfg_.offspring);
      const auto table = evaluate(jobs);
      for (std::size_t i = 0; i < cfg_.n; ++i) {
        const std::vector<FitnessEntry> mine(table.begin() + static_cast<std::ptrdiff_t>(i * cfg_.offspring),
                                             table.begin() + static_cast<std::ptrdiff_t>((i + 1) * cfg_.offspring));
        const FitnessEntry& best = mine[best_of(mine)];
        gen.pairs.push_back({i, best.heuristic_id, best.fitness});
      }
      gen.fitness.insert(gen.fitness.end(), table.begin(), table.end());
      for (const auto& p : rank_topk_pairs(gen.pairs, cfg_.k)) gen.selected.push_back(p.instance);
    } else {
      const auto table = evaluate(all_instance_jobs(gen.population, cfg_.m));
      gen.fitness.insert(gen.fitness.end(), table.begin(), table.end());
      std::vector<DataCodePair> all;
      for (const auto& h : gen.population) all.push_back({0, h.id, mean_fitness(gen.fitness, h.id)});
      gen.pairs = retain(std::move(all));
    }
    return gen;
  }

  Generation later_generation(std::size_t g) {
    const Generation& prev = archive_.generations.back();
    Generation gen;
    gen.index = g;
    std::vector<SlotPlan> plans;
    std::vector<std::size_t> slot_instance;
    if (per_instance()) {
      std::vector<Scored> heads;
      for (std::size_t j : prev.selected) heads.push_back({prev.pairs[j].heuristic_id, prev.pairs[j].fitness});
      for (std::size_t r = 0; r < prev.selected.size(); ++r) {
        for (std::size_t o = 0; o < cfg_.offspring; ++o) {
          plans.push_back(plan_offspring(g, r * cfg_.offspring + o, heads, cfg_.k >= 2, r));
          slot_instance.push_back(prev.selected[r]);
        }
      }
    } else {
      std::vector<Scored> pool;
      for (const auto& p : prev.pairs) pool.push_back({p.heuristic_id, p.fitness});
      for (std::size_t q = 0; q < cfg_.k * cfg_.offspring; ++q) {
        plans.push_back(plan_offspring(g, q, pool, cfg_.k >= 2 && pool.size() >= 2, std::nullopt));
      }
    }
    gen.population.reserve(plans.size());
    run_episodes(g, plans, gen);

    if (per_instance()) {
      std::vector<std::pair<const Heuristic*, std::size_t>> jobs;
      for (std::size_t q = 0; q < plans.size(); ++q) jobs.emplace_back(&gen.population[q], slot_instance[q]);
      gen.fitness = evaluate(jobs);
      gen.pairs = prev.pairs;
      for (std::size_t r = 0; r < prev.selected.size(); ++r) {
        const std::vector<FitnessEntry> mine(
            gen.fitness.begin() + static_cast<std::ptrdiff_t>(r * cfg_.offspring),
            gen.fitness.begin() + static_cast<std::ptrdiff_t>((r + 1) * cfg_.offspring));
        const FitnessEntry& best = mine[best_of(mine)];
        DataCodePair& pair = gen.pairs[prev.selected[r]];
        if (best.fitness > pair.fitness) pair = {pair.instance, best.heuristic_id, best.fitness};
      }
      Rng rng(derive_seed(generation_seed(g), "select"));
      for (const auto& p : select_topk_pairs(gen.pairs, cfg_.k, cfg_.temperature, rng)) {
        gen.selected.push_back(p.instance);
      }
    } else {
      gen.fitness = evaluate(all_instance_jobs(gen.population, 0));
      std::vector<DataCodePair> all = prev.pairs;
      for (const auto& h : gen.population) all.push_back({0, h.id, mean_fitness(gen.fitness, h.id)});
      gen.pairs = retain(std::move(all));
    }
    return gen;
  }

  std::vector<PortfolioEntry> final_selection() { return final_select_impl(archive_, preps_, cfg_.k); }

 public:
  // Shared with the public final_select.
  static std::vector<PortfolioEntry> final_select_impl(const Archive& archive,
                                                       const std::vector<diving::DivePrep>& preps, std::size_t k) {
    if (archive.generations.empty()) fail(ErrorCode::TooFew, "archive has no generations");
    const EvolveConfig& cfg = archive.config;
    const Generation& last = archive.generations.back();

    std::vector<std::string> heads;
    std::vector<std::size_t> over;
    if (cfg.fitness_mode == FitnessMode::PerInstance) {
      for (std::size_t j : last.selected) {
        heads.push_back(last.pairs[j].heuristic_id);
        over.push_back(j);
      }
    } else {
      for (const auto& p : last.pairs) heads.push_back(p.heuristic_id);
      for (std::size_t i = 0; i < archive.instances.size(); ++i) over.push_back(i);
    }
    if (heads.size() > k) heads.resize(k);

    // Known fitness values, then dives for the missing combinations.
    std::map<std::pair<std::string, std::size_t>, double> known;
    for (const auto& g : archive.generations)
      for (const auto& e : g.fitness) known[{e.heuristic_id, e.instance}] = e.fitness;

    std::vector<PortfolioEntry> out;
    for (const auto& id : heads) {
      const Heuristic* h = archive.find(id);
      if (!h) fail(ErrorCode::SchemaMismatch, "portfolio head " + id + " missing from archive");
      PortfolioEntry entry;
      entry.heuristic_id = id;
      entry.generation = h->generation;
      entry.instances = over;
      entry.fitness.resize(over.size());
      parallel_for(over.size(), cfg.threads, [&](std::size_t q) {
        const std::size_t i = over[q];
        const auto it = known.find({id, i});
        if (it != known.end()) {
          entry.fitness[q] = it->second;
        } else {
          entry.fitness[q] = evaluate_fitness(diving::Scorer::program(h->program), preps.at(i),
                                              archive.instances[i].z_ref, cfg.gap_cap, cfg.d_max)
                                 .fitness;
        }
      });
      const auto s = metrics::summarize(entry.fitness);
      entry.f_avg = s.mean;
      entry.variance = s.variance;
      out.push_back(std::move(entry));
    }
    std::stable_sort(out.begin(), out.end(), [](const PortfolioEntry& a, const PortfolioEntry& b) {
      if (a.f_avg != b.f_avg) return a.f_avg > b.f_avg;
      return a.generation < b.generation;
    });
    return out;
  }

 private:
  EvolveConfig cfg_;
  std::span<const TrainingInstance> instances_;
  agents::Provider& provider_;
  const agents::PromptLibrary& prompts_;
  const EvolveHooks& hooks_;
  Archive archive_;
  std::vector<diving::DivePrep> preps_;
  std::map<std::string, const Heuristic*> index_;
};

}  // namespace

Archive run_dhevo(const EvolveConfig& cfg, std::span<const TrainingInstance> instances, agents::Provider& provider,
                  const agents::PromptLibrary& prompts, const EvolveHooks& hooks, const Archive* resume) {
  EvolveConfig c = cfg;
  c.fitness_mode = FitnessMode::PerInstance;
  return Engine(c, instances, provider, prompts, hooks, "dhevo").run(resume);
}

Archive run_baseline_ec(const EvolveConfig& cfg, std::span<const TrainingInstance> instances,
                        agents::Provider& provider, const agents::PromptLibrary& prompts, const EvolveHooks& hooks,
                        const Archive* resume) {
  EvolveConfig c = cfg;
  c.fitness_mode = FitnessMode::Averaged;
  return Engine(c, instances, provider, prompts, hooks, "baseline_ec").run(resume);
}

Archive run_evolution(const EvolveConfig& cfg, std::span<const TrainingInstance> instances,
                      agents::Provider& provider, const agents::PromptLibrary& prompts, const EvolveHooks& hooks,
                      const Archive* resume) {
  if (cfg.fitness_mode == FitnessMode::PerInstance) return run_dhevo(cfg, instances, provider, prompts, hooks, resume);
  return run_baseline_ec(cfg, instances, provider, prompts, hooks, resume);
}

std::vector<PortfolioEntry> final_select(const Archive& archive, std::span<const TrainingInstance> instances,
                                         std::size_t k) {
  if (instances.size() != archive.instances.size()) {
    fail(ErrorCode::DimensionMismatch, "instance count differs from the archive");
  }
  std::vector<diving::DivePrep> preps(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) preps[i] = diving::DivePrep::build(instances[i].instance);
  return Engine::final_select_impl(archive, preps, k);
}

AblationDiff compare_ablation(const Archive& a, const Archive& b) {
  AblationDiff d;
  auto problem = [&](std::string s) { d.problems.push_back(std::move(s)); };
  if (a.mode != "dhevo" || b.mode != "baseline_ec") problem("expected a dhevo archive and a baseline_ec archive");
  EvolveConfig ca = a.config;
  EvolveConfig cb = b.config;
  ca.fitness_mode = cb.fitness_mode;
  if (!(ca == cb)) problem("configurations differ beyond the fitness mode");
  if (a.instances.size() != b.instances.size()) {
    problem("instance sets differ");
  } else {
    for (std::size_t i = 0; i < a.instances.size(); ++i) {
      const auto& x = a.instances[i];
      const auto& y = b.instances[i];
      if (x.name != y.name || x.hash != y.hash || x.z_ref != y.z_ref) problem("instance " + std::to_string(i) + " differs");
    }
  }
  if (!a.complete || !b.complete) problem("both archives must be complete");
  if (a.generations.size() != b.generations.size()) problem("generation counts differ");
  if (a.episode_count() != b.episode_count()) problem("episode budgets differ");

  auto parent_code = [](const Archive& ar, const EpisodeRecord& e) {
    std::vector<std::string> code;
    for (const auto& id : e.parents) {
      const Heuristic* h = ar.find(id);
      code.push_back(h ? dsl::render(h->program) : "<missing " + id + ">");
    }
    return code;
  };
  auto same_transcript = [](const agents::Transcript& x, const agents::Transcript& y) {
    if (x.verdict != y.verdict || x.entries.size() != y.entries.size()) return false;
    for (std::size_t i = 0; i < x.entries.size(); ++i) {
      const auto& p = x.entries[i];
      const auto& q = y.entries[i];
      if (p.role != q.role || p.prompt != q.prompt || p.response != q.response || p.timestamp != q.timestamp) return false;
    }
    return true;
  };

  const std::size_t gens = std::min(a.generations.size(), b.generations.size());
  for (std::size_t g = 0; g < gens; ++g) {
    const auto& ea = a.generations[g].episodes;
    const auto& eb = b.generations[g].episodes;
    if (ea.size() != eb.size()) {
      problem("generation " + std::to_string(g + 1) + " episode counts differ");
      continue;
    }
    for (std::size_t e = 0; e < ea.size(); ++e) {
      const std::string where = "generation " + std::to_string(g + 1) + " slot " + std::to_string(ea[e].slot);
      if (ea[e].slot != eb[e].slot) {
        problem(where + ": slot order differs");
        continue;
      }
      if (ea[e].op != eb[e].op) problem(where + ": operator differs");
      if (parent_code(a, ea[e]) != parent_code(b, eb[e])) {
        ++d.divergent_episodes;
        continue;
      }
      ++d.matched_episodes;
      if (!same_transcript(ea[e].transcript, eb[e].transcript)) problem(where + ": same parents but transcripts differ");
    }
  }
  d.ok = d.problems.empty();
  return d;
}

}  // namespace dhevo::evolution
