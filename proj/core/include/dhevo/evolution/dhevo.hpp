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

#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "dhevo/agents/prompts.hpp"
#include "dhevo/agents/provider.hpp"
#include "dhevo/evolution/archive.hpp"
#include "dhevo/evolution/fitness.hpp"
#include "dhevo/milp/instance.hpp"

namespace dhevo::evolution {

struct TrainingInstance {
  milp::Instance instance;
  Reference reference;
  std::string hash;
};

/// Computes reference objectives (in parallel when threads > 1).
std::vector<TrainingInstance> prepare_instances(std::vector<milp::Instance> instances,
                                                const milp::BnbLimits& limits = {}, std::size_t threads = 1);

struct EvolveHooks {
  /// Called with the partial archive after every generation.
  std::function<void(const Archive&)> on_generation;
  /// Polled between generations; returning true stops the run with
  /// Interrupted after on_generation has seen the last complete generation.
  std::function<bool()> cancelled;
  /// One JSON object per episode, evaluation batch and generation.
  std::function<void(const nlohmann::json&)> on_event;
};

/// Per-instance co-evolution: an initial population, one generation of
/// instance-specific offspring with strict top-k pair selection, then
/// temperature-controlled re-selection with elitist pair updates. `resume`
/// continues a partial archive written by the same configuration.
Archive run_dhevo(const EvolveConfig& cfg, std::span<const TrainingInstance> instances, agents::Provider& provider,
                  const agents::PromptLibrary& prompts, const EvolveHooks& hooks = {},
                  const Archive* resume = nullptr);

/// Classic elitist EC on average fitness over all instances, with the same
/// generation structure and episode budget as run_dhevo.
Archive run_baseline_ec(const EvolveConfig& cfg, std::span<const TrainingInstance> instances,
                        agents::Provider& provider, const agents::PromptLibrary& prompts,
                        const EvolveHooks& hooks = {}, const Archive* resume = nullptr);

/// Dispatches on cfg.fitness_mode.
Archive run_evolution(const EvolveConfig& cfg, std::span<const TrainingInstance> instances,
                      agents::Provider& provider, const agents::PromptLibrary& prompts,
                      const EvolveHooks& hooks = {}, const Archive* resume = nullptr);

/// Portfolio of the last generation: the k retained heuristics scored by
/// mean fitness over the retained instances (all instances in averaged
/// mode), sorted descending, ties by earlier generation.
std::vector<PortfolioEntry> final_select(const Archive& archive, std::span<const TrainingInstance> instances,
                                         std::size_t k);

/// Episodes one run performs: m + n*offspring + (iterations-1)*k*offspring.
std::size_t episode_budget(const EvolveConfig& cfg);

/// Structured comparison of a per-instance run and a baseline run that
/// share seed, instances and budget.
struct AblationDiff {
  bool ok = false;
  std::vector<std::string> problems;
  /// Later-generation episodes whose parents matched, all of which must
  /// have identical transcripts.
  std::size_t matched_episodes = 0;
  /// Episodes whose parents differed because selection or fitness differed.
  std::size_t divergent_episodes = 0;
};

AblationDiff compare_ablation(const Archive& per_instance, const Archive& averaged);

}  // namespace dhevo::evolution
