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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dhevo/agents/episode.hpp"
#include "dhevo/dsl/ast.hpp"
#include "dhevo/milp/bnb.hpp"

namespace dhevo::evolution {

enum class FitnessMode { PerInstance, Averaged };
std::string_view to_string(FitnessMode m);
FitnessMode parse_fitness_mode(std::string_view s);

struct EvolveConfig {
  std::size_t m = 4;           // initial population size
  std::size_t n = 6;           // instance count
  std::size_t k = 3;           // retained pairs
  std::size_t iterations = 3;  // generations, the first included
  double temperature = 1.0;
  double gap_cap = 10.0;
  std::uint64_t seed = 0;
  /// 0 selects min(500, |I| + 10) per instance.
  std::size_t d_max = 0;
  FitnessMode fitness_mode = FitnessMode::PerInstance;
  /// Candidates generated per pair and generation.
  std::size_t offspring = 4;
  double crossover_rate = 0.5;
  agents::EpisodeLimits limits;
  std::size_t threads = 1;

  /// Throws ConfigError when an invariant fails.
  void validate() const;
  bool operator==(const EvolveConfig&) const;
};

struct InstanceRecord {
  std::string name;
  std::string hash;  // content hash of the canonical instance JSON
  double z_ref = 0.0;
  bool proven = false;
};

struct Heuristic {
  std::string id;
  dsl::Program program;
  std::string description;
  agents::Operation origin = agents::Operation::Init;
  std::vector<std::string> parents;
  std::size_t generation = 0;
  /// Substituted random program after a failed episode.
  bool fallback = false;
};

struct EpisodeRecord {
  std::string heuristic_id;
  std::size_t slot = 0;
  agents::Operation op = agents::Operation::Init;
  std::vector<std::string> parents;
  agents::Transcript transcript;
  std::string error;
};

struct FitnessEntry {
  std::string heuristic_id;
  std::size_t instance = 0;
  double fitness = 0.0;
  std::optional<double> objective;
};

/// (instance, heuristic) unit with the heuristic's fitness on that instance.
struct DataCodePair {
  std::size_t instance = 0;
  std::string heuristic_id;
  double fitness = 0.0;
};

struct Generation {
  std::size_t index = 0;
  std::vector<Heuristic> population;
  std::vector<EpisodeRecord> episodes;
  std::vector<FitnessEntry> fitness;
  /// Current head per instance (per-instance mode) or the retained
  /// population scored by average fitness (averaged mode, instance unused).
  std::vector<DataCodePair> pairs;
  /// Instances of the retained pairs, in selection order.
  std::vector<std::size_t> selected;
};

struct PortfolioEntry {
  std::string heuristic_id;
  double f_avg = 0.0;
  double variance = 0.0;
  std::size_t generation = 0;
  std::vector<std::size_t> instances;
  std::vector<double> fitness;
};

struct Archive {
  static constexpr int kSchemaVersion = 1;

  std::string mode;  // "dhevo" or "baseline_ec"
  EvolveConfig config;
  std::string provider;
  std::vector<InstanceRecord> instances;
  std::vector<Generation> generations;
  std::vector<PortfolioEntry> portfolio;
  bool complete = false;

  const Heuristic* find(std::string_view id) const;
  std::size_t episode_count() const;
};

}  // namespace dhevo::evolution
