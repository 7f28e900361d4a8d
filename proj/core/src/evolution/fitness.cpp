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

#include "dhevo/evolution/fitness.hpp"

#include <algorithm>

#include "dhevo/common/error.hpp"
#include "dhevo/metrics/metrics.hpp"

namespace dhevo::evolution {

Reference compute_reference(const milp::Instance& inst, const milp::BnbLimits& limits) {
  const milp::MipSolution sol = milp::solve_bnb(inst, limits);
  if (!sol.objective) {
    fail(ErrorCode::Unsolved, "no reference objective for " + inst.name + " (" + std::string(to_string(sol.status)) + ")");
  }
  return {*sol.objective, sol.status == milp::MipStatus::Optimal};
}

FitnessResult evaluate_fitness(const diving::Scorer& scorer, const diving::DivePrep& prep, double z_ref,
                               double gap_cap, std::size_t d_max) {
  const std::size_t depth = d_max == 0 ? diving::default_dmax(*prep.inst) : d_max;
  const diving::DiveResult r = diving::dive(prep, scorer, depth);
  FitnessResult out;
  out.objective = r.best_objective;
  out.fitness = r.best_objective ? -std::min(metrics::primal_gap(*r.best_objective, z_ref), gap_cap) : -gap_cap;
  // -0.0 and 0.0 must serialize identically.
  if (out.fitness == 0.0) out.fitness = 0.0;
  return out;
}

FitnessResult evaluate_fitness(const diving::Scorer& scorer, const milp::Instance& inst, double z_ref,
                               double gap_cap, std::size_t d_max) {
  return evaluate_fitness(scorer, diving::DivePrep::build(inst), z_ref, gap_cap, d_max);
}

}  // namespace dhevo::evolution
