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

#include <optional>
#include <span>
#include <vector>

#include "dhevo/diving/dive.hpp"
#include "dhevo/diving/scorer.hpp"
#include "dhevo/evolution/archive.hpp"
#include "dhevo/milp/bnb.hpp"

namespace dhevo::evolution {

struct Reference {
  double z = 0.0;
  bool proven = false;
};

/// Best known objective from branch and bound; the incumbent is used when
/// the limits stop the search. Throws Unsolved when no incumbent exists.
Reference compute_reference(const milp::Instance& inst, const milp::BnbLimits& limits = {});

struct FitnessResult {
  double fitness = 0.0;
  std::optional<double> objective;
};

/// -min(primal gap of the dive's best solution, gap_cap); -gap_cap when the
/// dive finds nothing. d_max 0 selects the instance default.
FitnessResult evaluate_fitness(const diving::Scorer& scorer, const diving::DivePrep& prep, double z_ref,
                               double gap_cap, std::size_t d_max);
FitnessResult evaluate_fitness(const diving::Scorer& scorer, const milp::Instance& inst, double z_ref,
                               double gap_cap, std::size_t d_max);

}  // namespace dhevo::evolution
