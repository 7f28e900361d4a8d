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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "dhevo/diving/features.hpp"
#include "dhevo/diving/scorer.hpp"
#include "dhevo/milp/instance.hpp"
#include "dhevo/milp/lp.hpp"

namespace dhevo::diving {

enum class Termination { Integral, Infeasible, DepthLimit };

std::string_view to_string(Termination t);

struct DiveSolution {
  std::vector<double> x;
  double objective = 0.0;
};

struct Fixing {
  std::size_t var = 0;
  bool roundup = false;
  double value = 0.0;  // LP value before the bound change
};

struct DiveResult {
  std::vector<DiveSolution> solutions;
  std::optional<double> best_objective;
  std::size_t depth_reached = 0;
  std::size_t lp_resolves = 0;
  Termination terminated_by = Termination::Infeasible;
  std::vector<Fixing> path;
};

/// Tolerance used when accepting dive solutions.
inline constexpr double kDiveFeasTol = 1e-6;

/// min(500, |I| + 10).
std::size_t default_dmax(const milp::Instance& inst);

/// Per-instance data reused across dives: locks, norms and the root LP.
struct DivePrep {
  const milp::Instance* inst = nullptr;
  FeatureContext features;
  milp::LpSolution root;

  static DivePrep build(const milp::Instance& inst);
};

/// Root-node dive: repeatedly tightens one fractional variable's bound and
/// re-solves, stopping on integrality, infeasibility or after d_max
/// re-solves. Never throws for solver outcomes.
DiveResult dive(const milp::Instance& inst, const Scorer& scorer, std::size_t d_max);
DiveResult dive(const DivePrep& prep, const Scorer& scorer, std::size_t d_max);

/// Rounds every fractional integer variable in a direction without locks,
/// preferring the direction that improves the objective. Returns the point
/// only if it is feasible.
std::optional<std::vector<double>> simple_round(const milp::Instance& inst, std::span<const double> x);
std::optional<std::vector<double>> simple_round(const milp::Instance& inst, const milp::LockCounts& locks,
                                                std::span<const double> x);

}  // namespace dhevo::diving
