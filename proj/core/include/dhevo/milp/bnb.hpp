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
#include <vector>

#include "dhevo/milp/instance.hpp"
#include "dhevo/milp/lp.hpp"

namespace dhevo::milp {

enum class MipStatus { Optimal, Feasible, Infeasible, Limit };

std::string_view to_string(MipStatus s);

struct MipSolution {
  MipStatus status = MipStatus::Infeasible;
  std::optional<std::vector<double>> incumbent;
  std::optional<double> objective;
  double dual_bound = -kInf;
  std::size_t nodes = 0;
};

struct BnbLimits {
  std::size_t max_nodes = 100000;
  double max_seconds = 60.0;
};

/// Reference LP-based branch-and-bound: best-bound node selection (ties by
/// creation order), most-fractional branching (ties by lowest index).
/// Feasible means a budget ran out with an incumbent; Limit means it ran out
/// without one. Throws Unbounded if the root relaxation is unbounded.
MipSolution solve_bnb(const Instance& inst, const BnbLimits& limits = {});

/// Exhaustive enumeration of the integer variables (at most 2^20
/// assignments); continuous variables are handled by an LP per assignment.
/// Throws TooLarge beyond that bound or when an integer domain is infinite.
MipSolution brute_force_opt(const Instance& inst);

inline constexpr double kBruteForceLimit = 1048576.0;  // 2^20

/// |z_LP - z*| for the root relaxation and the proven MILP optimum.
/// Throws Unsolved when either solve does not reach optimality.
double integrality_gap(const Instance& inst, const BnbLimits& limits = {});

}  // namespace dhevo::milp
