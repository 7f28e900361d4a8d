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
#include <map>
#include <vector>

#include "dhevo/milp/instance.hpp"

namespace dhevo::milp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

std::string_view to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;  // defined iff Optimal
  double objective = 0.0;  // defined iff Optimal
  std::size_t iterations = 0;
};

struct BoundOverride {
  double lb = -kInf;
  double ub = kInf;
};

/// Per-variable bound tightenings; intersected with the instance bounds,
/// so an override can never relax the model.
using BoundOverrides = std::map<std::size_t, BoundOverride>;

struct LpOptions {
  /// 0 selects 50 * (num_vars + num_cons).
  std::size_t max_iterations = 0;
  /// Consecutive degenerate pivots tolerated under largest-coefficient
  /// pricing before switching permanently to Bland's rule.
  std::size_t degenerate_switch = 50;
};

/// Solves the LP relaxation with a two-phase bounded-variable primal simplex
/// on a dense tableau. Optimal solutions are basic (vertices) and the run is
/// deterministic for identical inputs.
LpSolution solve_lp(const Instance& inst, const BoundOverrides& overrides = {},
                    const LpOptions& options = {});

}  // namespace dhevo::milp
