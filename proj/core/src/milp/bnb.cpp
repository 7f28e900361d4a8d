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

#include "dhevo/milp/bnb.hpp"

#include <chrono>
#include <cmath>
#include <queue>

#include "dhevo/common/error.hpp"

namespace dhevo::milp {

std::string_view to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "Optimal";
    case MipStatus::Feasible: return "Feasible";
    case MipStatus::Infeasible: return "Infeasible";
    case MipStatus::Limit: return "Limit";
  }
  return "?";
}

namespace {

struct Node {
  double bound;
  std::size_t id;
  BoundOverrides overrides;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

double prune_tolerance(double incumbent) { return 1e-9 * std::max(1.0, std::abs(incumbent)); }

// Most fractional integer variable; nullopt when x is integral on the
// integer set.
std::optional<std::size_t> branching_variable(const Instance& inst, const std::vector<double>& x) {
  std::optional<std::size_t> best;
  double best_frac = kTolInt;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!inst.is_int[j]) continue;
    const double f = x[j] - std::floor(x[j]);
    const double dist = std::min(f, 1.0 - f);
    if (dist > best_frac) {
      best_frac = dist;
      best = j;
    }
  }
  return best;
}

std::vector<double> snap_integers(const Instance& inst, std::vector<double> x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (inst.is_int[j]) x[j] = std::round(x[j]);
  }
  return x;
}

}  // namespace

MipSolution solve_bnb(const Instance& inst, const BnbLimits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  MipSolution out;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t next_id = 0;
  open.push(Node{-kInf, next_id++, {}});
  double incumbent_value = kInf;

  bool budget_hit = false;
  while (!open.empty()) {
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (out.nodes >= limits.max_nodes || elapsed > limits.max_seconds) {
      budget_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent_value - prune_tolerance(incumbent_value)) continue;

    const LpSolution lp = solve_lp(inst, node.overrides);
    ++out.nodes;
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded) {
      if (node.id == 0) fail(ErrorCode::Unbounded, "root LP relaxation is unbounded");
      continue;
    }
    if (lp.status == LpStatus::IterLimit) {
      // Keep the node's parent bound; the subtree cannot be certified.
      budget_hit = true;
      open.push(std::move(node));
      break;
    }
    if (lp.objective >= incumbent_value - prune_tolerance(incumbent_value)) continue;

    const auto j = branching_variable(inst, lp.x);
    if (!j) {
      auto x = snap_integers(inst, lp.x);
      if (check_feasible(inst, x, 1e-6)) {
        incumbent_value = objective_value(inst, x);
        out.incumbent = std::move(x);
        out.objective = incumbent_value;
      }
      continue;
    }

    const double v = lp.x[*j];
    Node down{lp.objective, next_id++, node.overrides};
    auto& d = down.overrides[*j];
    d.ub = std::min(d.ub, std::floor(v));
    Node up{lp.objective, next_id++, std::move(node.overrides)};
    auto& u = up.overrides[*j];
    u.lb = std::max(u.lb, std::ceil(v));
    open.push(std::move(down));
    open.push(std::move(up));
  }

  if (!budget_hit) {
    if (out.incumbent) {
      out.status = MipStatus::Optimal;
      out.dual_bound = incumbent_value;
    } else {
      out.status = MipStatus::Infeasible;
      out.dual_bound = kInf;
    }
    return out;
  }

  double bound = incumbent_value;
  while (!open.empty()) {
    bound = std::min(bound, open.top().bound);
    open.pop();
  }
  out.dual_bound = bound;
  out.status = out.incumbent ? MipStatus::Feasible : MipStatus::Limit;
  return out;
}

MipSolution brute_force_opt(const Instance& inst) {
  std::vector<std::size_t> int_vars;
  double combos = 1.0;
  for (std::size_t j = 0; j < inst.num_vars(); ++j) {
    if (!inst.is_int[j]) continue;
    if (!std::isfinite(inst.lb[j]) || !std::isfinite(inst.ub[j])) {
      fail(ErrorCode::TooLarge, "integer variable " + std::to_string(j) + " has an infinite domain");
    }
    combos *= inst.ub[j] - inst.lb[j] + 1.0;
    int_vars.push_back(j);
  }
  if (combos > kBruteForceLimit) {
    fail(ErrorCode::TooLarge, "enumeration of " + std::to_string(combos) + " assignments exceeds 2^20");
  }

  bool has_continuous = int_vars.size() < inst.num_vars();
  MipSolution out;
  double best = kInf;

  std::vector<double> x(inst.num_vars(), 0.0);
  for (std::size_t j : int_vars) x[j] = inst.lb[j];

  for (;;) {
    ++out.nodes;
    if (has_continuous) {
      BoundOverrides fix;
      for (std::size_t j : int_vars) fix[j] = BoundOverride{x[j], x[j]};
      const LpSolution lp = solve_lp(inst, fix);
      if (lp.status == LpStatus::Unbounded) fail(ErrorCode::Unbounded, "continuous remainder is unbounded");
      if (lp.status == LpStatus::Optimal && lp.objective < best - 1e-12) {
        best = lp.objective;
        auto sol = lp.x;
        for (std::size_t j : int_vars) sol[j] = x[j];
        out.incumbent = std::move(sol);
      }
    } else if (check_feasible(inst, x, kTolFeas)) {
      const double z = objective_value(inst, x);
      if (z < best - 1e-12) {
        best = z;
        out.incumbent = x;
      }
    }

    // Odometer over the integer variables in index order.
    std::size_t k = 0;
    for (; k < int_vars.size(); ++k) {
      const std::size_t j = int_vars[k];
      if (x[j] < inst.ub[j]) {
        x[j] += 1.0;
        break;
      }
      x[j] = inst.lb[j];
    }
    if (k == int_vars.size()) break;
  }

  if (out.incumbent) {
    out.status = MipStatus::Optimal;
    out.objective = best;
    out.dual_bound = best;
  } else {
    out.status = MipStatus::Infeasible;
    out.dual_bound = kInf;
  }
  return out;
}

double integrality_gap(const Instance& inst, const BnbLimits& limits) {
  const LpSolution root = solve_lp(inst);
  if (root.status != LpStatus::Optimal) {
    fail(ErrorCode::Unsolved, "root LP status " + std::string(to_string(root.status)));
  }
  MipSolution mip;
  try {
    mip = solve_bnb(inst, limits);
  } catch (const Error& e) {
    fail(ErrorCode::Unsolved, e.what());
  }
  if (mip.status != MipStatus::Optimal || !mip.objective) {
    fail(ErrorCode::Unsolved, "branch-and-bound status " + std::string(to_string(mip.status)));
  }
  return std::abs(root.objective - *mip.objective);
}

}  // namespace dhevo::milp
