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

#include "dhevo/diving/dive.hpp"

#include <algorithm>
#include <cmath>

namespace dhevo::diving {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Integral: return "Integral";
    case Termination::Infeasible: return "Infeasible";
    case Termination::DepthLimit: return "DepthLimit";
  }
  return "?";
}

std::size_t default_dmax(const milp::Instance& inst) {
  const auto ints = static_cast<std::size_t>(std::count(inst.is_int.begin(), inst.is_int.end(), true));
  return std::min<std::size_t>(500, ints + 10);
}

DivePrep DivePrep::build(const milp::Instance& inst) {
  DivePrep prep;
  prep.inst = &inst;
  prep.features = FeatureContext::build(inst);
  prep.root = milp::solve_lp(inst);
  return prep;
}

std::optional<std::vector<double>> simple_round(const milp::Instance& inst, const milp::LockCounts& locks,
                                                std::span<const double> x) {
  if (x.size() != inst.num_vars()) return std::nullopt;
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (!inst.is_int[j]) continue;
    if (!is_fractional(out[j])) {
      out[j] = std::round(out[j]);
      continue;
    }
    const bool can_down = locks.down[j] == 0;
    const bool can_up = locks.up[j] == 0;
    bool up;
    if (can_down && can_up) {
      up = inst.obj[j] < 0.0;
    } else if (can_down || can_up) {
      up = can_up;
    } else {
      return std::nullopt;
    }
    out[j] = up ? std::ceil(out[j]) : std::floor(out[j]);
  }
  if (!milp::check_feasible(inst, out, kDiveFeasTol)) return std::nullopt;
  return out;
}

std::optional<std::vector<double>> simple_round(const milp::Instance& inst, std::span<const double> x) {
  return simple_round(inst, milp::compute_locks(inst), x);
}

namespace {

std::vector<std::size_t> candidates(const milp::Instance& inst, const std::vector<double>& x) {
  std::vector<std::size_t> c;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (inst.is_int[j] && is_fractional(x[j])) c.push_back(j);
  return c;
}

void add_solution(DiveResult& r, const milp::Instance& inst, std::vector<double> x) {
  const double z = milp::objective_value(inst, x);
  if (!r.best_objective || z < *r.best_objective) r.best_objective = z;
  r.solutions.push_back({std::move(x), z});
}

}  // namespace

DiveResult dive(const DivePrep& prep, const Scorer& scorer, std::size_t d_max) {
  const milp::Instance& inst = *prep.inst;
  DiveResult result;
  if (prep.root.status != milp::LpStatus::Optimal) {
    result.terminated_by = Termination::Infeasible;
    return result;
  }
  PseudocostState pscost(inst.num_vars());
  milp::BoundOverrides bounds;
  std::vector<double> x = prep.root.x;
  double z = prep.root.objective;
  std::vector<std::size_t> cands = candidates(inst, x);
  if (cands.empty()) {
    if (auto s = simple_round(inst, prep.features.locks, x)) add_solution(result, inst, std::move(*s));
    result.terminated_by = Termination::Integral;
    return result;
  }

  bool infeasible = false;
  while (result.depth_reached < d_max && !cands.empty()) {
    std::size_t best = cands.front();
    Score best_score;
    bool first = true;
    for (std::size_t j : cands) {
      const FeatureVector fv = extract_features(prep.features, x, prep.root.x, pscost, j);
      const Score s = scorer.score(fv, j, result.depth_reached);
      if (first || s.score > best_score.score ||
          (s.score == best_score.score && s.tiebreak > best_score.tiebreak)) {
        best = j;
        best_score = s;
        first = false;
      }
    }

    const double v = x[best];
    const double frac = v - std::floor(v);
    auto& ov = bounds[best];
    if (best_score.roundup) {
      ov.lb = std::max(ov.lb, std::ceil(v));
    } else {
      ov.ub = std::min(ov.ub, std::floor(v));
    }
    result.path.push_back({best, best_score.roundup, v});

    const milp::LpSolution lp = milp::solve_lp(inst, bounds);
    ++result.lp_resolves;
    ++result.depth_reached;
    if (lp.status != milp::LpStatus::Optimal) {
      infeasible = true;
      break;
    }
    const double dz = lp.objective - z;
    if (best_score.roundup) {
      pscost.record_up(best, dz, 1.0 - frac);
    } else {
      pscost.record_down(best, dz, frac);
    }
    x = lp.x;
    z = lp.objective;
    cands = candidates(inst, x);
    if (auto s = simple_round(inst, prep.features.locks, x)) add_solution(result, inst, std::move(*s));
  }

  if (infeasible) {
    result.terminated_by = Termination::Infeasible;
  } else {
    result.terminated_by = cands.empty() ? Termination::Integral : Termination::DepthLimit;
  }
  return result;
}

DiveResult dive(const milp::Instance& inst, const Scorer& scorer, std::size_t d_max) {
  return dive(DivePrep::build(inst), scorer, d_max);
}

}  // namespace dhevo::diving
