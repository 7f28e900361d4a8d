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

#include "dhevo/diving/features.hpp"

#include <cmath>

#include "dhevo/common/error.hpp"

namespace dhevo::diving {

PseudocostState::PseudocostState(std::size_t num_vars)
    : down_sum_(num_vars, 0.0),
      up_sum_(num_vars, 0.0),
      down_count_(num_vars, 0),
      up_count_(num_vars, 0) {}

void PseudocostState::record_down(std::size_t j, double objective_delta, double value_delta) {
  if (value_delta <= 0.0) return;
  down_sum_.at(j) += objective_delta / value_delta;
  ++down_count_.at(j);
}

void PseudocostState::record_up(std::size_t j, double objective_delta, double value_delta) {
  if (value_delta <= 0.0) return;
  up_sum_.at(j) += objective_delta / value_delta;
  ++up_count_.at(j);
}

double PseudocostState::down(std::size_t j) const {
  return down_count_.at(j) ? down_sum_[j] / static_cast<double>(down_count_[j]) : 0.0;
}

double PseudocostState::up(std::size_t j) const {
  return up_count_.at(j) ? up_sum_[j] / static_cast<double>(up_count_[j]) : 0.0;
}

FeatureContext FeatureContext::build(const milp::Instance& inst) {
  FeatureContext ctx;
  ctx.inst = &inst;
  ctx.locks = milp::compute_locks(inst);
  ctx.nonzeros = milp::column_nonzeros(inst);
  double sq = 0.0;
  for (double c : inst.obj) sq += c * c;
  ctx.objnorm = std::sqrt(sq);
  return ctx;
}

bool is_fractional(double v) {
  const double f = v - std::floor(v);
  return f > milp::kTolInt && f < 1.0 - milp::kTolInt;
}

FeatureVector extract_features(const FeatureContext& ctx, std::span<const double> lp_x,
                               std::span<const double> root_x, const PseudocostState& pscost,
                               std::size_t j) {
  const milp::Instance& inst = *ctx.inst;
  if (j >= inst.num_vars() || lp_x.size() != inst.num_vars()) {
    fail(ErrorCode::DimensionMismatch, "feature extraction index or point size mismatch");
  }
  if (!inst.is_int[j] || !is_fractional(lp_x[j])) {
    fail(ErrorCode::NotFractional, "variable " + std::to_string(j));
  }
  FeatureVector fv;
  fv.candsol = lp_x[j];
  fv.candsfrac = lp_x[j] - std::floor(lp_x[j]);
  fv.nlocksdown = ctx.locks.down[j];
  fv.nlocksup = ctx.locks.up[j];
  fv.mayrounddown = fv.nlocksdown == 0;
  fv.mayroundup = fv.nlocksup == 0;
  fv.obj = inst.obj[j];
  fv.objnorm = ctx.objnorm;
  fv.pscostdown = pscost.down(j);
  fv.pscostup = pscost.up(j);
  fv.rootsolval = root_x.size() == inst.num_vars() ? root_x[j] : 0.0;
  fv.nNonz = ctx.nonzeros[j];
  fv.isBinary = inst.lb[j] == 0.0 && inst.ub[j] == 1.0;
  return fv;
}

FeatureVector extract_features(const milp::Instance& inst, std::span<const double> lp_x,
                               std::span<const double> root_x, const milp::LockCounts& locks,
                               const PseudocostState& pscost, std::size_t j) {
  FeatureContext ctx;
  ctx.inst = &inst;
  ctx.locks = locks;
  ctx.nonzeros = milp::column_nonzeros(inst);
  double sq = 0.0;
  for (double c : inst.obj) sq += c * c;
  ctx.objnorm = std::sqrt(sq);
  return extract_features(ctx, lp_x, root_x, pscost, j);
}

}  // namespace dhevo::diving
