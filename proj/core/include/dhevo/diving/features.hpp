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
#include <span>
#include <vector>

#include "dhevo/milp/instance.hpp"

namespace dhevo::diving {

/// The 13 per-variable inputs of a diving score function.
struct FeatureVector {
  bool mayrounddown = false;
  bool mayroundup = false;
  double candsfrac = 0.0;
  double candsol = 0.0;
  std::size_t nlocksdown = 0;
  std::size_t nlocksup = 0;
  double obj = 0.0;
  double objnorm = 0.0;
  double pscostdown = 0.0;
  double pscostup = 0.0;
  double rootsolval = 0.0;
  std::size_t nNonz = 0;
  bool isBinary = false;

  bool operator==(const FeatureVector&) const = default;
};

/// Running averages of objective change per unit of bound movement,
/// zero-initialized and local to one dive.
class PseudocostState {
 public:
  explicit PseudocostState(std::size_t num_vars = 0);

  void record_down(std::size_t j, double objective_delta, double value_delta);
  void record_up(std::size_t j, double objective_delta, double value_delta);

  double down(std::size_t j) const;
  double up(std::size_t j) const;
  std::size_t down_count(std::size_t j) const { return down_count_.at(j); }
  std::size_t up_count(std::size_t j) const { return up_count_.at(j); }

 private:
  std::vector<double> down_sum_;
  std::vector<double> up_sum_;
  std::vector<std::size_t> down_count_;
  std::vector<std::size_t> up_count_;
};

/// Instance-level data shared by every extraction in a dive.
struct FeatureContext {
  const milp::Instance* inst = nullptr;
  milp::LockCounts locks;
  std::vector<std::size_t> nonzeros;
  double objnorm = 0.0;

  static FeatureContext build(const milp::Instance& inst);
};

bool is_fractional(double v);

/// Throws NotFractional when j is not an integer variable with a fractional
/// LP value. `root_x` may be empty (root LP unavailable), giving rootsolval 0.
FeatureVector extract_features(const FeatureContext& ctx, std::span<const double> lp_x,
                               std::span<const double> root_x, const PseudocostState& pscost,
                               std::size_t j);

FeatureVector extract_features(const milp::Instance& inst, std::span<const double> lp_x,
                               std::span<const double> root_x, const milp::LockCounts& locks,
                               const PseudocostState& pscost, std::size_t j);

}  // namespace dhevo::diving
