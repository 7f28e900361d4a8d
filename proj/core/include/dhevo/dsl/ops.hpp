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
#include <vector>

#include "dhevo/common/rng.hpp"
#include "dhevo/dsl/ast.hpp"

namespace dhevo::dsl {

/// Grammar-directed random program; both trees have depth <= max_depth.
/// A depth-1 draw is a single literal or feature per tree.
Program random_program(Rng& rng, std::size_t max_depth);

/// Random tree of the given kind with depth <= max_depth.
Node random_tree(Rng& rng, Kind kind, std::size_t max_depth);

enum class MutationKind { PerturbConstant, SwapOperator, ReplaceFeature, Wrap, Graft };

/// Applies exactly one edit: perturb a constant, swap a binary operator,
/// replace a feature with one of the same kind, wrap a numeric subtree in
/// min/max/abs, or graft a fresh subtree of depth <= 3. The result differs
/// from `p` at exactly one site and satisfies every Program invariant.
Program mutate(const Program& p, Rng& rng);
Program mutate(const Program& p, Rng& rng, MutationKind preferred);

/// One-point subtree crossover: for each of the two trees (independently
/// with probability 1/2) a crossover point is drawn from the region where
/// both parents have the same shape and matching kinds, and a's subtree at
/// that point is replaced by b's. Oversized children are trimmed.
Program crossover(const Program& a, const Program& b, Rng& rng);

/// Cuts subtrees so that depth and node-count caps hold.
void trim_to_limits(Program& p);

/// Number of positions where two trees differ (a differing node counts once
/// and its subtree is not searched further).
std::size_t edit_sites(const Node& a, const Node& b);
std::size_t edit_sites(const Program& a, const Program& b);

}  // namespace dhevo::dsl
