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

#include <span>
#include <vector>

#include "dhevo/common/rng.hpp"
#include "dhevo/evolution/archive.hpp"

namespace dhevo::evolution {

/// k distinct pairs drawn without replacement with probability proportional
/// to exp(fitness / temperature). Throws TooFew when fewer than k pairs
/// exist and InvalidArgument for a non-positive temperature.
std::vector<DataCodePair> select_topk_pairs(std::span<const DataCodePair> pairs, std::size_t k,
                                            double temperature, Rng& rng);

/// Exact rank order: fitness descending, ties by position.
std::vector<DataCodePair> rank_topk_pairs(std::span<const DataCodePair> pairs, std::size_t k);

/// Index drawn with probability proportional to fitness + gap_cap + 1e-6.
std::size_t fitness_proportional(std::span<const double> fitness, double gap_cap, Rng& rng);

}  // namespace dhevo::evolution
