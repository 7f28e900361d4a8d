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

#include "dhevo/evolution/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dhevo/common/error.hpp"

namespace dhevo::evolution {

std::vector<DataCodePair> select_topk_pairs(std::span<const DataCodePair> pairs, std::size_t k,
                                            double temperature, Rng& rng) {
  if (pairs.size() < k) {
    fail(ErrorCode::TooFew, "need " + std::to_string(k) + " pairs, have " + std::to_string(pairs.size()));
  }
  if (!(temperature > 0.0)) fail(ErrorCode::InvalidArgument, "temperature must be positive");
  if (k == pairs.size()) return {pairs.begin(), pairs.end()};

  std::vector<std::size_t> remaining(pairs.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<DataCodePair> out;
  std::vector<double> weights;
  while (out.size() < k) {
    // Shift by the maximum so the best weight is exactly 1 at any temperature.
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i : remaining) top = std::max(top, pairs[i].fitness);
    weights.clear();
    for (std::size_t i : remaining) weights.push_back(std::exp((pairs[i].fitness - top) / temperature));
    const std::size_t pick = rng.weighted(weights);
    out.push_back(pairs[remaining[pick]]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

std::vector<DataCodePair> rank_topk_pairs(std::span<const DataCodePair> pairs, std::size_t k) {
  if (pairs.size() < k) {
    fail(ErrorCode::TooFew, "need " + std::to_string(k) + " pairs, have " + std::to_string(pairs.size()));
  }
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pairs[a].fitness > pairs[b].fitness; });
  std::vector<DataCodePair> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(pairs[order[i]]);
  return out;
}

std::size_t fitness_proportional(std::span<const double> fitness, double gap_cap, Rng& rng) {
  if (fitness.empty()) fail(ErrorCode::TooFew, "no parents to select from");
  std::vector<double> w;
  w.reserve(fitness.size());
  for (double f : fitness) w.push_back(std::max(f + gap_cap, 0.0) + 1e-6);
  return rng.weighted(w);
}

}  // namespace dhevo::evolution
