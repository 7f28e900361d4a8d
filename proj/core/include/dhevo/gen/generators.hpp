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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "dhevo/milp/instance.hpp"

namespace dhevo::gen {

enum class Family { Setcover, Cauctions, Indset, Facilities };

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Weighted set cover: min c'x, every row covered by at least one chosen
/// column. The repair pass guarantees each row has >= 2 covering columns
/// and each column covers >= 1 row. Throws InfeasibleSpec when
/// density * cols < 2.
milp::Instance gen_setcover(std::size_t rows, std::size_t cols, double density, std::uint64_t seed);

/// Combinatorial auction as min sum(-price_b x_b), one <= 1 row per item.
milp::Instance gen_cauctions(std::size_t items, std::size_t bids, std::uint64_t seed);

/// Maximum independent set on a Barabasi-Albert graph (edge formulation).
milp::Instance gen_indset(std::size_t nodes, std::size_t affinity, std::uint64_t seed);

/// Capacitated facility location with binary open variables followed by
/// continuous assignment variables x_{f,c} at index n_fac + f * n_cust + c.
milp::Instance gen_facilities(std::size_t n_fac, std::size_t n_cust, std::uint64_t seed);

/// Family + named size parameters + seed; `params` keys per family:
/// setcover {rows, cols, density}, cauctions {items, bids},
/// indset {nodes, affinity}, facilities {facilities, customers}.
struct GenSpec {
  Family family = Family::Setcover;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
};

/// Named size presets: "tiny", "easy", "hard".
GenSpec preset(Family family, std::string_view name, std::uint64_t seed);

milp::Instance generate(const GenSpec& spec);

}  // namespace dhevo::gen
