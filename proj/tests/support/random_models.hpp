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
#include <random>
#include <string>
#include <vector>

#include "dhevo/gen/generators.hpp"
#include "dhevo/milp/instance.hpp"

namespace dhevo::testing {

// Random LP with 1..4 variables and 0..4 rows; lower bounds are always
// finite, upper bounds sometimes infinite, so all three statuses occur.
inline milp::Instance random_small_lp(std::mt19937_64& g) {
  std::uniform_int_distribution<int> nv(1, 4), nr(0, 4), coef(-4, 4), rhs(-4, 9), pick(0, 5);
  milp::Instance inst;
  inst.name = "lp";
  const int n = nv(g);
  const int m = nr(g);
  for (int j = 0; j < n; ++j) {
    inst.obj.push_back(coef(g));
    const int b = pick(g);
    inst.lb.push_back(b == 0 ? -2.0 : (b == 1 ? 1.0 : 0.0));
    const int u = pick(g);
    inst.ub.push_back(u <= 1 ? milp::kInf : (u == 2 ? 3.0 : 5.0));
    inst.is_int.push_back(false);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int a = coef(g);
      if (a != 0) inst.cons.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), double(a)});
    }
    inst.rhs.push_back(rhs(g));
    const int s = pick(g);
    inst.sense.push_back(s <= 2 ? milp::Sense::LE : (s <= 4 ? milp::Sense::GE : milp::Sense::EQ));
  }
  return inst;
}

// Random pure-binary model with up to 12 variables and 10 rows.
inline milp::Instance random_binary_ip(std::mt19937_64& g) {
  std::uniform_int_distribution<int> nv(2, 12), nr(1, 10), coef(-5, 6), obj(-9, 9), pick(0, 3);
  milp::Instance inst;
  inst.name = "bip";
  const int n = nv(g);
  const int m = nr(g);
  for (int j = 0; j < n; ++j) {
    inst.obj.push_back(obj(g));
    inst.lb.push_back(0.0);
    inst.ub.push_back(1.0);
    inst.is_int.push_back(true);
  }
  for (int i = 0; i < m; ++i) {
    double sum_pos = 0;
    for (int j = 0; j < n; ++j) {
      const int a = coef(g);
      if (a == 0) continue;
      if (a > 0) sum_pos += a;
      inst.cons.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), double(a)});
    }
    std::uniform_int_distribution<int> r(0, static_cast<int>(sum_pos) + 1);
    const int s = pick(g);
    inst.sense.push_back(s == 0 ? milp::Sense::GE : milp::Sense::LE);
    inst.rhs.push_back(s == 0 ? r(g) / 3 : r(g));
  }
  return inst;
}

// Family instances small enough for exhaustive enumeration (<= 12 integer
// variables, <= 10 rows), cycling through the four families.
inline milp::Instance oracle_sized_family_instance(std::size_t i, std::uint64_t seed) {
  switch (i % 4) {
    case 0: return gen::gen_setcover(6, 10, 0.3, seed);
    case 1: return gen::gen_cauctions(5, 10, seed);
    case 2: return gen::gen_indset(6, 2, seed);
    default: return gen::gen_facilities(3, 4, seed);
  }
}

}  // namespace dhevo::testing
