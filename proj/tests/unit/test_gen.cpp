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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "dhevo/common/error.hpp"
#include "dhevo/gen/generators.hpp"
#include "dhevo/io/json_io.hpp"
#include "dhevo/milp/bnb.hpp"
#include "dhevo/milp/lp.hpp"
#include "support/oracles.hpp"

using namespace dhevo;
using namespace dhevo::gen;

namespace {

std::size_t count_sense(const milp::Instance& inst, milp::Sense s) {
  return static_cast<std::size_t>(std::count(inst.sense.begin(), inst.sense.end(), s));
}

std::size_t count_int(const milp::Instance& inst) {
  return static_cast<std::size_t>(std::count(inst.is_int.begin(), inst.is_int.end(), true));
}

}  // namespace

TEST_SUITE("gen") {
  TEST_CASE("setcover shape and repair") {
    const milp::Instance inst = gen_setcover(50, 100, 0.05, 1);
    CHECK(inst.num_cons() == 50);
    CHECK(inst.num_vars() == 100);
    CHECK(count_sense(inst, milp::Sense::GE) == 50);
    CHECK(count_int(inst) == 100);
    std::vector<int> row_cover(50, 0), col_cover(100, 0);
    for (const auto& t : inst.cons) {
      ++row_cover[t.row];
      ++col_cover[t.col];
    }
    CHECK(*std::min_element(row_cover.begin(), row_cover.end()) >= 2);
    CHECK(*std::min_element(col_cover.begin(), col_cover.end()) >= 1);
    for (double c : inst.obj) {
      CHECK(c >= 1.0);
      CHECK(c <= 100.0);
      CHECK(c == std::floor(c));
    }
  }

  TEST_CASE("setcover with full density picks the cheapest column") {
    const milp::Instance inst = gen_setcover(3, 4, 1.0, 9);
    CHECK(inst.cons.size() == 12);
    const auto mip = milp::solve_bnb(inst);
    CHECK(*mip.objective == *std::min_element(inst.obj.begin(), inst.obj.end()));
  }

  TEST_CASE("setcover rejects too sparse specs") {
    CHECK_THROWS_AS(gen_setcover(10, 10, 0.1, 1), Error);
  }

  TEST_CASE("cauctions shape and prices") {
    const milp::Instance inst = gen_cauctions(20, 40, 3);
    CHECK(inst.num_cons() == 20);
    CHECK(inst.num_vars() == 40);
    CHECK(count_sense(inst, milp::Sense::LE) == 20);
    std::vector<int> size(40, 0);
    for (const auto& t : inst.cons) ++size[t.col];
    for (std::size_t b = 0; b < 40; ++b) {
      CHECK(size[b] >= 2);
      CHECK(size[b] <= 5);
      CHECK(-inst.obj[b] >= 0.5 * size[b]);
      CHECK(-inst.obj[b] <= 1.5 * size[b]);
    }
  }

  TEST_CASE("single-bid auction accepts the bid") {
    const milp::Instance inst = gen_cauctions(2, 1, 4);
    const auto mip = milp::solve_bnb(inst);
    REQUIRE(mip.incumbent);
    CHECK((*mip.incumbent)[0] == 1.0);
  }

  TEST_CASE("indset edge count and small optimum") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const milp::Instance inst = gen_indset(30, 2, seed);
      CHECK(inst.num_vars() == 30);
      CHECK(inst.num_cons() == 2 * (30 - 2));
    }
    const milp::Instance tree = gen_indset(5, 1, 8);
    CHECK(tree.num_cons() == 4);
    const auto oracle = testing::binary_enumeration(tree);
    REQUIRE(oracle);
    CHECK(*milp::solve_bnb(tree).objective == static_cast<double>(*oracle));
  }

  TEST_CASE("facilities shape and capacity slack") {
    const milp::Instance inst = gen_facilities(5, 8, 2);
    CHECK(inst.num_vars() == 5 + 5 * 8);
    CHECK(count_int(inst) == 5);
    CHECK(count_sense(inst, milp::Sense::EQ) == 8);
    CHECK(count_sense(inst, milp::Sense::LE) == 5);
    double cap = 0.0, demand = 0.0;
    // Row c < 8 is the assignment row of customer c; rows 8.. are capacity rows
    // where y_f carries -cap_f and x_{f,c} carries d_c.
    std::vector<double> dem(8, 0.0);
    for (const auto& t : inst.cons) {
      if (t.row < 8) continue;
      if (t.col < 5) {
        cap += -t.coef;
      } else {
        dem[(t.col - 5) % 8] = t.coef;
      }
    }
    for (double d : dem) demand += d;
    CHECK(cap >= 1.5 * demand - 1e-9);
  }

  TEST_CASE("single facility is forced open") {
    const milp::Instance inst = gen_facilities(1, 1, 5);
    const auto mip = milp::solve_bnb(inst);
    REQUIRE(mip.incumbent);
    CHECK((*mip.incumbent)[0] == 1.0);
    CHECK((*mip.incumbent)[1] == doctest::Approx(1.0));
  }

  TEST_CASE("facilities optimum equals open-pattern enumeration") {
    const milp::Instance inst = gen_facilities(3, 4, 6);
    double best = milp::kInf;
    for (int pattern = 0; pattern < 8; ++pattern) {
      milp::BoundOverrides ov;
      for (std::size_t f = 0; f < 3; ++f) {
        const double v = (pattern >> f) & 1;
        ov[f] = {v, v};
      }
      const auto lp = milp::solve_lp(inst, ov);
      if (lp.status == milp::LpStatus::Optimal) best = std::min(best, lp.objective);
    }
    CHECK(*milp::solve_bnb(inst).objective == doctest::Approx(best).epsilon(1e-9));
  }

  TEST_CASE("every family has its documented feasible point") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const milp::Instance sc = generate(preset(Family::Setcover, "tiny", seed));
      CHECK(milp::check_feasible(sc, std::vector<double>(sc.num_vars(), 1.0), 1e-9));
      const milp::Instance ca = generate(preset(Family::Cauctions, "tiny", seed));
      CHECK(milp::check_feasible(ca, std::vector<double>(ca.num_vars(), 0.0), 1e-9));
      const milp::Instance is = generate(preset(Family::Indset, "tiny", seed));
      CHECK(milp::check_feasible(is, std::vector<double>(is.num_vars(), 0.0), 1e-9));
      milp::Instance fa = generate(preset(Family::Facilities, "tiny", seed));
      milp::BoundOverrides all_open;
      for (std::size_t f = 0; f < 5; ++f) all_open[f] = {1.0, 1.0};
      CHECK(milp::solve_lp(fa, all_open).status == milp::LpStatus::Optimal);
    }
  }

  TEST_CASE("tiny presets have the documented sizes") {
    CHECK(generate(preset(Family::Setcover, "tiny", 1)).num_vars() == 40);
    CHECK(generate(preset(Family::Setcover, "tiny", 1)).num_cons() == 20);
    CHECK(generate(preset(Family::Cauctions, "tiny", 1)).num_vars() == 30);
    CHECK(generate(preset(Family::Indset, "tiny", 1)).num_vars() == 30);
    CHECK(generate(preset(Family::Facilities, "tiny", 1)).num_vars() == 5 + 40);
  }

  TEST_CASE("generation is deterministic and seed sensitive") {
    for (Family f : {Family::Setcover, Family::Cauctions, Family::Indset, Family::Facilities}) {
      const auto a = io::instance_to_json(generate(preset(f, "tiny", 42))).dump();
      const auto b = io::instance_to_json(generate(preset(f, "tiny", 42))).dump();
      CHECK(a == b);
    }
    std::set<std::string> hashes;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      hashes.insert(io::instance_hash(gen_setcover(20, 40, 0.05, seed)));
    }
    CHECK(hashes.size() >= 999);
  }

  TEST_CASE("family names parse") {
    CHECK(parse_family("indset") == Family::Indset);
    CHECK_FALSE(parse_family("knapsack").has_value());
    CHECK(to_string(Family::Facilities) == "facilities");
  }
}
