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

#include <cmath>
#include <random>
#include <set>

#include "dhevo/common/error.hpp"
#include "dhevo/common/rng.hpp"
#include "dhevo/diving/dive.hpp"
#include "dhevo/diving/features.hpp"
#include "dhevo/diving/scorer.hpp"
#include "dhevo/dsl/ops.hpp"
#include "dhevo/dsl/parser.hpp"
#include "dhevo/gen/generators.hpp"
#include "dhevo/milp/lp.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"

using namespace dhevo;
using namespace dhevo::diving;
using dhevo::testing::two_var_fixture;

namespace {

FeatureVector with_frac(double sol) {
  FeatureVector fv;
  fv.candsol = sol;
  fv.candsfrac = sol - std::floor(sol);
  return fv;
}

bool integral_on_int_vars(const milp::Instance& inst, const std::vector<double>& x) {
  for (std::size_t j = 0; j < inst.num_vars(); ++j) {
    if (inst.is_int[j] && std::fabs(x[j] - std::round(x[j])) > milp::kTolInt) return false;
  }
  return true;
}

std::vector<milp::Instance> tiny_instances(std::size_t count, std::uint64_t seed) {
  std::vector<milp::Instance> out;
  const gen::Family fams[] = {gen::Family::Setcover, gen::Family::Cauctions, gen::Family::Indset,
                              gen::Family::Facilities};
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(gen::generate(gen::preset(fams[i % 4], "tiny", derive_seed(seed, i))));
  }
  return out;
}

}  // namespace

TEST_SUITE("diving") {
  TEST_CASE("features of the knapsack fixture at the interior point") {
    const milp::Instance inst = two_var_fixture();
    const std::vector<double> x{0.75, 0.75};
    const FeatureContext ctx = FeatureContext::build(inst);
    const PseudocostState ps(2);
    const FeatureVector fv = extract_features(ctx, x, x, ps, 0);
    CHECK(fv.candsfrac == 0.75);
    CHECK(fv.candsol == 0.75);
    CHECK(fv.nlocksup == 1);
    CHECK(fv.nlocksdown == 0);
    CHECK(fv.mayrounddown);
    CHECK_FALSE(fv.mayroundup);
    CHECK(fv.obj == -1.0);
    CHECK(fv.objnorm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(fv.nNonz == 1);
    CHECK(fv.isBinary);
    CHECK(fv.pscostdown == 0.0);
    CHECK(fv.pscostup == 0.0);
    CHECK(fv.rootsolval == 0.75);

    const FeatureVector no_root = extract_features(ctx, x, {}, ps, 0);
    CHECK(no_root.rootsolval == 0.0);
  }

  TEST_CASE("integral variables are not candidates") {
    const milp::Instance inst = two_var_fixture();
    const std::vector<double> x{1.0, 0.5};
    const FeatureContext ctx = FeatureContext::build(inst);
    const PseudocostState ps(2);
    CHECK_THROWS_AS(extract_features(ctx, x, x, ps, 0), Error);
    try {
      (void)extract_features(ctx, x, x, ps, 0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotFractional);
    }
  }

  TEST_CASE("pseudocost averages") {
    PseudocostState ps(3);
    CHECK(ps.down(1) == 0.0);
    ps.record_down(1, 2.0, 0.5);
    ps.record_down(1, 1.0, 0.25);
    CHECK(ps.down(1) == doctest::Approx((4.0 + 4.0) / 2.0));
    CHECK(ps.down_count(1) == 2);
    ps.record_up(2, 3.0, 0.75);
    CHECK(ps.up(2) == doctest::Approx(4.0));
    CHECK(ps.up(1) == 0.0);
  }

  TEST_CASE("builtin scorer formulas") {
    const Scorer frac = Scorer::builtin("fractional");
    const Score s = frac.score(with_frac(0.75), 0, 0);
    CHECK(s.score == doctest::Approx(-0.25));
    CHECK(s.roundup);
    CHECK_FALSE(frac.score(with_frac(2.5), 0, 0).roundup);

    const Scorer coef = Scorer::builtin("coefficient");
    FeatureVector fv = with_frac(0.3);
    fv.nlocksdown = 0;
    fv.nlocksup = 1;
    const Score c = coef.score(fv, 0, 0);
    CHECK(c.score == 0.0);
    CHECK_FALSE(c.roundup);
    fv.nlocksdown = 2;
    fv.nlocksup = 2;
    fv.candsol = 0.8;
    fv.candsfrac = 0.8;
    CHECK(coef.score(fv, 0, 0).roundup);  // tied locks fall back to the fractional rule

    const Scorer pc = Scorer::builtin("pseudocost");
    FeatureVector p = with_frac(0.25);
    p.pscostdown = 4.0;
    p.pscostup = 1.0;
    const Score ps = pc.score(p, 0, 0);
    CHECK(ps.score == doctest::Approx(-std::min(4.0 * 0.25, 1.0 * 0.75)));
    CHECK(ps.roundup);  // 1 * 0.75 < 4 * 0.25

    const Scorer r1 = Scorer::builtin("random", 3);
    const Scorer r2 = Scorer::builtin("random", 3);
    const double a = r1.score(with_frac(0.5), 4, 1).score;
    CHECK(a == r2.score(with_frac(0.5), 4, 1).score);
    CHECK(a >= 0.0);
    CHECK(a < 1.0);
    CHECK(a != r1.score(with_frac(0.5), 5, 1).score);
  }

  TEST_CASE("unknown scorer names are rejected") {
    try {
      (void)Scorer::builtin("farkas");
      FAIL("expected UnknownScorer");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownScorer);
    }
    CHECK(Scorer::from_spec("builtin:coefficient").describe() == "builtin:coefficient");
    CHECK_FALSE(Scorer::from_spec("score: candsfrac roundup: true").is_builtin());
  }

  TEST_CASE("dive on the knapsack fixture") {
    const milp::Instance inst = two_var_fixture();
    const DiveResult r = dive(inst, Scorer::builtin("fractional"), 10);
    REQUIRE(r.solutions.size() >= 1);
    CHECK(r.best_objective == -1.0);
    CHECK(r.terminated_by == Termination::Integral);
    const auto& best = r.solutions.back().x;
    CHECK(best == std::vector<double>{1.0, 0.0});
    CHECK(r.lp_resolves == r.path.size());
    CHECK(r.lp_resolves >= 1);
  }

  TEST_CASE("zero depth budget performs no resolves") {
    const DiveResult r = dive(two_var_fixture(), Scorer::builtin("fractional"), 0);
    CHECK(r.lp_resolves == 0);
    CHECK(r.depth_reached == 0);
    CHECK(r.terminated_by == Termination::DepthLimit);
  }

  TEST_CASE("a fixing that empties the polytope ends the dive") {
    milp::Instance inst = two_var_fixture();
    inst.obj = {1.0, 1.0};
    inst.sense = {milp::Sense::GE};
    inst.rhs = {3.0};  // 2x1 + 2x2 >= 3: any fractional variable rounded down is fatal
    const DiveResult r = dive(inst, Scorer::builtin("fractional"), 10);
    CHECK(r.terminated_by == Termination::Infeasible);
    CHECK(r.lp_resolves == 1);
    CHECK(r.solutions.empty());
  }

  TEST_CASE("infeasible roots end before any resolve") {
    milp::Instance inst = two_var_fixture();
    inst.sense = {milp::Sense::GE};
    inst.rhs = {5.0};
    const DiveResult r = dive(inst, Scorer::builtin("fractional"), 10);
    CHECK(r.terminated_by == Termination::Infeasible);
    CHECK(r.lp_resolves == 0);
  }

  TEST_CASE("simple rounding") {
    const milp::Instance inst = two_var_fixture();
    const std::vector<double> integral{1.0, 0.0};
    CHECK(simple_round(inst, integral) == integral);
    const std::vector<double> x{0.75, 0.0};
    CHECK(simple_round(inst, x) == std::vector<double>{0.0, 0.0});

    milp::Instance eq = two_var_fixture();
    eq.sense = {milp::Sense::EQ};
    const std::vector<double> y{0.75, 0.75};
    CHECK_FALSE(simple_round(eq, y).has_value());
  }

  TEST_CASE("simple rounding prefers the improving free direction") {
    milp::Instance inst = two_var_fixture();
    inst.cons.clear();
    inst.rhs.clear();
    inst.sense.clear();
    const std::vector<double> x{0.4, 0.6};
    CHECK(simple_round(inst, x) == std::vector<double>{1.0, 1.0});
    inst.obj = {1.0, 1.0};
    CHECK(simple_round(inst, x) == std::vector<double>{0.0, 0.0});
  }

  TEST_CASE("dive soundness on tiny instances") {
    std::vector<Scorer> scorers{Scorer::builtin("fractional"), Scorer::builtin("coefficient"),
                                Scorer::builtin("pseudocost"), Scorer::builtin("random", 1)};
    Rng rng(11);
    for (int i = 0; i < 4; ++i) scorers.push_back(Scorer::program(dsl::random_program(rng, 5)));
    for (const auto& inst : tiny_instances(16, 5)) {
      const DivePrep prep = DivePrep::build(inst);
      const std::size_t d_max = default_dmax(inst);
      for (const auto& scorer : scorers) {
        const DiveResult r = dive(prep, scorer, d_max);
        CHECK(r.lp_resolves <= d_max);
        std::optional<double> best;
        for (const auto& sol : r.solutions) {
          CHECK(milp::check_feasible(inst, sol.x, kDiveFeasTol));
          CHECK(integral_on_int_vars(inst, sol.x));
          CHECK(sol.objective == doctest::Approx(milp::objective_value(inst, sol.x)));
          if (!best || sol.objective < *best) best = sol.objective;
        }
        CHECK(best == r.best_objective);
      }
    }
  }

  TEST_CASE("LP objective never improves along a dive and fixed binaries stay fixed") {
    for (const auto& inst : tiny_instances(8, 9)) {
      const DiveResult r = dive(inst, Scorer::builtin("coefficient"), default_dmax(inst));
      milp::BoundOverrides ov;
      double prev = milp::solve_lp(inst).objective;
      std::set<std::size_t> fixed;
      for (const auto& f : r.path) {
        CHECK(fixed.insert(f.var).second);
        if (f.roundup) {
          ov[f.var].lb = std::ceil(f.value);
        } else {
          ov[f.var].ub = std::floor(f.value);
        }
        const auto lp = milp::solve_lp(inst, ov);
        if (lp.status != milp::LpStatus::Optimal) break;
        CHECK(lp.objective >= prev - 1e-7);
        prev = lp.objective;
      }
    }
  }

  TEST_CASE("feature invariants hold at the root of every tiny family") {
    for (const auto& inst : tiny_instances(8, 3)) {
      const auto lp = milp::solve_lp(inst);
      REQUIRE(lp.status == milp::LpStatus::Optimal);
      const FeatureContext ctx = FeatureContext::build(inst);
      const PseudocostState ps(inst.num_vars());
      double norm = 0;
      for (double c : inst.obj) norm += c * c;
      for (std::size_t j = 0; j < inst.num_vars(); ++j) {
        if (!inst.is_int[j] || !is_fractional(lp.x[j])) continue;
        const FeatureVector fv = extract_features(ctx, lp.x, lp.x, ps, j);
        CHECK(std::fabs(fv.candsfrac - (fv.candsol - std::floor(fv.candsol))) <= milp::kTolInt);
        CHECK(fv.candsfrac >= 0.0);
        CHECK(fv.candsfrac < 1.0);
        CHECK(fv.mayrounddown == (fv.nlocksdown == 0));
        CHECK(fv.mayroundup == (fv.nlocksup == 0));
        CHECK(fv.objnorm == doctest::Approx(std::sqrt(norm)));
      }
    }
  }

  TEST_CASE("default depth limit") {
    CHECK(default_dmax(two_var_fixture()) == 12);
    CHECK(default_dmax(gen::gen_setcover(20, 1000, 0.05, 1)) == 500);
  }
}
