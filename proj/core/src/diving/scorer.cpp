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

#include "dhevo/diving/scorer.hpp"

#include <algorithm>
#include <cmath>

#include "dhevo/common/error.hpp"
#include "dhevo/common/rng.hpp"
#include "dhevo/dsl/eval.hpp"
#include "dhevo/dsl/parser.hpp"
#include "dhevo/dsl/render.hpp"

namespace dhevo::diving {
namespace {

Score fractional_rule(const FeatureVector& fv) {
  return {-std::abs(fv.candsol - std::round(fv.candsol)), fv.candsfrac > 0.5, 0.0};
}

}  // namespace

const std::vector<std::string>& builtin_scorer_names() {
  static const std::vector<std::string> names = {"fractional", "coefficient", "pseudocost", "random"};
  return names;
}

Scorer Scorer::builtin(std::string_view name, std::uint64_t seed) {
  Scorer s;
  if (name == "fractional") {
    s.id_ = BuiltinId::Fractional;
  } else if (name == "coefficient") {
    s.id_ = BuiltinId::Coefficient;
  } else if (name == "pseudocost") {
    s.id_ = BuiltinId::Pseudocost;
  } else if (name == "random") {
    s.id_ = BuiltinId::Random;
  } else {
    fail(ErrorCode::UnknownScorer, std::string(name));
  }
  s.kind_ = BuiltinScorer{std::string(name), seed};
  return s;
}

Scorer Scorer::program(dsl::Program p) {
  dsl::validate(p);
  Scorer s;
  s.kind_ = std::move(p);
  return s;
}

Scorer Scorer::from_spec(std::string_view spec, std::uint64_t seed) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.starts_with(prefix)) return builtin(spec.substr(prefix.size()), seed);
  return program(dsl::parse(spec));
}

Score Scorer::score(const FeatureVector& fv, std::size_t var, std::size_t depth) const {
  if (const auto* prog = std::get_if<dsl::Program>(&kind_)) {
    const auto out = dsl::eval(*prog, fv);
    return {out.score, out.roundup, 0.0};
  }
  switch (id_) {
    case BuiltinId::Fractional:
      return fractional_rule(fv);
    case BuiltinId::Coefficient: {
      const Score frac = fractional_rule(fv);
      const double locks = static_cast<double>(std::min(fv.nlocksdown, fv.nlocksup));
      const bool roundup =
          fv.nlocksup == fv.nlocksdown ? frac.roundup : fv.nlocksup < fv.nlocksdown;
      return {-locks, roundup, frac.score};
    }
    case BuiltinId::Pseudocost: {
      const double down = fv.pscostdown * fv.candsfrac;
      const double up = fv.pscostup * (1.0 - fv.candsfrac);
      return {-std::min(down, up), up < down, fractional_rule(fv).score};
    }
    case BuiltinId::Random: {
      const std::uint64_t h = derive_seed(derive_seed(std::get<BuiltinScorer>(kind_).seed, var), depth);
      const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
      return {u, fv.candsfrac > 0.5, 0.0};
    }
  }
  return {};
}

std::string Scorer::describe() const {
  if (const auto* b = std::get_if<BuiltinScorer>(&kind_)) return "builtin:" + b->name;
  return dsl::render(std::get<dsl::Program>(kind_));
}

}  // namespace dhevo::diving
