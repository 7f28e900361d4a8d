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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dhevo/diving/features.hpp"
#include "dhevo/dsl/ast.hpp"

namespace dhevo::diving {

struct Score {
  double score = 0.0;
  bool roundup = false;
  /// Secondary key compared when scores tie exactly.
  double tiebreak = 0.0;
};

struct BuiltinScorer {
  std::string name;
  std::uint64_t seed = 0;
};

/// Selects the dive variable and its rounding direction.
class Scorer {
 public:
  /// name is one of fractional, coefficient, pseudocost, random; anything
  /// else throws UnknownScorer. `seed` only affects `random`.
  static Scorer builtin(std::string_view name, std::uint64_t seed = 0);
  static Scorer program(dsl::Program p);

  /// Accepts "builtin:<name>" or DSL source text.
  static Scorer from_spec(std::string_view spec, std::uint64_t seed = 0);

  Score score(const FeatureVector& fv, std::size_t var, std::size_t depth) const;

  bool is_builtin() const { return std::holds_alternative<BuiltinScorer>(kind_); }
  const BuiltinScorer& builtin_info() const { return std::get<BuiltinScorer>(kind_); }
  const dsl::Program& dsl_program() const { return std::get<dsl::Program>(kind_); }

  /// "builtin:<name>" or the rendered program.
  std::string describe() const;

 private:
  enum class BuiltinId : std::uint8_t { Fractional, Coefficient, Pseudocost, Random };

  std::variant<BuiltinScorer, dsl::Program> kind_;
  BuiltinId id_ = BuiltinId::Fractional;
};

const std::vector<std::string>& builtin_scorer_names();

}  // namespace dhevo::diving
