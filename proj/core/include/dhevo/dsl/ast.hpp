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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace dhevo::dsl {

enum class Kind : std::uint8_t { Number, Boolean };

/// Feature names in the order of the score-function signature.
enum class Feature : std::uint8_t {
  mayrounddown,
  mayroundup,
  candsfrac,
  candsol,
  nlocksdown,
  nlocksup,
  obj,
  objnorm,
  pscostdown,
  pscostup,
  rootsolval,
  nNonz,
  isBinary,
};

inline constexpr std::size_t kFeatureCount = 13;
inline constexpr std::size_t kMaxDepth = 24;
inline constexpr std::size_t kMaxNodes = 512;

std::string_view feature_name(Feature f);
std::optional<Feature> feature_from_name(std::string_view name);
Kind feature_kind(Feature f);
const std::array<Feature, kFeatureCount>& all_features();
const std::vector<Feature>& features_of_kind(Kind k);

enum class Op : std::uint8_t {
  // numeric
  Const,
  Feat,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Min,
  Max,
  Abs,
  If,
  // boolean
  BoolConst,
  BoolFeat,
  Not,
  And,
  Or,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
};

Kind result_kind(Op op);
std::size_t arity(Op op);

/// Value-semantic expression tree; `value` is used by Const/BoolConst and
/// `feature` by Feat/BoolFeat, both left at their defaults otherwise.
struct Node {
  Op op = Op::Const;
  double value = 0.0;
  Feature feature = Feature::mayrounddown;
  std::vector<Node> kids;

  static Node constant(double v);
  static Node boolean(bool b);
  static Node feature_ref(Feature f);
  static Node unary(Op op, Node a);
  static Node binary(Op op, Node a, Node b);
  static Node conditional(Node cond, Node then_branch, Node else_branch);

  Kind kind() const { return result_kind(op); }
  bool is_leaf() const { return kids.empty(); }

  bool operator==(const Node&) const = default;
};

struct Program {
  Node score;
  Node roundup;

  bool operator==(const Program&) const = default;
};

std::size_t depth(const Node& n);
std::size_t node_count(const Node& n);
std::size_t depth(const Program& p);
std::size_t node_count(const Program& p);

/// Kind rules hold at every node and the tree roots have the right kinds.
bool well_typed(const Node& n, Kind expected);
bool well_typed(const Program& p);

/// Throws LimitExceeded when depth or size caps are exceeded and TypeError
/// when the kinds do not check.
void validate(const Program& p);

std::size_t feature_reference_count(const Program& p);

}  // namespace dhevo::dsl
