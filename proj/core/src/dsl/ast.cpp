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

#include "dhevo/dsl/ast.hpp"

#include <algorithm>

#include "dhevo/common/error.hpp"

namespace dhevo::dsl {
namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames = {
    "mayrounddown", "mayroundup", "candsfrac",  "candsol",    "nlocksdown", "nlocksup", "obj",
    "objnorm",      "pscostdown", "pscostup",   "rootsolval", "nNonz",      "isBinary"};

}  // namespace

std::string_view feature_name(Feature f) { return kNames[static_cast<std::size_t>(f)]; }

std::optional<Feature> feature_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

Kind feature_kind(Feature f) {
  switch (f) {
    case Feature::mayrounddown:
    case Feature::mayroundup:
    case Feature::isBinary:
      return Kind::Boolean;
    default:
      return Kind::Number;
  }
}

const std::array<Feature, kFeatureCount>& all_features() {
  static const std::array<Feature, kFeatureCount> all = [] {
    std::array<Feature, kFeatureCount> a{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) a[i] = static_cast<Feature>(i);
    return a;
  }();
  return all;
}

const std::vector<Feature>& features_of_kind(Kind k) {
  static const std::vector<Feature> numbers = [] {
    std::vector<Feature> v;
    for (Feature f : all_features())
      if (feature_kind(f) == Kind::Number) v.push_back(f);
    return v;
  }();
  static const std::vector<Feature> booleans = [] {
    std::vector<Feature> v;
    for (Feature f : all_features())
      if (feature_kind(f) == Kind::Boolean) v.push_back(f);
    return v;
  }();
  return k == Kind::Number ? numbers : booleans;
}

Kind result_kind(Op op) {
  return static_cast<std::uint8_t>(op) >= static_cast<std::uint8_t>(Op::BoolConst) ? Kind::Boolean
                                                                                   : Kind::Number;
}

std::size_t arity(Op op) {
  switch (op) {
    case Op::Const:
    case Op::Feat:
    case Op::BoolConst:
    case Op::BoolFeat:
      return 0;
    case Op::Neg:
    case Op::Abs:
    case Op::Not:
      return 1;
    case Op::If:
      return 3;
    default:
      return 2;
  }
}

Node Node::constant(double v) {
  Node n;
  n.op = Op::Const;
  n.value = v;
  return n;
}

Node Node::boolean(bool b) {
  Node n;
  n.op = Op::BoolConst;
  n.value = b ? 1.0 : 0.0;
  return n;
}

Node Node::feature_ref(Feature f) {
  Node n;
  n.op = feature_kind(f) == Kind::Number ? Op::Feat : Op::BoolFeat;
  n.feature = f;
  return n;
}

Node Node::unary(Op op, Node a) {
  Node n;
  n.op = op;
  n.kids.push_back(std::move(a));
  return n;
}

Node Node::binary(Op op, Node a, Node b) {
  Node n;
  n.op = op;
  n.kids.reserve(2);
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return n;
}

Node Node::conditional(Node cond, Node then_branch, Node else_branch) {
  Node n;
  n.op = Op::If;
  n.kids.reserve(3);
  n.kids.push_back(std::move(cond));
  n.kids.push_back(std::move(then_branch));
  n.kids.push_back(std::move(else_branch));
  return n;
}

std::size_t depth(const Node& n) {
  std::size_t d = 0;
  for (const auto& k : n.kids) d = std::max(d, depth(k));
  return d + 1;
}

std::size_t node_count(const Node& n) {
  std::size_t c = 1;
  for (const auto& k : n.kids) c += node_count(k);
  return c;
}

std::size_t depth(const Program& p) { return std::max(depth(p.score), depth(p.roundup)); }

std::size_t node_count(const Program& p) { return node_count(p.score) + node_count(p.roundup); }

bool well_typed(const Node& n, Kind expected) {
  if (n.kind() != expected || n.kids.size() != arity(n.op)) return false;
  switch (n.op) {
    case Op::Feat:
    case Op::BoolFeat:
      return feature_kind(n.feature) == expected;
    case Op::If:
      return well_typed(n.kids[0], Kind::Boolean) && well_typed(n.kids[1], Kind::Number) &&
             well_typed(n.kids[2], Kind::Number);
    case Op::Not:
    case Op::And:
    case Op::Or:
      return std::all_of(n.kids.begin(), n.kids.end(),
                         [](const Node& k) { return well_typed(k, Kind::Boolean); });
    default:
      return std::all_of(n.kids.begin(), n.kids.end(),
                         [](const Node& k) { return well_typed(k, Kind::Number); });
  }
}

bool well_typed(const Program& p) {
  return well_typed(p.score, Kind::Number) && well_typed(p.roundup, Kind::Boolean);
}

void validate(const Program& p) {
  if (!well_typed(p)) fail(ErrorCode::TypeError, "program does not type-check");
  if (depth(p) > kMaxDepth) {
    fail(ErrorCode::LimitExceeded, "AST depth " + std::to_string(depth(p)) + " exceeds " + std::to_string(kMaxDepth));
  }
  if (node_count(p) > kMaxNodes) {
    fail(ErrorCode::LimitExceeded,
         "AST has " + std::to_string(node_count(p)) + " nodes, limit " + std::to_string(kMaxNodes));
  }
}

namespace {

std::size_t count_features(const Node& n) {
  std::size_t c = (n.op == Op::Feat || n.op == Op::BoolFeat) ? 1 : 0;
  for (const auto& k : n.kids) c += count_features(k);
  return c;
}

}  // namespace

std::size_t feature_reference_count(const Program& p) {
  return count_features(p.score) + count_features(p.roundup);
}

}  // namespace dhevo::dsl
