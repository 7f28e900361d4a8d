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

#include "dhevo/dsl/ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dhevo/common/error.hpp"

namespace dhevo::dsl {
namespace {

using Path = std::vector<std::size_t>;

// Tree 0 is the score expression, tree 1 the roundup expression.
Node& tree(Program& p, int t) { return t == 0 ? p.score : p.roundup; }
const Node& tree(const Program& p, int t) { return t == 0 ? p.score : p.roundup; }

Node& at(Node& root, const Path& path) {
  Node* n = &root;
  for (std::size_t i : path) n = &n->kids[i];
  return *n;
}

struct Site {
  int tree;
  Path path;
};

void collect(const Node& n, int t, Path& path, std::vector<Site>& out) {
  out.push_back({t, path});
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    path.push_back(i);
    collect(n.kids[i], t, path, out);
    path.pop_back();
  }
}

std::vector<Site> all_sites(const Program& p) {
  std::vector<Site> out;
  Path path;
  collect(p.score, 0, path, out);
  collect(p.roundup, 1, path, out);
  return out;
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

double random_constant(Rng& rng) {
  if (rng.bernoulli(0.5)) return static_cast<double>(rng.range(0, 100));
  return std::round(rng.uniform(-10.0, 10.0) * 100.0) / 100.0;
}

Node random_leaf(Rng& rng, Kind kind) {
  const auto& feats = features_of_kind(kind);
  if (kind == Kind::Number) {
    if (rng.bernoulli(0.4)) return Node::constant(random_constant(rng));
    return Node::feature_ref(feats[rng.below(feats.size())]);
  }
  if (rng.bernoulli(0.2)) return Node::boolean(rng.bernoulli(0.5));
  return Node::feature_ref(feats[rng.below(feats.size())]);
}

constexpr std::array<Op, 9> kNumberOps = {Op::Neg, Op::Add, Op::Sub, Op::Mul, Op::Div,
                                          Op::Min, Op::Max, Op::Abs, Op::If};
constexpr std::array<Op, 8> kBoolOps = {Op::Not, Op::And, Op::Or, Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Eq};
constexpr std::array<Op, 6> kArithmetic = {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Min, Op::Max};
constexpr std::array<Op, 5> kComparisons = {Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Eq};
constexpr std::array<Op, 2> kConnectives = {Op::And, Op::Or};

// Grow method with a rising leaf probability and a shared node budget so
// deep draws stay well under the size cap.
Node grow(Rng& rng, Kind kind, std::size_t remaining, std::size_t max_depth, std::size_t& budget) {
  if (budget > 0) --budget;
  if (remaining <= 1 || budget < 4) return random_leaf(rng, kind);
  const double depth_frac = 1.0 - static_cast<double>(remaining) / static_cast<double>(max_depth);
  if (rng.bernoulli(0.3 + 0.6 * depth_frac)) return random_leaf(rng, kind);
  const Op op = kind == Kind::Number ? kNumberOps[rng.below(kNumberOps.size())]
                                     : kBoolOps[rng.below(kBoolOps.size())];
  Node n;
  n.op = op;
  const std::size_t r = remaining - 1;
  switch (op) {
    case Op::Neg:
    case Op::Abs:
      n.kids.push_back(grow(rng, Kind::Number, r, max_depth, budget));
      break;
    case Op::Not:
      n.kids.push_back(grow(rng, Kind::Boolean, r, max_depth, budget));
      break;
    case Op::If:
      n.kids.push_back(grow(rng, Kind::Boolean, r, max_depth, budget));
      n.kids.push_back(grow(rng, Kind::Number, r, max_depth, budget));
      n.kids.push_back(grow(rng, Kind::Number, r, max_depth, budget));
      break;
    case Op::And:
    case Op::Or:
      n.kids.push_back(grow(rng, Kind::Boolean, r, max_depth, budget));
      n.kids.push_back(grow(rng, Kind::Boolean, r, max_depth, budget));
      break;
    default:  // arithmetic and comparisons take numeric operands
      n.kids.push_back(grow(rng, Kind::Number, r, max_depth, budget));
      n.kids.push_back(grow(rng, Kind::Number, r, max_depth, budget));
      break;
  }
  return n;
}

template <std::size_t N>
bool contains(const std::array<Op, N>& set, Op op) {
  return std::find(set.begin(), set.end(), op) != set.end();
}

template <std::size_t N>
Op other_op(Rng& rng, const std::array<Op, N>& set, Op current) {
  std::vector<Op> choices;
  for (Op o : set)
    if (o != current) choices.push_back(o);
  return choices[rng.below(choices.size())];
}

bool within_limits(const Program& p) { return depth(p) <= kMaxDepth && node_count(p) <= kMaxNodes; }

std::vector<Site> filter(const Program& p, const std::vector<Site>& sites, auto pred) {
  std::vector<Site> out;
  for (const auto& s : sites) {
    const Node& n = at(const_cast<Node&>(tree(p, s.tree)), s.path);
    if (pred(n)) out.push_back(s);
  }
  return out;
}

// Attempts one edit of the given kind; false when no site admits it.
bool try_mutation(Program& child, Rng& rng, MutationKind kind, const std::vector<Site>& sites) {
  switch (kind) {
    case MutationKind::PerturbConstant: {
      const auto cands = filter(child, sites, [](const Node& n) { return n.op == Op::Const; });
      if (cands.empty()) return false;
      const Site& s = cands[rng.below(cands.size())];
      Node& n = at(tree(child, s.tree), s.path);
      const double old = n.value;
      double v = rng.bernoulli(0.5) ? old * rng.uniform(0.5, 2.0) : old + rng.uniform(-10.0, 10.0);
      v = round4(v);
      if (v == old) v = old + 1.0;
      n.value = v;
      return true;
    }
    case MutationKind::SwapOperator: {
      const auto cands = filter(child, sites, [](const Node& n) {
        return contains(kArithmetic, n.op) || contains(kComparisons, n.op) || contains(kConnectives, n.op);
      });
      if (cands.empty()) return false;
      const Site& s = cands[rng.below(cands.size())];
      Node& n = at(tree(child, s.tree), s.path);
      if (contains(kArithmetic, n.op)) {
        n.op = other_op(rng, kArithmetic, n.op);
      } else if (contains(kComparisons, n.op)) {
        n.op = other_op(rng, kComparisons, n.op);
      } else {
        n.op = other_op(rng, kConnectives, n.op);
      }
      return true;
    }
    case MutationKind::ReplaceFeature: {
      const auto cands =
          filter(child, sites, [](const Node& n) { return n.op == Op::Feat || n.op == Op::BoolFeat; });
      if (cands.empty()) return false;
      const Site& s = cands[rng.below(cands.size())];
      Node& n = at(tree(child, s.tree), s.path);
      std::vector<Feature> others;
      for (Feature f : features_of_kind(feature_kind(n.feature)))
        if (f != n.feature) others.push_back(f);
      n.feature = others[rng.below(others.size())];
      return true;
    }
    case MutationKind::Wrap: {
      const auto cands = filter(child, sites, [](const Node& n) { return n.kind() == Kind::Number; });
      if (cands.empty()) return false;
      const Site& s = cands[rng.below(cands.size())];
      Node& n = at(tree(child, s.tree), s.path);
      Node inner = std::move(n);
      switch (rng.below(3)) {
        case 0: n = Node::unary(Op::Abs, std::move(inner)); break;
        case 1: n = Node::binary(Op::Min, std::move(inner), random_leaf(rng, Kind::Number)); break;
        default: n = Node::binary(Op::Max, std::move(inner), random_leaf(rng, Kind::Number)); break;
      }
      return true;
    }
    case MutationKind::Graft: {
      const Site& s = sites[rng.below(sites.size())];
      Node& n = at(tree(child, s.tree), s.path);
      Node fresh = random_tree(rng, n.kind(), 3);
      if (fresh == n) return false;
      n = std::move(fresh);
      return true;
    }
  }
  return false;
}

void common_region(const Node& a, const Node& b, Path& path, std::vector<Path>& out) {
  if (a.kind() == b.kind()) out.push_back(path);
  if (a.kids.size() != b.kids.size()) return;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    path.push_back(i);
    common_region(a.kids[i], b.kids[i], path, out);
    path.pop_back();
  }
}

void crossover_tree(Node& child, const Node& donor, Rng& rng) {
  std::vector<Path> points;
  Path path;
  common_region(child, donor, path, points);
  if (points.empty()) return;
  // Prefer a proper subtree so the child is not simply a copy of the donor.
  std::vector<Path> inner;
  for (const auto& p : points)
    if (!p.empty()) inner.push_back(p);
  const auto& pool = inner.empty() ? points : inner;
  const Path& chosen = pool[rng.below(pool.size())];
  at(child, chosen) = at(const_cast<Node&>(donor), chosen);
}

Node leaf_of(Kind k) { return k == Kind::Number ? Node::constant(0.0) : Node::boolean(false); }

void cut_depth(Node& n, std::size_t level) {
  if (level >= kMaxDepth && !n.is_leaf()) {
    n = leaf_of(n.kind());
    return;
  }
  for (auto& k : n.kids) cut_depth(k, level + 1);
}

// Largest proper subtree of the larger tree; replaced by a leaf.
void cut_largest(Program& p) {
  Node& root = node_count(p.score) >= node_count(p.roundup) ? p.score : p.roundup;
  if (root.is_leaf()) return;
  Node* best = nullptr;
  std::size_t best_size = 0;
  auto visit = [&](auto&& self, Node& n) -> void {
    for (auto& k : n.kids) {
      const std::size_t s = node_count(k);
      if (s > best_size) {
        best_size = s;
        best = &k;
      }
      self(self, k);
    }
  };
  visit(visit, root);
  if (best) *best = leaf_of(best->kind());
}

}  // namespace

Node random_tree(Rng& rng, Kind kind, std::size_t max_depth) {
  if (max_depth == 0) fail(ErrorCode::InvalidArgument, "max_depth must be >= 1");
  std::size_t budget = kMaxNodes / 2 - 8;
  return grow(rng, kind, max_depth, max_depth, budget);
}

Program random_program(Rng& rng, std::size_t max_depth) {
  if (max_depth == 0 || max_depth > kMaxDepth) {
    fail(ErrorCode::InvalidArgument, "max_depth must be in [1, " + std::to_string(kMaxDepth) + "]");
  }
  Program p{random_tree(rng, Kind::Number, max_depth), random_tree(rng, Kind::Boolean, max_depth)};
  trim_to_limits(p);
  return p;
}

Program mutate(const Program& p, Rng& rng) {
  constexpr std::array<MutationKind, 5> kinds = {MutationKind::PerturbConstant, MutationKind::SwapOperator,
                                                 MutationKind::ReplaceFeature, MutationKind::Wrap,
                                                 MutationKind::Graft};
  return mutate(p, rng, kinds[rng.below(kinds.size())]);
}

Program mutate(const Program& p, Rng& rng, MutationKind preferred) {
  const auto sites = all_sites(p);
  MutationKind kind = preferred;
  for (int attempt = 0; attempt < 32; ++attempt) {
    Program child = p;
    // Wrapping or grafting under the same operator can show up as two edits.
    if (try_mutation(child, rng, kind, sites) && within_limits(child) && edit_sites(child, p) == 1) return child;
    kind = static_cast<MutationKind>(rng.below(5));
  }
  // Guaranteed single-site edit that cannot grow the program.
  Program child = p;
  if (child.score.op == Op::Const) {
    child.score.value = round4(child.score.value + 1.0);
    if (child.score == p.score) child.score.value += 1.0;
  } else {
    child.score = Node::constant(round4(random_constant(rng)));
  }
  return child;
}

Program crossover(const Program& a, const Program& b, Rng& rng) {
  Program child = a;
  const bool cross_score = rng.bernoulli(0.5);
  const bool cross_roundup = rng.bernoulli(0.5);
  if (cross_score) crossover_tree(child.score, b.score, rng);
  if (cross_roundup) crossover_tree(child.roundup, b.roundup, rng);
  trim_to_limits(child);
  return child;
}

void trim_to_limits(Program& p) {
  cut_depth(p.score, 1);
  cut_depth(p.roundup, 1);
  while (node_count(p) > kMaxNodes) cut_largest(p);
}

std::size_t edit_sites(const Node& a, const Node& b) {
  if (a.op != b.op || a.value != b.value || a.feature != b.feature || a.kids.size() != b.kids.size()) {
    return 1;
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.kids.size(); ++i) n += edit_sites(a.kids[i], b.kids[i]);
  return n;
}

std::size_t edit_sites(const Program& a, const Program& b) {
  return edit_sites(a.score, b.score) + edit_sites(a.roundup, b.roundup);
}

}  // namespace dhevo::dsl
