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

#include "dhevo/agents/provider.hpp"

#include <array>

#include "dhevo/common/rng.hpp"
#include "dhevo/dsl/ops.hpp"
#include "dhevo/dsl/parser.hpp"
#include "dhevo/dsl/render.hpp"

namespace dhevo::agents {
namespace {

constexpr std::array<const char*, 6> kPlans = {
    "T1: favour variables whose fractional part is close to an integer and round toward it.",
    "T2: weight the objective coefficient against the lock counts and round in the safer direction.",
    "T3: combine both pseudocosts with the fractional part and prefer the cheaper direction.",
    "T4: reward agreement between the current value and the root LP value.",
    "T5: prefer binaries with few nonzeros and round up when up-locks are absent.",
    "T6: scale the objective by its norm and mix in the distance to the nearest integer.",
};

std::string describe(const dsl::Program& p) {
  std::string names;
  for (dsl::Feature f : dsl::all_features()) {
    bool used = false;
    auto visit = [&](auto&& self, const dsl::Node& n) -> void {
      if ((n.op == dsl::Op::Feat || n.op == dsl::Op::BoolFeat) && n.feature == f) used = true;
      for (const auto& k : n.kids) self(self, k);
    };
    visit(visit, p.score);
    visit(visit, p.roundup);
    if (!used) continue;
    if (!names.empty()) names += ", ";
    names += dsl::feature_name(f);
  }
  if (names.empty()) return "Constant score with a fixed rounding rule.";
  return "Scores candidates from " + names + ".";
}

std::string blocks(const std::string& description, const std::string& code) {
  return "<start_des>" + description + "</end_des>\n<start_code>" + code + "</end_code>";
}

dsl::Program parent_or_random(const std::vector<std::string>& code, std::size_t i, Rng& rng) {
  if (i < code.size()) {
    try {
      return dsl::parse(code[i]);
    } catch (const Error&) {
    }
  }
  return dsl::random_program(rng, 3);
}

}  // namespace

std::string MockProvider::complete(const ChatRequest& request) {
  Rng rng(derive_seed(seed_, request.nonce));
  if (fault_ == MockFault::Garbage) return "I would weight fractionality more heavily.";

  switch (request.role) {
    case Role::Designer:
      return std::string("Plan ") + kPlans[rng.below(kPlans.size())];
    case Role::Coder: {
      if (fault_ == MockFault::TypeErrorFirst && request.attempt == 0) {
        return "Here is the function.\n" + blocks("Adds one to the up-rounding flag.",
                                                  "score: mayroundup + 1 roundup: true");
      }
      dsl::Program p;
      switch (request.op) {
        case Operation::Init:
          p = dsl::random_program(rng, 2 + rng.below(3));
          break;
        case Operation::Mutation:
          p = dsl::mutate(parent_or_random(request.parent_code, 0, rng), rng);
          break;
        case Operation::Crossover: {
          const dsl::Program a = parent_or_random(request.parent_code, 0, rng);
          const dsl::Program b = parent_or_random(request.parent_code, 1, rng);
          p = dsl::crossover(a, b, rng);
          break;
        }
      }
      return "Here is the function.\n" + blocks(describe(p), dsl::render(p));
    }
    case Role::Reviewer:
      if (request.locally_valid) return "The code checks out.\nVERDICT: ACCEPT";
      return "The code has problems: " + request.diagnostics + "\nVERDICT: REVISE";
    case Role::Judge: {
      if (request.valid_codes.empty()) return "None of the candidates can be accepted.";
      const std::string& code = request.valid_codes.back();
      std::string description = "Final choice of the last valid candidate.";
      try {
        description = describe(dsl::parse(code));
      } catch (const Error&) {
      }
      return blocks(description, code);
    }
  }
  return {};
}

}  // namespace dhevo::agents
