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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dhevo::agents {

enum class Role { Designer, Coder, Reviewer, Judge };
enum class Operation { Init, Mutation, Crossover };

std::string_view to_string(Role r);
std::string_view to_string(Operation op);
Role parse_role(std::string_view s);
Operation parse_operation(std::string_view s);

/// Number of parents an operation consumes: 0, 1 or 2.
std::size_t parent_arity(Operation op);

struct ParentText {
  std::string description;
  std::string code;
};

/// Values substituted into templates. Slots not relevant to a role are empty.
struct PromptContext {
  std::vector<ParentText> parents;
  std::string plan;
  std::string diagnostics;
  std::string code;
  std::string history;
};

/// Replaces each {{name}} in `text` from `vars`. Throws MissingPlaceholder
/// for a slot with no value and ParseError for an unterminated slot.
std::string substitute(std::string_view text, const std::map<std::string, std::string>& vars);

/// Named templates: one per role (designer, coder, reviewer, judge), one per
/// operation (op_init, op_mutation, op_crossover), plus background,
/// features and contract.
class PromptLibrary {
 public:
  /// Templates compiled into the library.
  static PromptLibrary builtin();
  /// Builtin templates overridden by every *.txt file in `dir`.
  static PromptLibrary from_directory(const std::filesystem::path& dir);

  void set(std::string name, std::string text);
  bool contains(std::string_view name) const;
  /// Throws MissingTemplate.
  const std::string& get(std::string_view name) const;

  /// Full prompt for a role/operation pair.
  std::string render(Role role, Operation op, const PromptContext& ctx) const;
  /// Same, with the role given by template name (e.g. "coder").
  std::string render(std::string_view role, Operation op, const PromptContext& ctx) const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

}  // namespace dhevo::agents
