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

#include "dhevo/agents/prompts.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "dhevo/common/error.hpp"

namespace dhevo::agents {

namespace detail {
const std::map<std::string, std::string>& builtin_prompt_files();
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Designer: return "Designer";
    case Role::Coder: return "Coder";
    case Role::Reviewer: return "Reviewer";
    case Role::Judge: return "Judge";
  }
  return "?";
}

std::string_view to_string(Operation op) {
  switch (op) {
    case Operation::Init: return "Init";
    case Operation::Mutation: return "Mutation";
    case Operation::Crossover: return "Crossover";
  }
  return "?";
}

Role parse_role(std::string_view s) {
  for (Role r : {Role::Designer, Role::Coder, Role::Reviewer, Role::Judge})
    if (to_string(r) == s) return r;
  fail(ErrorCode::InvalidArgument, "unknown role '" + std::string(s) + "'");
}

Operation parse_operation(std::string_view s) {
  for (Operation op : {Operation::Init, Operation::Mutation, Operation::Crossover})
    if (to_string(op) == s) return op;
  fail(ErrorCode::InvalidArgument, "unknown operation '" + std::string(s) + "'");
}

std::size_t parent_arity(Operation op) {
  switch (op) {
    case Operation::Init: return 0;
    case Operation::Mutation: return 1;
    case Operation::Crossover: return 2;
  }
  return 0;
}

std::string substitute(std::string_view text, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    const std::size_t close = text.find("}}", open + 2);
    if (close == std::string_view::npos) fail(ErrorCode::ParseError, "unterminated template slot");
    const std::string name(text.substr(open + 2, close - open - 2));
    const auto it = vars.find(name);
    if (it == vars.end()) fail(ErrorCode::MissingPlaceholder, name);
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

PromptLibrary PromptLibrary::builtin() {
  PromptLibrary lib;
  for (const auto& [name, text] : detail::builtin_prompt_files()) lib.set(name, text);
  return lib;
}

PromptLibrary PromptLibrary::from_directory(const std::filesystem::path& dir) {
  PromptLibrary lib = builtin();
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) fail(ErrorCode::IoError, "not a directory: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read " + entry.path().string());
    std::ostringstream ss;
    ss << in.rdbuf();
    lib.set(entry.path().stem().string(), ss.str());
  }
  return lib;
}

void PromptLibrary::set(std::string name, std::string text) { templates_[std::move(name)] = std::move(text); }

bool PromptLibrary::contains(std::string_view name) const { return templates_.find(name) != templates_.end(); }

const std::string& PromptLibrary::get(std::string_view name) const {
  const auto it = templates_.find(name);
  if (it == templates_.end()) fail(ErrorCode::MissingTemplate, std::string(name));
  return it->second;
}

std::string PromptLibrary::render(Role role, Operation op, const PromptContext& ctx) const {
  std::string name(to_string(role));
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return render(std::string_view(name), op, ctx);
}

std::string PromptLibrary::render(std::string_view role, Operation op, const PromptContext& ctx) const {
  const std::string& role_text = get(role);
  std::string op_name = "op_";
  for (char c : to_string(op)) op_name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  std::map<std::string, std::string> vars;
  auto parent_block = [&](std::size_t i) {
    if (i >= ctx.parents.size()) return std::string();
    const auto& p = ctx.parents[i];
    return "<start_des>" + p.description + "</end_des>\n<start_code>" + p.code + "</end_code>";
  };
  vars["parent_a"] = parent_block(0);
  vars["parent_b"] = parent_block(1);
  vars["features"] = substitute(get("features"), vars);
  vars["background"] = substitute(get("background"), vars);
  vars["contract"] = substitute(get("contract"), vars);
  vars["operation"] = substitute(get(op_name), vars);
  vars["plan"] = ctx.plan;
  vars["diagnostics"] = ctx.diagnostics;
  vars["code"] = ctx.code;
  vars["history"] = ctx.history;
  return substitute(role_text, vars);
}

}  // namespace dhevo::agents
