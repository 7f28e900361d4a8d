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
#include <vector>

#include "dhevo/agents/prompts.hpp"

namespace dhevo::agents {

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

/// One text-generation call. Besides the messages, the episode passes the
/// structured state it already holds; network providers ignore it, the mock
/// uses it in place of reading the prose.
struct ChatRequest {
  Role role = Role::Designer;
  Operation op = Operation::Init;
  std::vector<ChatMessage> messages;
  std::uint64_t nonce = 0;
  std::size_t attempt = 0;
  std::vector<std::string> parent_code;
  bool locally_valid = false;
  std::string diagnostics;
  std::vector<std::string> valid_codes;
};

class Provider {
 public:
  virtual ~Provider() = default;
  /// Returns the response text; throws HttpError/Timeout/QuotaExceeded or
  /// ProviderError on failure.
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

enum class MockFault {
  None,
  /// Every response lacks the block markers.
  Garbage,
  /// The first Coder answer of an episode contains a type error.
  TypeErrorFirst,
};

/// Deterministic role-aware responder. Each answer depends only on the seed
/// and the request nonce, so concurrent episodes reproduce exactly.
class MockProvider final : public Provider {
 public:
  explicit MockProvider(std::uint64_t seed, MockFault fault = MockFault::None)
      : seed_(seed), fault_(fault) {}

  std::string complete(const ChatRequest& request) override;
  std::string name() const override { return "mock"; }

 private:
  std::uint64_t seed_;
  MockFault fault_;
};

}  // namespace dhevo::agents
