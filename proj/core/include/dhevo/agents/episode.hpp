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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dhevo/agents/prompts.hpp"
#include "dhevo/agents/provider.hpp"
#include "dhevo/diving/features.hpp"
#include "dhevo/dsl/ast.hpp"

namespace dhevo::agents {

struct Blocks {
  std::string description;
  std::string code;
};

/// First description and code blocks of a response, whitespace-trimmed.
/// Throws MarkerMissing naming the missing block ("description" or "code").
Blocks extract_blocks(std::string_view response);

/// Fixed inputs on which the Reviewer evaluates every candidate.
const std::vector<diving::FeatureVector>& probe_vectors();

struct CodeCheck {
  bool ok = false;
  std::string diagnostics;
  std::optional<dsl::Program> program;
};

/// Parse, type check and probe evaluation of DSL source.
CodeCheck check_code(std::string_view code);

struct EpisodeLimits {
  std::size_t max_rounds = 3;
  std::size_t max_retries = 3;
  std::size_t call_budget = 10;
};

struct TranscriptEntry {
  Role role = Role::Designer;
  std::string prompt;
  std::string response;
  /// Logical clock: position of the call within the episode.
  std::uint64_t timestamp = 0;
};

enum class Verdict { Accepted, Revised, Discarded };
std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view s);

struct Transcript {
  std::vector<TranscriptEntry> entries;
  Verdict verdict = Verdict::Discarded;

  std::size_t calls() const { return entries.size(); }
};

struct Candidate {
  dsl::Program program;
  std::string description;
  Transcript transcript;
  Operation origin = Operation::Init;
};

struct EpisodeOutcome {
  std::optional<Candidate> candidate;
  Transcript transcript;
  std::string error;
};

/// Designer plans, Coder and Reviewer iterate for up to max_rounds, and the
/// Judge decides when no round was accepted. `nonce` seeds every provider
/// call. Provider errors propagate; an unusable episode is reported through
/// the outcome rather than thrown.
EpisodeOutcome try_run_episode(Operation op, std::span<const Candidate> parents, Provider& provider,
                               const EpisodeLimits& limits, std::uint64_t nonce,
                               const PromptLibrary& prompts);

/// As above but throws EpisodeFailed when no candidate results.
Candidate run_episode(Operation op, std::span<const Candidate> parents, Provider& provider,
                      const EpisodeLimits& limits, std::uint64_t nonce, const PromptLibrary& prompts);

}  // namespace dhevo::agents
