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

#include "dhevo/agents/episode.hpp"

#include <cmath>

#include "dhevo/common/error.hpp"
#include "dhevo/common/rng.hpp"
#include "dhevo/dsl/eval.hpp"
#include "dhevo/dsl/parser.hpp"
#include "dhevo/dsl/render.hpp"

namespace dhevo::agents {
namespace {

constexpr std::string_view kDesStart = "<start_des>";
constexpr std::string_view kDesEnd = "</end_des>";
constexpr std::string_view kCodeStart = "<start_code>";
constexpr std::string_view kCodeEnd = "</end_code>";
constexpr std::string_view kSystemMessage =
    "You are one agent in a team that designs scoring functions for MILP diving heuristics.";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<std::string> block(std::string_view text, std::string_view open, std::string_view close) {
  const auto a = text.find(open);
  if (a == std::string_view::npos) return std::nullopt;
  const auto b = text.find(close, a + open.size());
  if (b == std::string_view::npos) return std::nullopt;
  return trim(text.substr(a + open.size(), b - a - open.size()));
}

diving::FeatureVector probe(bool down, bool up, double sol, std::size_t ldown, std::size_t lup, double obj,
                            double ps_down, double ps_up, double root, std::size_t nnz, bool binary) {
  diving::FeatureVector fv;
  fv.mayrounddown = down;
  fv.mayroundup = up;
  fv.candsol = sol;
  fv.candsfrac = sol - std::floor(sol);
  fv.nlocksdown = ldown;
  fv.nlocksup = lup;
  fv.obj = obj;
  fv.objnorm = 12.5;
  fv.pscostdown = ps_down;
  fv.pscostup = ps_up;
  fv.rootsolval = root;
  fv.nNonz = nnz;
  fv.isBinary = binary;
  return fv;
}

// Reviewer verdict: the last VERDICT line wins.
bool reviewer_accepts(std::string_view response) {
  const auto accept = response.rfind("VERDICT: ACCEPT");
  const auto revise = response.rfind("VERDICT: REVISE");
  if (accept == std::string_view::npos) return false;
  return revise == std::string_view::npos || accept > revise;
}

}  // namespace

Blocks extract_blocks(std::string_view response) {
  auto des = block(response, kDesStart, kDesEnd);
  if (!des) fail(ErrorCode::MarkerMissing, "description");
  auto code = block(response, kCodeStart, kCodeEnd);
  if (!code) fail(ErrorCode::MarkerMissing, "code");
  return {std::move(*des), std::move(*code)};
}

const std::vector<diving::FeatureVector>& probe_vectors() {
  static const std::vector<diving::FeatureVector> probes = {
      probe(true, true, 0.01, 0, 0, 0.0, 0.0, 0.0, 0.0, 1, true),
      probe(true, false, 0.5, 0, 3, -1.0, 0.0, 0.0, 0.5, 4, true),
      probe(false, true, 0.99, 2, 0, 7.0, 1.5, 0.25, 1.0, 9, true),
      probe(false, false, 0.5, 5, 5, -3.5, 2.0, 2.0, 0.0, 20, true),
      probe(false, false, 3.01, 1, 4, 100.0, 0.0, 10.0, 3.0, 2, false),
      probe(true, false, -2.5, 0, 1, -0.001, 1e6, 0.0, -2.0, 300, false),
      probe(false, true, 12.99, 8, 0, 1e4, 0.5, 1e-9, 13.0, 50, false),
      probe(false, false, 0.01, 1000, 999, -50.0, 3.0, 4.0, 0.02, 1000, true),
  };
  return probes;
}

CodeCheck check_code(std::string_view code) {
  CodeCheck out;
  try {
    dsl::Program p = dsl::parse(code);
    dsl::validate(p);
    for (std::size_t i = 0; i < probe_vectors().size(); ++i) {
      const auto r = dsl::eval(p, probe_vectors()[i]);
      if (!std::isfinite(r.score)) {
        out.diagnostics = "non-finite score on probe " + std::to_string(i);
        return out;
      }
    }
    out.ok = true;
    out.diagnostics = "ok: parsed, type checked and evaluated on " + std::to_string(probe_vectors().size()) +
                      " probe inputs";
    out.program = std::move(p);
  } catch (const Error& e) {
    out.diagnostics = e.what();
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "Accepted";
    case Verdict::Revised: return "Revised";
    case Verdict::Discarded: return "Discarded";
  }
  return "?";
}

Verdict parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::Accepted, Verdict::Revised, Verdict::Discarded})
    if (to_string(v) == s) return v;
  fail(ErrorCode::SchemaMismatch, "unknown verdict '" + std::string(s) + "'");
}

EpisodeOutcome try_run_episode(Operation op, std::span<const Candidate> parents, Provider& provider,
                               const EpisodeLimits& limits, std::uint64_t nonce,
                               const PromptLibrary& prompts) {
  if (parents.size() != parent_arity(op)) {
    fail(ErrorCode::InvalidArgument, std::string(to_string(op)) + " needs " +
                                         std::to_string(parent_arity(op)) + " parent(s), got " +
                                         std::to_string(parents.size()));
  }
  EpisodeOutcome outcome;
  Transcript& tr = outcome.transcript;

  PromptContext ctx;
  std::vector<std::string> parent_code;
  for (const auto& p : parents) {
    parent_code.push_back(dsl::render(p.program));
    ctx.parents.push_back({p.description, parent_code.back()});
  }

  // Returns nullopt once the call budget is spent.
  auto call = [&](ChatRequest req, std::string prompt) -> std::optional<std::string> {
    if (tr.entries.size() >= limits.call_budget) return std::nullopt;
    const std::uint64_t stamp = tr.entries.size();
    req.op = op;
    req.nonce = derive_seed(nonce, stamp);
    req.parent_code = parent_code;
    req.messages = {{"system", std::string(kSystemMessage)}, {"user", prompt}};
    std::string response = provider.complete(req);
    tr.entries.push_back({req.role, std::move(prompt), response, stamp});
    return response;
  };

  auto finish = [&](Blocks b, dsl::Program p, Verdict v) {
    tr.verdict = v;
    outcome.candidate = Candidate{std::move(p), std::move(b.description), tr, op};
    return outcome;
  };

  ChatRequest designer;
  designer.role = Role::Designer;
  const auto plan = call(designer, prompts.render(Role::Designer, op, ctx));
  ctx.plan = plan ? trim(*plan) : std::string();

  std::vector<std::string> valid_codes;
  std::optional<std::pair<Blocks, dsl::Program>> last_valid;
  std::size_t invalid = 0;
  for (std::size_t round = 0; round < limits.max_rounds && invalid < limits.max_retries; ++round) {
    ChatRequest coder;
    coder.role = Role::Coder;
    coder.attempt = round;
    const auto answer = call(coder, prompts.render(Role::Coder, op, ctx));
    if (!answer) break;

    Blocks blocks;
    try {
      blocks = extract_blocks(*answer);
    } catch (const Error& e) {
      ++invalid;
      ctx.diagnostics = std::string("Previous answer rejected: missing ") + e.detail() + " markers.";
      continue;
    }
    CodeCheck check = check_code(blocks.code);
    if (check.ok && blocks.description.empty()) {
      check.ok = false;
      check.diagnostics = "description block is empty";
    }
    if (check.ok) {
      valid_codes.push_back(blocks.code);
      last_valid.emplace(blocks, *check.program);
    }

    ChatRequest reviewer;
    reviewer.role = Role::Reviewer;
    reviewer.attempt = round;
    reviewer.locally_valid = check.ok;
    reviewer.diagnostics = check.diagnostics;
    PromptContext rctx = ctx;
    rctx.code = blocks.code;
    rctx.diagnostics = check.diagnostics;
    const auto review = call(reviewer, prompts.render(Role::Reviewer, op, rctx));
    if (!review) break;
    if (check.ok && reviewer_accepts(*review)) return finish(std::move(blocks), std::move(*check.program), Verdict::Accepted);

    if (!check.ok) ++invalid;
    ctx.diagnostics = "Reviewer feedback on the previous code (" + check.diagnostics + "): " + trim(*review);
  }

  std::string history;
  for (const auto& e : tr.entries) {
    if (e.role == Role::Designer) continue;
    history += "[" + std::string(to_string(e.role)) + "]\n" + e.response + "\n";
  }
  ChatRequest judge;
  judge.role = Role::Judge;
  judge.valid_codes = valid_codes;
  PromptContext jctx = ctx;
  jctx.history = history;
  if (const auto verdict = call(judge, prompts.render(Role::Judge, op, jctx))) {
    try {
      Blocks b = extract_blocks(*verdict);
      CodeCheck check = check_code(b.code);
      if (check.ok && !b.description.empty()) return finish(std::move(b), std::move(*check.program), Verdict::Revised);
    } catch (const Error&) {
    }
  }
  if (last_valid) return finish(std::move(last_valid->first), std::move(last_valid->second), Verdict::Revised);

  tr.verdict = Verdict::Discarded;
  outcome.error = "no valid candidate after " + std::to_string(invalid) + " invalid attempt(s)";
  return outcome;
}

Candidate run_episode(Operation op, std::span<const Candidate> parents, Provider& provider,
                      const EpisodeLimits& limits, std::uint64_t nonce, const PromptLibrary& prompts) {
  EpisodeOutcome out = try_run_episode(op, parents, provider, limits, nonce, prompts);
  if (!out.candidate) fail(ErrorCode::EpisodeFailed, out.error);
  return std::move(*out.candidate);
}

}  // namespace dhevo::agents
