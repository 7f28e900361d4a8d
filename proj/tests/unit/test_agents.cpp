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

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <thread>

#include "dhevo/agents/episode.hpp"
#include "dhevo/agents/http_provider.hpp"
#include "dhevo/agents/prompts.hpp"
#include "dhevo/agents/provider.hpp"
#include "dhevo/dsl/eval.hpp"
#include "dhevo/dsl/parser.hpp"
#include "dhevo/dsl/render.hpp"
#include "dhevo/io/json_io.hpp"
#include "support/oracles.hpp"

using namespace dhevo;
using namespace dhevo::agents;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

Candidate candidate_from(const std::string& code, const std::string& description) {
  Candidate c;
  c.program = dsl::parse(code);
  c.description = description;
  return c;
}

// Responds with a canned reply and counts requests.
class ScriptedProvider final : public Provider {
 public:
  explicit ScriptedProvider(std::string reply) : reply_(std::move(reply)) {}
  std::string complete(const ChatRequest& request) override {
    requests.push_back(request);
    if (request.role == Role::Reviewer) return "VERDICT: ACCEPT";
    return reply_;
  }
  std::string name() const override { return "scripted"; }
  std::vector<ChatRequest> requests;

 private:
  std::string reply_;
};

// Local chat-completions endpoint for the HTTP client tests.
class FakeServer {
 public:
  explicit FakeServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", [this, handler](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      last_auth = req.get_header_value("Authorization");
      last_body = req.body;
      handler(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

  std::atomic<int> hits{0};
  std::string last_auth;
  std::string last_body;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

HttpConfig local_config(const FakeServer& server) {
  HttpConfig cfg;
  cfg.base_url = server.base();
  cfg.api_key = "sk-sentinel-7f3a9c";
  cfg.backoff_seconds = 0.01;
  cfg.timeout_seconds = 5.0;
  return cfg;
}

ChatRequest simple_request() {
  ChatRequest r;
  r.messages = {{"system", "sys"}, {"user", "hello"}};
  return r;
}

}  // namespace

TEST_SUITE("agents") {
  TEST_CASE("coder init prompt carries the features and markers") {
    const PromptLibrary lib = PromptLibrary::builtin();
    const std::string text = lib.render(Role::Coder, Operation::Init, {});
    for (dsl::Feature f : dsl::all_features()) CHECK(text.find(dsl::feature_name(f)) != std::string::npos);
    for (const char* marker : {"<start_des>", "</end_des>", "<start_code>", "</end_code>"}) {
      CHECK(text.find(marker) != std::string::npos);
    }
  }

  TEST_CASE("crossover prompt embeds both parents") {
    const PromptLibrary lib = PromptLibrary::builtin();
    PromptContext ctx;
    ctx.parents = {{"parent A", "score: candsfrac roundup: true"}, {"parent B", "score: obj * 2 roundup: isBinary"}};
    const std::string text = lib.render(Role::Coder, Operation::Crossover, ctx);
    CHECK(text.find("score: candsfrac roundup: true") != std::string::npos);
    CHECK(text.find("score: obj * 2 roundup: isBinary") != std::string::npos);
    CHECK(text.find("parent B") != std::string::npos);
  }

  TEST_CASE("unknown roles and placeholders") {
    const PromptLibrary lib = PromptLibrary::builtin();
    CHECK(code_of([&] { (void)lib.render("critic", Operation::Init, {}); }) == ErrorCode::MissingTemplate);
    CHECK(code_of([&] { (void)substitute("a {{missing}} b", {}); }) == ErrorCode::MissingPlaceholder);
    CHECK(code_of([&] { (void)substitute("a {{open", {{"open", "x"}}); }) == ErrorCode::ParseError);
    CHECK(substitute("x={{v}};", {{"v", "1"}}) == "x=1;");
  }

  TEST_CASE("templates can be overridden from a directory") {
    const auto dir = testing::scratch_dir("prompts");
    std::ofstream(dir / "designer.txt") << "custom designer {{operation}}";
    const PromptLibrary lib = PromptLibrary::from_directory(dir);
    CHECK(lib.render(Role::Designer, Operation::Init, {}).rfind("custom designer", 0) == 0);
    CHECK(lib.contains("coder"));
  }

  TEST_CASE("marker extraction") {
    const Blocks b = extract_blocks("<start_des>d</end_des><start_code>score: 1 roundup: true</end_code>");
    CHECK(b.description == "d");
    CHECK(b.code == "score: 1 roundup: true");
    CHECK(code_of([] { (void)extract_blocks("<start_des>d</end_des> no code here"); }) == ErrorCode::MarkerMissing);
    try {
      (void)extract_blocks("<start_des>d</end_des>");
    } catch (const Error& e) {
      CHECK(e.detail() == "code");
    }

    std::mt19937_64 g(1);
    std::uniform_int_distribution<int> ch(32, 126), len(0, 40);
    auto pad = [&] {
      std::string s;
      for (int i = len(g); i > 0; --i) {
        char c = static_cast<char>(ch(g));
        if (c == '<') c = '(';
        s += c;
      }
      return s;
    };
    for (int i = 0; i < 200; ++i) {
      const std::string text = pad() + "<start_des>  plan text </end_des>" + pad() +
                               "<start_code>\nscore: obj roundup: false\n</end_code>" + pad();
      const Blocks r = extract_blocks(text);
      CHECK(r.description == "plan text");
      CHECK(r.code == "score: obj roundup: false");
    }
  }

  TEST_CASE("code check evaluates on the probe vectors") {
    CHECK(probe_vectors().size() == 8);
    const CodeCheck ok = check_code("score: candsfrac / nlocksup roundup: mayroundup");
    CHECK(ok.ok);
    const CodeCheck bad = check_code("score: mayroundup + 1 roundup: true");
    CHECK_FALSE(bad.ok);
    CHECK(bad.diagnostics.find("TypeError") != std::string::npos);
  }

  TEST_CASE("mock init episode") {
    MockProvider mock(1);
    const PromptLibrary lib = PromptLibrary::builtin();
    const Candidate c = run_episode(Operation::Init, {}, mock, {}, 42, lib);
    CHECK(c.transcript.verdict == Verdict::Accepted);
    CHECK(c.transcript.entries.front().role == Role::Designer);
    CHECK(c.transcript.calls() <= 1 + 2 * 2);
    CHECK_FALSE(c.description.empty());
    CHECK_NOTHROW(dsl::validate(c.program));
    for (const auto& fv : probe_vectors()) CHECK(std::isfinite(dsl::eval(c.program, fv).score));
    bool judged = false;
    for (const auto& e : c.transcript.entries) judged = judged || e.role == Role::Judge;
    CHECK_FALSE(judged);

    MockProvider again(1);
    const Candidate d = run_episode(Operation::Init, {}, again, {}, 42, lib);
    CHECK(io::transcript_to_json(c.transcript) == io::transcript_to_json(d.transcript));
    CHECK(c.program == d.program);
  }

  TEST_CASE("mock mutation and crossover use their parents") {
    MockProvider mock(2);
    const PromptLibrary lib = PromptLibrary::builtin();
    const std::vector<Candidate> parents{candidate_from("score: candsfrac * 80 roundup: candsfrac > 0.5", "A"),
                                         candidate_from("score: obj - nlocksup roundup: isBinary", "B")};
    const Candidate m = run_episode(Operation::Mutation, std::span(parents).first(1), mock, {}, 7, lib);
    CHECK(m.origin == Operation::Mutation);
    const Candidate x = run_episode(Operation::Crossover, parents, mock, {}, 8, lib);
    CHECK(x.origin == Operation::Crossover);
    CHECK(x.transcript.entries[1].prompt.find("score: obj - nlocksup roundup: isBinary") != std::string::npos);
    CHECK(code_of([&] { (void)run_episode(Operation::Crossover, std::span(parents).first(1), mock, {}, 8, lib); }) ==
          ErrorCode::InvalidArgument);
  }

  TEST_CASE("type errors are retried with diagnostics") {
    MockProvider mock(3, MockFault::TypeErrorFirst);
    const PromptLibrary lib = PromptLibrary::builtin();
    const Candidate c = run_episode(Operation::Init, {}, mock, {}, 5, lib);
    CHECK(c.transcript.verdict == Verdict::Accepted);
    const auto& e = c.transcript.entries;
    REQUIRE(e.size() == 5);
    CHECK(e[1].role == Role::Coder);
    CHECK(e[2].role == Role::Reviewer);
    CHECK(e[2].response.find("REVISE") != std::string::npos);
    CHECK(e[3].role == Role::Coder);
    CHECK(e[3].prompt.find("TypeError") != std::string::npos);
  }

  TEST_CASE("garbage output fails the episode") {
    MockProvider mock(4, MockFault::Garbage);
    const PromptLibrary lib = PromptLibrary::builtin();
    const EpisodeLimits limits;
    const EpisodeOutcome out = try_run_episode(Operation::Init, {}, mock, limits, 9, lib);
    CHECK_FALSE(out.candidate.has_value());
    CHECK(out.transcript.verdict == Verdict::Discarded);
    CHECK(out.transcript.entries.back().role == Role::Judge);
    CHECK(out.transcript.calls() <= limits.call_budget);
    CHECK(code_of([&] { (void)run_episode(Operation::Init, {}, mock, limits, 9, lib); }) ==
          ErrorCode::EpisodeFailed);
  }

  TEST_CASE("the call budget is never exceeded") {
    MockProvider mock(5, MockFault::Garbage);
    const PromptLibrary lib = PromptLibrary::builtin();
    for (std::size_t budget = 0; budget < 8; ++budget) {
      EpisodeLimits limits{5, 5, budget};
      const EpisodeOutcome out = try_run_episode(Operation::Init, {}, mock, limits, budget, lib);
      CHECK(out.transcript.calls() <= budget);
    }
  }

  TEST_CASE("transcript timestamps count calls") {
    ScriptedProvider p("<start_des>x</end_des><start_code>score: 1 roundup: true</end_code>");
    const Candidate c = run_episode(Operation::Init, {}, p, {}, 1, PromptLibrary::builtin());
    for (std::size_t i = 0; i < c.transcript.entries.size(); ++i) CHECK(c.transcript.entries[i].timestamp == i);
    CHECK(p.requests.size() == c.transcript.calls());
  }

  TEST_CASE("http provider returns the first choice") {
    FakeServer server([](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"hi there"}}]})", "application/json");
    });
    HttpProvider http(local_config(server));
    CHECK(http.complete(simple_request()) == "hi there");
    CHECK(server.last_auth == "Bearer sk-sentinel-7f3a9c");
    const auto body = nlohmann::json::parse(server.last_body);
    CHECK(body["model"] == "gpt-4o-mini");
    CHECK(body["messages"].size() == 2);
    CHECK(body["messages"][1]["content"] == "hello");
  }

  TEST_CASE("http provider surfaces quota errors after retries") {
    FakeServer server([](const httplib::Request&, httplib::Response& res) {
      res.status = 429;
      res.set_content("slow down", "text/plain");
    });
    HttpProvider http(local_config(server));
    CHECK(code_of([&] { (void)http.complete(simple_request()); }) == ErrorCode::QuotaExceeded);
    CHECK(server.hits == 3);
  }

  TEST_CASE("http provider retries server errors then succeeds") {
    std::atomic<int> calls{0};
    FakeServer server([&](const httplib::Request&, httplib::Response& res) {
      if (calls++ == 0) {
        res.status = 503;
        return;
      }
      res.set_content(R"({"choices":[{"message":{"content":"ok"}}]})", "application/json");
    });
    HttpProvider http(local_config(server));
    CHECK(http.complete(simple_request()) == "ok");
    CHECK(server.hits == 2);
  }

  TEST_CASE("malformed bodies give a redacted snippet") {
    FakeServer server([](const httplib::Request&, httplib::Response& res) {
      res.set_content("{not json sk-sentinel-7f3a9c", "application/json");
    });
    HttpProvider http(local_config(server));
    try {
      (void)http.complete(simple_request());
      FAIL("expected HttpError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::HttpError);
      const std::string msg = e.what();
      CHECK(msg.find("{not json") != std::string::npos);
      CHECK(msg.find("sk-sentinel-7f3a9c") == std::string::npos);
    }
  }

  TEST_CASE("slow servers time out") {
    FakeServer server([](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(1500));
      res.set_content(R"({"choices":[{"message":{"content":"late"}}]})", "application/json");
    });
    HttpConfig cfg = local_config(server);
    cfg.timeout_seconds = 0.5;
    HttpProvider http(cfg);
    const auto start = std::chrono::steady_clock::now();
    CHECK(code_of([&] { (void)http.complete(simple_request()); }) == ErrorCode::Timeout);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(2));
  }

  TEST_CASE("transcripts never contain the key") {
    FakeServer server([](const httplib::Request&, httplib::Response& res) {
      nlohmann::json j;
      j["choices"] = {{{"message", {{"content", "VERDICT: ACCEPT <start_des>d</end_des>"
                                                "<start_code>score: candsfrac roundup: true</end_code>"}}}}};
      res.set_content(j.dump(), "application/json");
    });
    HttpProvider http(local_config(server));
    const Candidate c = run_episode(Operation::Init, {}, http, {}, 1, PromptLibrary::builtin());
    CHECK(io::transcript_to_json(c.transcript).dump().find("sk-sentinel-7f3a9c") == std::string::npos);
  }

  TEST_CASE("http configuration") {
    HttpConfig cfg;
    cfg.base_url = "no-scheme";
    CHECK(code_of([&] { HttpProvider p(cfg); }) == ErrorCode::ConfigError);
    CHECK(redact("key=abc and abc", "abc") == "key=[redacted] and [redacted]");
  }
}
