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

#include "dhevo/agents/http_provider.hpp"

#include <httplib.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <thread>

#include "dhevo/common/error.hpp"

namespace dhevo::agents {
namespace {

using Clock = std::chrono::steady_clock;

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string snippet(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

bool transient_status(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpConfig HttpConfig::from_env() {
  HttpConfig cfg;
  cfg.api_key = env_or("DHEVO_API_KEY", "");
  cfg.base_url = env_or("DHEVO_API_BASE", cfg.base_url);
  cfg.model = env_or("DHEVO_MODEL", cfg.model);
  if (cfg.api_key.empty()) fail(ErrorCode::ConfigError, "DHEVO_API_KEY is not set");
  return cfg;
}

std::string redact(std::string text, const std::string& secret) {
  if (secret.empty()) return text;
  std::size_t pos = 0;
  while ((pos = text.find(secret, pos)) != std::string::npos) {
    text.replace(pos, secret.size(), "[redacted]");
    pos += 10;
  }
  return text;
}

HttpProvider::HttpProvider(HttpConfig cfg) : cfg_(std::move(cfg)) {
  std::string url = cfg_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) fail(ErrorCode::ConfigError, "base URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? std::string() : url.substr(path_start);
  if (cfg_.max_attempts == 0) cfg_.max_attempts = 1;
  if (cfg_.max_in_flight == 0) cfg_.max_in_flight = 1;
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.rfind("https://", 0) == 0) fail(ErrorCode::ConfigError, "built without TLS support: " + url);
#endif
}

void HttpProvider::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < cfg_.max_in_flight; });
  ++in_flight_;
  if (cfg_.rate_per_second > 0.0) {
    const auto now = Clock::now();
    const auto slot = std::max(now, next_slot_);
    next_slot_ = slot + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(1.0 / cfg_.rate_per_second));
    lock.unlock();
    std::this_thread::sleep_until(slot);
  }
}

void HttpProvider::release() {
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

std::string HttpProvider::complete(const ChatRequest& request) {
  nlohmann::json body;
  body["model"] = cfg_.model;
  body["temperature"] = cfg_.temperature;
  body["messages"] = nlohmann::json::array();
  for (const auto& m : request.messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  const std::string payload = body.dump();
  const std::string path = path_prefix_ + "/chat/completions";

  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(cfg_.timeout_seconds));
  acquire();
  struct Release {
    HttpProvider* self;
    ~Release() { self->release(); }
  } guard{this};

  ErrorCode last_code = ErrorCode::HttpError;
  std::string last_message;
  double backoff = cfg_.backoff_seconds;
  for (std::size_t attempt = 0; attempt < cfg_.max_attempts; ++attempt) {
    if (attempt > 0) {
      const auto wake = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(backoff));
      if (wake >= deadline) break;
      std::this_thread::sleep_until(wake);
      backoff *= 2.0;
    }
    const double remaining = std::chrono::duration<double>(deadline - Clock::now()).count();
    if (remaining <= 0.0) {
      last_code = ErrorCode::Timeout;
      last_message = "deadline reached before attempt " + std::to_string(attempt + 1);
      break;
    }
    const auto budget = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(remaining));

    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(budget);
    client.set_read_timeout(budget);
    client.set_write_timeout(budget);
    const httplib::Headers headers = {{"Authorization", "Bearer " + cfg_.api_key}};
    const auto started = Clock::now();
    auto res = client.Post(path, headers, payload, "application/json");

    if (!res) {
      const auto err = res.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read && Clock::now() - started >= budget * 9 / 10);
      last_code = timed_out ? ErrorCode::Timeout : ErrorCode::HttpError;
      last_message = "request to " + scheme_host_port_ + path + " failed: " + httplib::to_string(err);
      continue;
    }
    if (res->status == 200) {
      const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
      const nlohmann::json* content = nullptr;
      if (!parsed.is_discarded() && parsed.contains("choices") && parsed["choices"].is_array() &&
          !parsed["choices"].empty()) {
        const auto& choice = parsed["choices"][0];
        if (choice.contains("message") && choice["message"].contains("content") &&
            choice["message"]["content"].is_string()) {
          content = &choice["message"]["content"];
        }
      }
      if (!content) {
        fail(ErrorCode::HttpError, redact("status 200 with malformed body: " + snippet(res->body), cfg_.api_key));
      }
      return content->get<std::string>();
    }
    last_code = res->status == 429 ? ErrorCode::QuotaExceeded : ErrorCode::HttpError;
    last_message = "status " + std::to_string(res->status) + ": " + snippet(res->body);
    if (!transient_status(res->status)) break;
  }
  if (last_message.empty()) {
    last_code = ErrorCode::Timeout;
    last_message = "no attempt completed before the deadline";
  }
  fail(last_code, redact(last_message, cfg_.api_key));
}

}  // namespace dhevo::agents
