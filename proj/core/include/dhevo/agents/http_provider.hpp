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

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <string>

#include "dhevo/agents/provider.hpp"

namespace dhevo::agents {

struct HttpConfig {
  /// Base URL up to the API version, e.g. https://api.openai.com/v1.
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4o-mini";
  double temperature = 0.7;
  std::string api_key;
  /// Upper bound on one complete() call including retries.
  double timeout_seconds = 60.0;
  std::size_t max_attempts = 3;
  double backoff_seconds = 1.0;
  std::size_t max_in_flight = 4;
  /// Requests per second across all callers; 0 disables the limit.
  double rate_per_second = 0.0;

  /// Reads DHEVO_API_KEY, DHEVO_API_BASE and DHEVO_MODEL on top of the
  /// defaults. Throws ConfigError when no key is set.
  static HttpConfig from_env();
};

/// Replaces every occurrence of `secret` in `text`.
std::string redact(std::string text, const std::string& secret);

/// OpenAI-compatible chat-completions client. Retries connection failures,
/// 429 and 5xx with exponential backoff; 429 that persists surfaces as
/// QuotaExceeded, other failures as HttpError or Timeout.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(HttpConfig cfg);

  std::string complete(const ChatRequest& request) override;
  std::string name() const override { return "http:" + cfg_.model; }

  const HttpConfig& config() const { return cfg_; }

 private:
  void acquire();
  void release();

  HttpConfig cfg_;
  std::string scheme_host_port_;
  std::string path_prefix_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t in_flight_ = 0;
  std::chrono::steady_clock::time_point next_slot_{};
};

}  // namespace dhevo::agents
