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
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "dhevo/agents/http_provider.hpp"
#include "dhevo/evolution/archive.hpp"
#include "dhevo/milp/bnb.hpp"

namespace dhevo::io {

/// Flat `key = value` document. `[section]` headers prefix the following
/// keys with "section."; `#` starts a comment outside quoted strings.
class KeyValues {
 public:
  static KeyValues parse(std::string_view text);

  bool has(std::string_view key) const;
  std::string get_string(std::string_view key, std::string fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  std::size_t get_size(std::string_view key, std::size_t fallback) const;
  double get_double(std::string_view key, double fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  /// Throws ConfigError naming the first key no getter asked for.
  void reject_unknown() const;

  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

 private:
  const std::string* find(std::string_view key) const;

  std::map<std::string, std::string, std::less<>> values_;
  mutable std::set<std::string, std::less<>> used_;
};

struct RunConfig {
  evolution::EvolveConfig evolve;

  /// Instances come from a directory of JSON files, or are generated.
  std::filesystem::path instance_dir;
  std::string family = "setcover";
  std::string preset = "tiny";
  std::uint64_t instance_seed = 0;

  std::string provider = "mock";  // "mock" or "http"
  std::string mock_fault = "none";
  agents::HttpConfig http;
  std::filesystem::path prompts_dir;

  milp::BnbLimits bnb;

  std::filesystem::path archive_path = "archive.json";
  std::filesystem::path events_path;
  std::filesystem::path manifest_path;
  bool resume = false;
};

/// Relative paths resolve against `base_dir`. Throws ConfigError.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace dhevo::io
