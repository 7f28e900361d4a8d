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

#include "dhevo/io/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "dhevo/common/error.hpp"
#include "dhevo/io/json_io.hpp"

namespace dhevo::io {
namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  fail(ErrorCode::ConfigError, "line " + std::to_string(line) + ": " + what);
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

KeyValues KeyValues::parse(std::string_view text) {
  KeyValues kv;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad(line_no, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) bad(line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad(line_no, "expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) bad(line_no, "empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    } else if (!value.empty() && value.front() == '"') {
      bad(line_no, "unterminated string");
    }
    if (!section.empty()) key = section + "." + key;
    if (kv.values_.count(key)) bad(line_no, "duplicate key '" + key + "'");
    kv.values_.emplace(std::move(key), std::move(value));
  }
  return kv;
}

const std::string* KeyValues::find(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  used_.insert(std::string(key));
  return &it->second;
}

bool KeyValues::has(std::string_view key) const { return values_.find(key) != values_.end(); }

std::string KeyValues::get_string(std::string_view key, std::string fallback) const {
  const auto* v = find(key);
  return v ? *v : fallback;
}

std::uint64_t KeyValues::get_u64(std::string_view key, std::uint64_t fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  const auto r = std::from_chars(v->data(), v->data() + v->size(), out);
  if (r.ec != std::errc() || r.ptr != v->data() + v->size()) {
    fail(ErrorCode::ConfigError, std::string(key) + ": expected a non-negative integer, got '" + *v + "'");
  }
  return out;
}

std::size_t KeyValues::get_size(std::string_view key, std::size_t fallback) const {
  return static_cast<std::size_t>(get_u64(key, fallback));
}

double KeyValues::get_double(std::string_view key, double fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  double out = 0.0;
  const auto r = std::from_chars(v->data(), v->data() + v->size(), out);
  if (r.ec != std::errc() || r.ptr != v->data() + v->size() || !std::isfinite(out)) {
    fail(ErrorCode::ConfigError, std::string(key) + ": expected a finite number, got '" + *v + "'");
  }
  return out;
}

bool KeyValues::get_bool(std::string_view key, bool fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (*v == "true") return true;
  if (*v == "false") return false;
  fail(ErrorCode::ConfigError, std::string(key) + ": expected true or false, got '" + *v + "'");
}

void KeyValues::reject_unknown() const {
  for (const auto& [key, value] : values_) {
    if (!used_.count(key)) fail(ErrorCode::ConfigError, "unknown key '" + key + "'");
  }
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  const KeyValues kv = KeyValues::parse(text);
  RunConfig rc;
  auto& e = rc.evolve;
  e.seed = kv.get_u64("seed", e.seed);
  e.m = kv.get_size("m", e.m);
  e.n = kv.get_size("n", e.n);
  e.k = kv.get_size("k", e.k);
  e.iterations = kv.get_size("iterations", e.iterations);
  e.temperature = kv.get_double("temperature", e.temperature);
  e.gap_cap = kv.get_double("gap_cap", e.gap_cap);
  e.d_max = kv.get_size("d_max", e.d_max);
  e.fitness_mode = evolution::parse_fitness_mode(kv.get_string("fitness_mode", "per_instance"));
  e.offspring = kv.get_size("offspring", e.offspring);
  e.crossover_rate = kv.get_double("crossover_rate", e.crossover_rate);
  e.threads = kv.get_size("threads", e.threads);
  e.limits.max_rounds = kv.get_size("episode.max_rounds", e.limits.max_rounds);
  e.limits.max_retries = kv.get_size("episode.max_retries", e.limits.max_retries);
  e.limits.call_budget = kv.get_size("episode.call_budget", e.limits.call_budget);

  rc.instance_dir = resolve(base_dir, kv.get_string("instances.dir", ""));
  rc.family = kv.get_string("instances.family", rc.family);
  rc.preset = kv.get_string("instances.preset", rc.preset);
  rc.instance_seed = kv.get_u64("instances.seed", e.seed);

  rc.provider = kv.get_string("provider.kind", rc.provider);
  if (rc.provider != "mock" && rc.provider != "http") {
    fail(ErrorCode::ConfigError, "provider.kind must be mock or http");
  }
  rc.mock_fault = kv.get_string("provider.fault", rc.mock_fault);
  // Environment values sit between the built-in defaults and the file.
  if (const char* base = std::getenv("DHEVO_API_BASE"); base && *base) rc.http.base_url = base;
  if (const char* model = std::getenv("DHEVO_MODEL"); model && *model) rc.http.model = model;
  rc.http.base_url = kv.get_string("provider.base_url", rc.http.base_url);
  rc.http.model = kv.get_string("provider.model", rc.http.model);
  rc.http.temperature = kv.get_double("provider.temperature", rc.http.temperature);
  rc.http.timeout_seconds = kv.get_double("provider.timeout_seconds", rc.http.timeout_seconds);
  rc.http.backoff_seconds = kv.get_double("provider.backoff_seconds", rc.http.backoff_seconds);
  rc.http.max_in_flight = kv.get_size("provider.max_in_flight", rc.http.max_in_flight);
  rc.http.rate_per_second = kv.get_double("provider.rate_per_second", rc.http.rate_per_second);
  rc.prompts_dir = resolve(base_dir, kv.get_string("provider.prompts_dir", ""));

  rc.bnb.max_nodes = kv.get_size("reference.max_nodes", rc.bnb.max_nodes);
  rc.bnb.max_seconds = kv.get_double("reference.max_seconds", rc.bnb.max_seconds);

  rc.archive_path = resolve(base_dir, kv.get_string("output.archive", "archive.json"));
  rc.events_path = resolve(base_dir, kv.get_string("output.events", ""));
  rc.manifest_path = resolve(base_dir, kv.get_string("output.manifest", ""));
  rc.resume = kv.get_bool("output.resume", false);

  kv.reject_unknown();
  e.validate();
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, e.detail());
  }
  return parse_run_config(text, path.parent_path());
}

}  // namespace dhevo::io
