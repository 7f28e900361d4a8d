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
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dhevo/diving/dive.hpp"
#include "dhevo/dsl/ast.hpp"
#include "dhevo/evolution/archive.hpp"
#include "dhevo/milp/instance.hpp"

namespace dhevo::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

std::string read_text(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

/// Throws ParseError on malformed JSON.
json parse_json(std::string_view text, std::string_view what);
json read_json(const std::filesystem::path& path);

/// Throws SchemaMismatch unless `j` carries the expected kind and version.
void check_schema(const json& j, std::string_view kind);

json instance_to_json(const milp::Instance& inst);
/// Validates the instance; non-finite numbers other than the "inf"/"-inf"
/// bound strings are rejected.
milp::Instance instance_from_json(const json& j);
void save_instance(const std::filesystem::path& path, const milp::Instance& inst);
milp::Instance load_instance(const std::filesystem::path& path);
/// Hash of the compact canonical JSON.
std::string instance_hash(const milp::Instance& inst);
/// Every *.json instance in `dir`, sorted by file name. Throws IoError when
/// the directory holds none.
std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir);

/// A .dh file holds DSL text; a .json file holds {"program": "..."}.
dsl::Program load_program(const std::filesystem::path& path);
json program_to_json(const dsl::Program& p);
dsl::Program program_from_json(const json& j);

json dive_result_to_json(const diving::DiveResult& r);

json transcript_to_json(const agents::Transcript& t);
agents::Transcript transcript_from_json(const json& j);

json archive_to_json(const evolution::Archive& a);
evolution::Archive archive_from_json(const json& j);
/// Canonical archive text: fixed key order, two-space indent, trailing newline.
std::string dump_archive(const evolution::Archive& a);
void save_archive(const std::filesystem::path& path, const evolution::Archive& a);
evolution::Archive load_archive(const std::filesystem::path& path);

/// A named scorer: "builtin:<name>" or DSL text.
struct PortfolioItem {
  std::string name;
  std::string scorer;
};

/// Accepts a portfolio file {"kind": "portfolio", "heuristics": [...]} or an
/// archive, whose final portfolio is used.
std::vector<PortfolioItem> load_portfolio(const std::filesystem::path& path);
json portfolio_to_json(const std::vector<PortfolioItem>& items);

struct RunManifest {
  std::string command;
  json config;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::vector<std::pair<std::string, std::string>> instance_hashes;  // (name, hash)
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};

json manifest_to_json(const RunManifest& m);
/// ISO-8601 UTC timestamp of the current time.
std::string utc_now();

}  // namespace dhevo::io
