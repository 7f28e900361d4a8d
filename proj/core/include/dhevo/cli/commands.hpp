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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dhevo/common/error.hpp"
#include "dhevo/evolution/archive.hpp"
#include "dhevo/io/json_io.hpp"
#include "dhevo/metrics/report.hpp"

namespace dhevo::cli {

enum class LogLevel { Error, Warn, Info, Debug };
LogLevel parse_log_level(std::string_view s);

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  LogLevel log_level = LogLevel::Info;
};

/// Process exit status for an error: 2 for configuration and usage
/// problems, 3 for everything else.
int exit_code(ErrorCode code);

struct GenOptions {
  std::string family;
  std::string preset = "tiny";
  /// Explicit generator parameters; override the preset's values.
  std::map<std::string, double> params;
  std::size_t count = 1;
  std::filesystem::path out_dir;
};

/// Writes `count` instance files and out_dir/manifest.json; instance i uses
/// seed derive_seed(seed, i). Returns the instance paths.
std::vector<std::filesystem::path> cmd_gen(const GenOptions& opt, const GlobalOptions& global);

struct DiveOptions {
  std::filesystem::path instance;
  /// "builtin:<name>" or "dsl:<path>".
  std::string scorer = "builtin:fractional";
  /// 0 selects min(500, |I| + 10).
  std::size_t d_max = 0;
  std::optional<double> z_ref;
  std::filesystem::path json_out;
};

/// Runs one dive and returns the result JSON with the primal gap against
/// z_ref (computed by branch and bound when not given). Writes json_out
/// and its manifest when a path is set.
io::json cmd_dive(const DiveOptions& opt, const GlobalOptions& global);

struct EvolveOptions {
  std::filesystem::path config;
  bool resume = false;
  /// Set asynchronously (e.g. from a signal handler) to stop between
  /// generations.
  const std::atomic<bool>* cancel = nullptr;
};

evolution::Archive cmd_evolve(const EvolveOptions& opt, const GlobalOptions& global);

struct EvalOptions {
  std::filesystem::path portfolio;
  std::filesystem::path instance_dir;
  /// Output prefix: <report>.csv (per instance), <report>_summary.csv and
  /// <report>.md.
  std::filesystem::path report;
  std::size_t d_max = 0;
  double gap_cap = 10.0;
};

struct EvalReport {
  std::vector<metrics::InstanceRow> rows;
  std::vector<metrics::SummaryRow> summary;
};

EvalReport cmd_eval(const EvalOptions& opt, const GlobalOptions& global);

struct ReportOptions {
  std::filesystem::path input;  // per-instance CSV
  std::filesystem::path out;    // prefix for <out>_summary.csv and <out>.md
};

std::vector<metrics::SummaryRow> cmd_report(const ReportOptions& opt, const GlobalOptions& global);

/// Writes a message to stderr when `level` is enabled.
void log(const GlobalOptions& global, LogLevel level, const std::string& message);

std::string tool_version();

}  // namespace dhevo::cli
