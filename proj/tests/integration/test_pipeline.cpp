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

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <string>

#include "dhevo/cli/commands.hpp"
#include "dhevo/io/json_io.hpp"
#include "dhevo/metrics/report.hpp"
#include "support/oracles.hpp"

using namespace dhevo;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DHEVO_CLI_PATH) + " --log-level error " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

void write_config(const fs::path& path, const fs::path& instances, const fs::path& archive) {
  std::ofstream(path) << "seed = 21\nm = 3\nn = 2\nk = 2\niterations = 3\noffspring = 1\n"
                      << "[instances]\ndir = \"" << instances.string() << "\"\n"
                      << "[output]\narchive = \"" << archive.string() << "\"\n";
}

}  // namespace

TEST_CASE("gen, evolve, eval and report through the command-line tool") {
  const fs::path dir = testing::scratch_dir("pipeline");
  const fs::path inst = dir / "inst";
  REQUIRE(run_cli("--seed 4 gen --family setcover --preset tiny --count 3 --out " + quoted(inst)) == 0);
  const auto files = io::list_instances(inst);
  REQUIRE(files.size() == 3);
  for (const auto& f : files) CHECK(f.filename().string().rfind("setcover_", 0) == 0);

  REQUIRE(run_cli("dive --instance " + quoted(files[0]) + " --json-out " + quoted(dir / "dive.json")) == 0);
  const io::json dive = io::read_json(dir / "dive.json");
  CHECK(dive["kind"] == "dive_result");

  write_config(dir / "run.toml", inst, dir / "archive.json");
  REQUIRE(run_cli("evolve --config " + quoted(dir / "run.toml")) == 0);
  const evolution::Archive archive = io::load_archive(dir / "archive.json");
  CHECK(archive.complete);
  CHECK(archive.generations.size() == 3);
  CHECK(fs::exists(dir / "archive.json.manifest.json"));

  write_config(dir / "run2.toml", inst, dir / "archive2.json");
  REQUIRE(run_cli("evolve --config " + quoted(dir / "run2.toml")) == 0);
  CHECK(io::read_text(dir / "archive.json") == io::read_text(dir / "archive2.json"));

  REQUIRE(run_cli("eval --portfolio " + quoted(dir / "archive.json") + " --instances " + quoted(inst) +
                  " --report " + quoted(dir / "rep")) == 0);
  const auto rows = metrics::parse_instance_csv(io::read_text(dir / "rep.csv"));
  CHECK(rows.size() == archive.portfolio.size() * files.size());
  for (const auto& r : rows) {
    CHECK(r.gap >= 0.0);
    CHECK(r.gap <= 10.0);
  }
  CHECK(fs::exists(dir / "rep.md"));

  REQUIRE(run_cli("report --input " + quoted(dir / "rep.csv") + " --out " + quoted(dir / "again")) == 0);
  CHECK(io::read_text(dir / "again_summary.csv") == io::read_text(dir / "rep_summary.csv"));
}

TEST_CASE("exit codes of the command-line tool") {
  const fs::path dir = testing::scratch_dir("exit_codes");
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("gen --family setcover") == 2);
  CHECK(run_cli("gen --family knapsack --out " + quoted(dir)) == 2);
  CHECK(run_cli("gen --family setcover --param rows=abc --out " + quoted(dir)) == 2);
  CHECK(run_cli("evolve --config " + quoted(dir / "missing.toml")) == 2);
  std::ofstream(dir / "bad.toml") << "m = 3\nbogus = 1\n";
  CHECK(run_cli("evolve --config " + quoted(dir / "bad.toml")) == 2);
  CHECK(run_cli("dive --instance " + quoted(dir / "missing.json")) == 3);
  std::ofstream(dir / "wrong.json") << R"({"schema_version": 7, "kind": "instance"})";
  CHECK(run_cli("dive --instance " + quoted(dir / "wrong.json")) == 3);
  CHECK(run_cli("report --input " + quoted(dir / "missing.csv") + " --out " + quoted(dir / "r")) == 3);
}

TEST_CASE("an interrupted run resumes to the uninterrupted archive") {
  const fs::path dir = testing::scratch_dir("resume");
  const fs::path inst = dir / "inst";
  cli::GlobalOptions global;
  global.log_level = cli::LogLevel::Error;
  cli::GenOptions gen;
  gen.family = "indset";
  gen.count = 2;
  gen.out_dir = inst;
  REQUIRE(cli::cmd_gen(gen, global).size() == 2);

  write_config(dir / "full.toml", inst, dir / "full.json");
  cli::EvolveOptions full;
  full.config = dir / "full.toml";
  (void)cli::cmd_evolve(full, global);

  write_config(dir / "cut.toml", inst, dir / "cut.json");
  std::atomic<bool> stop{true};
  cli::EvolveOptions cut;
  cut.config = dir / "cut.toml";
  cut.cancel = &stop;
  try {
    (void)cli::cmd_evolve(cut, global);
    FAIL("expected Interrupted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Interrupted);
  }
  const evolution::Archive partial = io::load_archive(dir / "cut.json");
  CHECK_FALSE(partial.complete);
  CHECK(partial.generations.size() < 3);

  cut.cancel = nullptr;
  cut.resume = true;
  (void)cli::cmd_evolve(cut, global);
  CHECK(io::read_text(dir / "cut.json") == io::read_text(dir / "full.json"));
}
