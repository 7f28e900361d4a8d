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

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <iostream>

#include "dhevo/cli/commands.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) {
  g_interrupted.store(true);
  std::signal(SIGINT, SIG_DFL);  // a second Ctrl-C terminates immediately
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) dhevo::fail(dhevo::ErrorCode::ConfigError, "--param expects key=value: " + item);
    try {
      std::size_t used = 0;
      const double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      out[item.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      dhevo::fail(dhevo::ErrorCode::ConfigError, "--param value is not a number: " + item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dhevo::cli;

  CLI::App app{"Diving heuristic co-evolution toolkit"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  std::string log_level = "info";
  app.add_option("--seed", global.seed, "Base seed")->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--log-level", log_level, "error|warn|info|debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}))
      ->capture_default_str();

  GenOptions gen;
  std::vector<std::string> gen_params;
  auto* gen_cmd = app.add_subcommand("gen", "Generate benchmark instances");
  gen_cmd->add_option("--family", gen.family, "setcover|cauctions|indset|facilities")->required();
  gen_cmd->add_option("--preset", gen.preset, "tiny|easy|hard")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();
  gen_cmd->add_option("--param", gen_params, "Generator parameter override key=value");

  DiveOptions dive;
  double zref = 0.0;
  auto* dive_cmd = app.add_subcommand("dive", "Run one root-node dive");
  dive_cmd->add_option("--instance", dive.instance, "Instance JSON")->required();
  dive_cmd->add_option("--scorer", dive.scorer, "builtin:<name> or dsl:<path>")->capture_default_str();
  dive_cmd->add_option("--dmax", dive.d_max, "Maximum dive depth (0: default)")->capture_default_str();
  auto* zref_opt = dive_cmd->add_option("--zref", zref, "Reference objective (default: branch and bound)");
  dive_cmd->add_option("--json-out", dive.json_out, "Write the result here instead of stdout");

  EvolveOptions evolve;
  auto* evolve_cmd = app.add_subcommand("evolve", "Run co-evolution from a config file");
  evolve_cmd->add_option("--config", evolve.config, "Run configuration")->required();
  evolve_cmd->add_flag("--resume", evolve.resume, "Continue a partial archive");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a portfolio on an instance directory");
  eval_cmd->add_option("--portfolio", eval.portfolio, "Portfolio or archive JSON")->required();
  eval_cmd->add_option("--instances", eval.instance_dir, "Instance directory")->required();
  eval_cmd->add_option("--report", eval.report, "Output prefix")->required();
  eval_cmd->add_option("--dmax", eval.d_max, "Maximum dive depth (0: default)")->capture_default_str();
  eval_cmd->add_option("--gap-cap", eval.gap_cap, "Gap recorded when a dive finds nothing")->capture_default_str();

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Summarize a per-instance CSV");
  report_cmd->add_option("--input", report.input, "Per-instance CSV")->required();
  report_cmd->add_option("--out", report.out, "Output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    global.log_level = parse_log_level(log_level);
    if (*gen_cmd) {
      gen.params = parse_params(gen_params);
      cmd_gen(gen, global);
    } else if (*dive_cmd) {
      if (*zref_opt) dive.z_ref = zref;
      const auto out = cmd_dive(dive, global);
      if (dive.json_out.empty()) std::cout << out.dump(2) << "\n";
    } else if (*evolve_cmd) {
      evolve.cancel = &g_interrupted;
      std::signal(SIGINT, on_sigint);
      cmd_evolve(evolve, global);
    } else if (*eval_cmd) {
      cmd_eval(eval, global);
      std::cout << dhevo::io::read_text(eval.report.string() + ".md");
    } else if (*report_cmd) {
      cmd_report(report, global);
      std::cout << dhevo::io::read_text(report.out.string() + ".md");
    }
  } catch (const dhevo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
