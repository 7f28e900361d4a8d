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

#include "dhevo/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>

#include "dhevo/agents/http_provider.hpp"
#include "dhevo/agents/provider.hpp"
#include "dhevo/common/parallel.hpp"
#include "dhevo/common/rng.hpp"
#include "dhevo/diving/dive.hpp"
#include "dhevo/diving/scorer.hpp"
#include "dhevo/evolution/dhevo.hpp"
#include "dhevo/gen/generators.hpp"
#include "dhevo/io/config.hpp"
#include "dhevo/metrics/metrics.hpp"
#include "dhevo/milp/bnb.hpp"

#ifndef DHEVO_VERSION
#define DHEVO_VERSION "0.0.0"
#endif

namespace dhevo::cli {
namespace {

std::filesystem::path manifest_for(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest.json";
  return p;
}

void write_manifest(const std::filesystem::path& path, io::RunManifest m) {
  m.finished_at = io::utc_now();
  m.tool_version = tool_version();
  io::write_text_atomic(path, io::manifest_to_json(m).dump(2) + "\n");
}

gen::Family family_or_fail(const std::string& name) {
  const auto f = gen::parse_family(name);
  if (!f) fail(ErrorCode::ConfigError, "unknown family '" + name + "'");
  return *f;
}

diving::Scorer scorer_from_option(const std::string& spec, std::uint64_t seed) {
  constexpr std::string_view dsl_prefix = "dsl:";
  if (spec.rfind(dsl_prefix, 0) == 0) return diving::Scorer::program(io::load_program(spec.substr(dsl_prefix.size())));
  if (spec.rfind("builtin:", 0) == 0) return diving::Scorer::builtin(spec.substr(8), seed);
  fail(ErrorCode::ConfigError, "scorer must be builtin:<name> or dsl:<path>, got '" + spec + "'");
}

io::json config_json(const io::RunConfig& rc) {
  const auto& e = rc.evolve;
  return {{"m", e.m},
          {"n", e.n},
          {"k", e.k},
          {"iterations", e.iterations},
          {"temperature", e.temperature},
          {"gap_cap", e.gap_cap},
          {"seed", e.seed},
          {"d_max", e.d_max},
          {"fitness_mode", evolution::to_string(e.fitness_mode)},
          {"offspring", e.offspring},
          {"crossover_rate", e.crossover_rate},
          {"threads", e.threads},
          {"instances", rc.instance_dir.empty()
                            ? io::json{{"family", rc.family}, {"preset", rc.preset}, {"seed", rc.instance_seed}}
                            : io::json{{"dir", rc.instance_dir.string()}}},
          {"provider", rc.provider == "mock" ? io::json{{"kind", "mock"}, {"fault", rc.mock_fault}}
                                             : io::json{{"kind", "http"},
                                                        {"base_url", rc.http.base_url},
                                                        {"model", rc.http.model},
                                                        {"temperature", rc.http.temperature}}},
          {"reference", {{"max_nodes", rc.bnb.max_nodes}, {"max_seconds", rc.bnb.max_seconds}}}};
}

agents::MockFault parse_fault(const std::string& s) {
  if (s == "none") return agents::MockFault::None;
  if (s == "garbage") return agents::MockFault::Garbage;
  if (s == "type_error_first") return agents::MockFault::TypeErrorFirst;
  fail(ErrorCode::ConfigError, "unknown mock fault '" + s + "'");
}

}  // namespace

LogLevel parse_log_level(std::string_view s) {
  if (s == "error") return LogLevel::Error;
  if (s == "warn") return LogLevel::Warn;
  if (s == "info") return LogLevel::Info;
  if (s == "debug") return LogLevel::Debug;
  fail(ErrorCode::ConfigError, "unknown log level '" + std::string(s) + "'");
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
      return 2;
    default:
      return 3;
  }
}

void log(const GlobalOptions& global, LogLevel level, const std::string& message) {
  static std::mutex mu;
  if (static_cast<int>(level) > static_cast<int>(global.log_level)) return;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  std::lock_guard lock(mu);
  std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << message << "\n";
}

std::string tool_version() { return DHEVO_VERSION; }

std::vector<std::filesystem::path> cmd_gen(const GenOptions& opt, const GlobalOptions& global) {
  io::RunManifest manifest;
  manifest.command = "gen";
  manifest.started_at = io::utc_now();
  manifest.seed = global.seed;
  const gen::Family family = family_or_fail(opt.family);
  manifest.config = {{"family", opt.family}, {"preset", opt.preset}, {"count", opt.count}, {"params", opt.params}};

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + opt.out_dir.string());

  std::vector<std::filesystem::path> out(opt.count);
  std::vector<std::string> hashes(opt.count);
  std::vector<std::string> names(opt.count);
  parallel_for(opt.count, global.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(global.seed, i);
    gen::GenSpec spec = gen::preset(family, opt.preset, seed);
    for (const auto& [k, v] : opt.params) spec.params[k] = v;
    const milp::Instance inst = gen::generate(spec);
    out[i] = opt.out_dir / (opt.family + "_" + std::to_string(seed) + ".json");
    io::save_instance(out[i], inst);
    hashes[i] = io::instance_hash(inst);
    names[i] = inst.name;
  });
  for (std::size_t i = 0; i < opt.count; ++i) {
    manifest.instance_hashes.emplace_back(names[i], hashes[i]);
    manifest.outputs.push_back(out[i].string());
  }
  write_manifest(opt.out_dir / "manifest.json", manifest);
  log(global, LogLevel::Info, "wrote " + std::to_string(opt.count) + " instance(s) to " + opt.out_dir.string());
  return out;
}

io::json cmd_dive(const DiveOptions& opt, const GlobalOptions& global) {
  io::RunManifest manifest;
  manifest.command = "dive";
  manifest.started_at = io::utc_now();
  manifest.seed = global.seed;
  manifest.config = {{"instance", opt.instance.string()}, {"scorer", opt.scorer}, {"d_max", opt.d_max}};

  const milp::Instance inst = io::load_instance(opt.instance);
  const diving::Scorer scorer = scorer_from_option(opt.scorer, global.seed);
  const std::size_t d_max = opt.d_max == 0 ? diving::default_dmax(inst) : opt.d_max;
  const diving::DiveResult r = diving::dive(inst, scorer, d_max);

  io::json out = io::dive_result_to_json(r);
  out["instance"] = inst.name;
  out["scorer"] = scorer.describe();
  out["d_max"] = d_max;
  std::optional<double> z_ref = opt.z_ref;
  bool proven = opt.z_ref.has_value();
  if (!z_ref) {
    const milp::MipSolution ref = milp::solve_bnb(inst);
    if (ref.objective) {
      z_ref = ref.objective;
      proven = ref.status == milp::MipStatus::Optimal;
    }
  }
  out["z_ref"] = z_ref ? io::json(*z_ref) : io::json(nullptr);
  out["z_ref_proven"] = proven;
  out["primal_gap"] = z_ref && r.best_objective ? io::json(metrics::primal_gap(*r.best_objective, *z_ref))
                                                : io::json(nullptr);
  if (!opt.json_out.empty()) {
    io::write_text_atomic(opt.json_out, out.dump(2) + "\n");
    manifest.instance_hashes.emplace_back(inst.name, io::instance_hash(inst));
    manifest.outputs.push_back(opt.json_out.string());
    write_manifest(manifest_for(opt.json_out), manifest);
  }
  log(global, LogLevel::Info,
      "dive " + std::string(diving::to_string(r.terminated_by)) + " after " + std::to_string(r.lp_resolves) +
          " LP resolve(s)");
  return out;
}

evolution::Archive cmd_evolve(const EvolveOptions& opt, const GlobalOptions& global) {
  io::RunManifest manifest;
  manifest.command = "evolve";
  manifest.started_at = io::utc_now();

  io::RunConfig rc = io::load_run_config(opt.config);
  if (global.threads > 1) rc.evolve.threads = global.threads;
  manifest.seed = rc.evolve.seed;
  manifest.config = config_json(rc);

  std::unique_ptr<agents::Provider> provider;
  if (rc.provider == "mock") {
    provider = std::make_unique<agents::MockProvider>(rc.evolve.seed, parse_fault(rc.mock_fault));
  } else {
    const char* key = std::getenv("DHEVO_API_KEY");
    if (!key || !*key) fail(ErrorCode::ProviderError, "DHEVO_API_KEY is not set");
    agents::HttpConfig http = rc.http;
    http.api_key = key;
    provider = std::make_unique<agents::HttpProvider>(http);
  }
  const agents::PromptLibrary prompts =
      rc.prompts_dir.empty() ? agents::PromptLibrary::builtin() : agents::PromptLibrary::from_directory(rc.prompts_dir);

  std::vector<milp::Instance> raw;
  if (!rc.instance_dir.empty()) {
    const auto files = io::list_instances(rc.instance_dir);
    if (files.size() < rc.evolve.n) {
      fail(ErrorCode::ConfigError, "need " + std::to_string(rc.evolve.n) + " instances in " +
                                       rc.instance_dir.string() + ", found " + std::to_string(files.size()));
    }
    for (std::size_t i = 0; i < rc.evolve.n; ++i) raw.push_back(io::load_instance(files[i]));
  } else {
    const gen::Family family = family_or_fail(rc.family);
    for (std::size_t i = 0; i < rc.evolve.n; ++i) {
      raw.push_back(gen::generate(gen::preset(family, rc.preset, derive_seed(rc.instance_seed, i))));
    }
  }
  log(global, LogLevel::Info, "computing reference objectives for " + std::to_string(raw.size()) + " instance(s)");
  auto training = evolution::prepare_instances(std::move(raw), rc.bnb, rc.evolve.threads);
  for (auto& t : training) {
    t.hash = io::instance_hash(t.instance);
    manifest.instance_hashes.emplace_back(t.instance.name, t.hash);
  }

  std::optional<evolution::Archive> prior;
  if ((opt.resume || rc.resume) && std::filesystem::exists(rc.archive_path)) {
    prior = io::load_archive(rc.archive_path);
    log(global, LogLevel::Info,
        "resuming from " + rc.archive_path.string() + " after generation " + std::to_string(prior->generations.size()));
  }

  std::ofstream events;
  if (!rc.events_path.empty()) {
    events.open(rc.events_path, prior ? std::ios::app : std::ios::trunc);
    if (!events) fail(ErrorCode::IoError, "cannot open " + rc.events_path.string());
  }
  evolution::EvolveHooks hooks;
  hooks.on_generation = [&](const evolution::Archive& a) {
    io::save_archive(rc.archive_path, a);
    if (!a.generations.empty() && !a.complete) {
      log(global, LogLevel::Info, "generation " + std::to_string(a.generations.back().index) + " saved");
    }
  };
  hooks.on_event = [&](const io::json& e) {
    if (events) events << e.dump() << "\n" << std::flush;
    log(global, LogLevel::Debug, e.dump());
  };
  if (opt.cancel) hooks.cancelled = [c = opt.cancel] { return c->load(); };

  evolution::Archive archive =
      evolution::run_evolution(rc.evolve, training, *provider, prompts, hooks, prior ? &*prior : nullptr);
  manifest.outputs.push_back(rc.archive_path.string());
  if (!rc.events_path.empty()) manifest.outputs.push_back(rc.events_path.string());
  write_manifest(rc.manifest_path.empty() ? manifest_for(rc.archive_path) : rc.manifest_path, manifest);
  log(global, LogLevel::Info, "archive written to " + rc.archive_path.string());
  return archive;
}

EvalReport cmd_eval(const EvalOptions& opt, const GlobalOptions& global) {
  io::RunManifest manifest;
  manifest.command = "eval";
  manifest.started_at = io::utc_now();
  manifest.seed = global.seed;
  manifest.config = {{"portfolio", opt.portfolio.string()},
                     {"instances", opt.instance_dir.string()},
                     {"d_max", opt.d_max},
                     {"gap_cap", opt.gap_cap}};

  const auto items = io::load_portfolio(opt.portfolio);
  std::vector<diving::Scorer> scorers;
  for (const auto& item : items) scorers.push_back(diving::Scorer::from_spec(item.scorer, global.seed));
  const auto files = io::list_instances(opt.instance_dir);
  std::vector<milp::Instance> instances;
  for (const auto& f : files) instances.push_back(io::load_instance(f));
  for (const auto& inst : instances) manifest.instance_hashes.emplace_back(inst.name, io::instance_hash(inst));

  std::vector<double> z_ref(instances.size());
  std::vector<diving::DivePrep> preps(instances.size());
  parallel_for(instances.size(), global.threads, [&](std::size_t i) {
    z_ref[i] = evolution::compute_reference(instances[i]).z;
    preps[i] = diving::DivePrep::build(instances[i]);
  });

  EvalReport report;
  report.rows.resize(items.size() * instances.size());
  parallel_for(report.rows.size(), global.threads, [&](std::size_t job) {
    const std::size_t h = job / instances.size();
    const std::size_t i = job % instances.size();
    const std::size_t d_max = opt.d_max == 0 ? diving::default_dmax(instances[i]) : opt.d_max;
    const diving::DiveResult r = diving::dive(preps[i], scorers[h], d_max);
    metrics::InstanceRow row{items[h].name, instances[i].name, z_ref[i], r.best_objective, opt.gap_cap};
    if (r.best_objective) row.gap = std::min(metrics::primal_gap(*r.best_objective, z_ref[i]), opt.gap_cap);
    report.rows[job] = std::move(row);
  });
  report.summary = metrics::summarize_rows(report.rows);

  if (!opt.report.empty()) {
    const auto base = opt.report.string();
    if (opt.report.has_parent_path()) std::filesystem::create_directories(opt.report.parent_path());
    io::write_text_atomic(base + ".csv", metrics::instance_csv(report.rows));
    io::write_text_atomic(base + "_summary.csv", metrics::summary_csv(report.summary));
    io::write_text_atomic(base + ".md", metrics::summary_markdown(report.summary));
    manifest.outputs = {base + ".csv", base + "_summary.csv", base + ".md"};
    write_manifest(base + ".manifest.json", manifest);
  }
  log(global, LogLevel::Info,
      "evaluated " + std::to_string(items.size()) + " heuristic(s) on " + std::to_string(instances.size()) +
          " instance(s)");
  return report;
}

std::vector<metrics::SummaryRow> cmd_report(const ReportOptions& opt, const GlobalOptions& global) {
  io::RunManifest manifest;
  manifest.command = "report";
  manifest.started_at = io::utc_now();
  manifest.seed = global.seed;
  manifest.config = {{"input", opt.input.string()}};
  const auto rows = metrics::parse_instance_csv(io::read_text(opt.input));
  if (rows.empty()) fail(ErrorCode::TooFew, "no rows in " + opt.input.string());
  const auto summary = metrics::summarize_rows(rows);
  if (!opt.out.empty()) {
    const auto base = opt.out.string();
    io::write_text_atomic(base + "_summary.csv", metrics::summary_csv(summary));
    io::write_text_atomic(base + ".md", metrics::summary_markdown(summary));
    manifest.outputs = {base + "_summary.csv", base + ".md"};
    write_manifest(base + ".manifest.json", manifest);
  }
  return summary;
}

}  // namespace dhevo::cli
