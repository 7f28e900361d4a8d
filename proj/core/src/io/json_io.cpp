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

#include "dhevo/io/json_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "dhevo/common/error.hpp"
#include "dhevo/dsl/parser.hpp"
#include "dhevo/dsl/render.hpp"

namespace dhevo::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::SchemaMismatch, std::string("missing field '") + key + "'");
  return j.at(key);
}

double finite(const json& j, std::string_view what) {
  if (!j.is_number()) fail(ErrorCode::SchemaMismatch, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ErrorCode::SchemaMismatch, std::string(what) + " is not finite");
  return v;
}

std::size_t count(const json& j, std::string_view what) {
  if (!j.is_number_unsigned()) fail(ErrorCode::SchemaMismatch, std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::string text(const json& j, std::string_view what) {
  if (!j.is_string()) fail(ErrorCode::SchemaMismatch, std::string(what) + " must be a string");
  return j.get<std::string>();
}

bool flag(const json& j, std::string_view what) {
  if (!j.is_boolean()) fail(ErrorCode::SchemaMismatch, std::string(what) + " must be a boolean");
  return j.get<bool>();
}

const json& array(const json& j, std::string_view what) {
  if (!j.is_array()) fail(ErrorCode::SchemaMismatch, std::string(what) + " must be an array");
  return j;
}

json bound(double v) {
  if (v == milp::kInf) return "inf";
  if (v == -milp::kInf) return "-inf";
  return v;
}

double bound_from(const json& j, std::string_view what) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return milp::kInf;
    if (s == "-inf") return -milp::kInf;
    fail(ErrorCode::SchemaMismatch, std::string(what) + ": unexpected string '" + s + "'");
  }
  return finite(j, what);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, std::string_view what) {
  if (j.is_null()) return std::nullopt;
  return finite(j, what);
}

std::vector<std::string> strings(const json& j, std::string_view what) {
  std::vector<std::string> out;
  for (const auto& e : array(j, what)) out.push_back(text(e, what));
  return out;
}

json config_to_json(const evolution::EvolveConfig& c) {
  return {{"m", c.m},
          {"n", c.n},
          {"k", c.k},
          {"iterations", c.iterations},
          {"temperature", c.temperature},
          {"gap_cap", c.gap_cap},
          {"seed", c.seed},
          {"d_max", c.d_max},
          {"fitness_mode", evolution::to_string(c.fitness_mode)},
          {"offspring", c.offspring},
          {"crossover_rate", c.crossover_rate},
          {"max_rounds", c.limits.max_rounds},
          {"max_retries", c.limits.max_retries},
          {"call_budget", c.limits.call_budget}};
}

evolution::EvolveConfig config_from_json(const json& j) {
  evolution::EvolveConfig c;
  c.m = count(field(j, "m"), "m");
  c.n = count(field(j, "n"), "n");
  c.k = count(field(j, "k"), "k");
  c.iterations = count(field(j, "iterations"), "iterations");
  c.temperature = finite(field(j, "temperature"), "temperature");
  c.gap_cap = finite(field(j, "gap_cap"), "gap_cap");
  c.seed = field(j, "seed").get<std::uint64_t>();
  c.d_max = count(field(j, "d_max"), "d_max");
  c.fitness_mode = evolution::parse_fitness_mode(text(field(j, "fitness_mode"), "fitness_mode"));
  c.offspring = count(field(j, "offspring"), "offspring");
  c.crossover_rate = finite(field(j, "crossover_rate"), "crossover_rate");
  c.limits.max_rounds = count(field(j, "max_rounds"), "max_rounds");
  c.limits.max_retries = count(field(j, "max_retries"), "max_retries");
  c.limits.call_budget = count(field(j, "call_budget"), "call_budget");
  return c;
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::IoError, "cannot replace " + path.string());
  }
}

json parse_json(std::string_view content, std::string_view what) {
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

json read_json(const std::filesystem::path& path) { return parse_json(read_text(path), path.string()); }

void check_schema(const json& j, std::string_view kind) {
  if (!j.is_object()) fail(ErrorCode::SchemaMismatch, "expected a JSON object");
  if (!j.contains("schema_version")) fail(ErrorCode::SchemaMismatch, "missing schema_version");
  const auto& v = j.at("schema_version");
  if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion) {
    fail(ErrorCode::SchemaMismatch,
         "expected schema_version " + std::to_string(kSchemaVersion) + ", found " + v.dump());
  }
  const std::string found = j.contains("kind") && j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (found != kind) fail(ErrorCode::SchemaMismatch, "expected kind '" + std::string(kind) + "', found '" + found + "'");
}

json instance_to_json(const milp::Instance& inst) {
  json cons = json::array();
  for (const auto& t : inst.cons) cons.push_back({t.row, t.col, t.coef});
  json sense = json::array();
  for (auto s : inst.sense) sense.push_back(milp::to_string(s));
  json lb = json::array();
  json ub = json::array();
  for (double v : inst.lb) lb.push_back(bound(v));
  for (double v : inst.ub) ub.push_back(bound(v));
  json is_int = json::array();
  for (bool b : inst.is_int) is_int.push_back(b);
  return {{"schema_version", kSchemaVersion},
          {"kind", "instance"},
          {"name", inst.name},
          {"num_vars", inst.num_vars()},
          {"num_cons", inst.num_cons()},
          {"obj", inst.obj},
          {"cons", cons},
          {"rhs", inst.rhs},
          {"sense", sense},
          {"lb", lb},
          {"ub", ub},
          {"is_int", is_int}};
}

milp::Instance instance_from_json(const json& j) {
  check_schema(j, "instance");
  milp::Instance inst;
  inst.name = text(field(j, "name"), "name");
  for (const auto& v : array(field(j, "obj"), "obj")) inst.obj.push_back(finite(v, "obj"));
  for (const auto& t : array(field(j, "cons"), "cons")) {
    if (!t.is_array() || t.size() != 3) fail(ErrorCode::SchemaMismatch, "constraint entries are [row, col, coef]");
    inst.cons.push_back({count(t[0], "row"), count(t[1], "col"), finite(t[2], "coef")});
  }
  for (const auto& v : array(field(j, "rhs"), "rhs")) inst.rhs.push_back(finite(v, "rhs"));
  for (const auto& v : array(field(j, "sense"), "sense")) {
    const auto s = text(v, "sense");
    if (s == "LE") {
      inst.sense.push_back(milp::Sense::LE);
    } else if (s == "GE") {
      inst.sense.push_back(milp::Sense::GE);
    } else if (s == "EQ") {
      inst.sense.push_back(milp::Sense::EQ);
    } else {
      fail(ErrorCode::SchemaMismatch, "unknown sense '" + s + "'");
    }
  }
  for (const auto& v : array(field(j, "lb"), "lb")) inst.lb.push_back(bound_from(v, "lb"));
  for (const auto& v : array(field(j, "ub"), "ub")) inst.ub.push_back(bound_from(v, "ub"));
  for (const auto& v : array(field(j, "is_int"), "is_int")) inst.is_int.push_back(flag(v, "is_int"));
  if (count(field(j, "num_vars"), "num_vars") != inst.num_vars() ||
      count(field(j, "num_cons"), "num_cons") != inst.num_cons()) {
    fail(ErrorCode::DimensionMismatch, "declared sizes do not match the arrays");
  }
  milp::validate_instance(inst);
  return inst;
}

void save_instance(const std::filesystem::path& path, const milp::Instance& inst) {
  write_text_atomic(path, instance_to_json(inst).dump() + "\n");
}

milp::Instance load_instance(const std::filesystem::path& path) { return instance_from_json(read_json(path)); }

std::string instance_hash(const milp::Instance& inst) { return fnv1a_hex(instance_to_json(inst).dump()); }

std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) fail(ErrorCode::IoError, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    if (e.path().filename() == "manifest.json") continue;
    out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) fail(ErrorCode::IoError, "no instance files in " + dir.string());
  return out;
}

dsl::Program load_program(const std::filesystem::path& path) {
  const std::string content = read_text(path);
  if (path.extension() == ".json") return program_from_json(parse_json(content, path.string()));
  return dsl::parse(content);
}

json program_to_json(const dsl::Program& p) {
  return {{"schema_version", kSchemaVersion}, {"kind", "program"}, {"program", dsl::render(p)}};
}

dsl::Program program_from_json(const json& j) {
  check_schema(j, "program");
  return dsl::parse(text(field(j, "program"), "program"));
}

json dive_result_to_json(const diving::DiveResult& r) {
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back({{"x", s.x}, {"objective", s.objective}});
  json path = json::array();
  for (const auto& f : r.path) path.push_back({{"var", f.var}, {"roundup", f.roundup}, {"value", f.value}});
  return {{"schema_version", kSchemaVersion},
          {"kind", "dive_result"},
          {"solutions", sols},
          {"best_objective", optional_number(r.best_objective)},
          {"depth_reached", r.depth_reached},
          {"lp_resolves", r.lp_resolves},
          {"terminated_by", diving::to_string(r.terminated_by)},
          {"path", path}};
}

json transcript_to_json(const agents::Transcript& t) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    entries.push_back({{"role", agents::to_string(e.role)},
                       {"prompt", e.prompt},
                       {"response", e.response},
                       {"timestamp", e.timestamp}});
  }
  return {{"verdict", agents::to_string(t.verdict)}, {"entries", entries}};
}

agents::Transcript transcript_from_json(const json& j) {
  agents::Transcript t;
  t.verdict = agents::parse_verdict(text(field(j, "verdict"), "verdict"));
  for (const auto& e : array(field(j, "entries"), "entries")) {
    t.entries.push_back({agents::parse_role(text(field(e, "role"), "role")), text(field(e, "prompt"), "prompt"),
                         text(field(e, "response"), "response"), field(e, "timestamp").get<std::uint64_t>()});
  }
  return t;
}

json archive_to_json(const evolution::Archive& a) {
  json instances = json::array();
  for (const auto& r : a.instances) {
    instances.push_back({{"name", r.name}, {"hash", r.hash}, {"z_ref", r.z_ref}, {"proven", r.proven}});
  }
  json generations = json::array();
  for (const auto& g : a.generations) {
    json pop = json::array();
    for (const auto& h : g.population) {
      pop.push_back({{"id", h.id},
                     {"program", dsl::render(h.program)},
                     {"description", h.description},
                     {"origin", agents::to_string(h.origin)},
                     {"parents", h.parents},
                     {"generation", h.generation},
                     {"fallback", h.fallback}});
    }
    json episodes = json::array();
    for (const auto& e : g.episodes) {
      episodes.push_back({{"heuristic", e.heuristic_id},
                          {"slot", e.slot},
                          {"op", agents::to_string(e.op)},
                          {"parents", e.parents},
                          {"transcript", transcript_to_json(e.transcript)},
                          {"error", e.error}});
    }
    json fitness = json::array();
    for (const auto& f : g.fitness) {
      fitness.push_back({{"heuristic", f.heuristic_id},
                         {"instance", f.instance},
                         {"fitness", f.fitness},
                         {"objective", optional_number(f.objective)}});
    }
    json pairs = json::array();
    for (const auto& p : g.pairs) {
      pairs.push_back({{"instance", p.instance}, {"heuristic", p.heuristic_id}, {"fitness", p.fitness}});
    }
    generations.push_back({{"index", g.index},
                           {"population", pop},
                           {"episodes", episodes},
                           {"fitness", fitness},
                           {"pairs", pairs},
                           {"selected", g.selected}});
  }
  json portfolio = json::array();
  for (const auto& p : a.portfolio) {
    portfolio.push_back({{"heuristic", p.heuristic_id},
                         {"f_avg", p.f_avg},
                         {"variance", p.variance},
                         {"generation", p.generation},
                         {"instances", p.instances},
                         {"fitness", p.fitness}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "archive"},
          {"mode", a.mode},
          {"config", config_to_json(a.config)},
          {"provider", a.provider},
          {"instances", instances},
          {"generations", generations},
          {"portfolio", portfolio},
          {"complete", a.complete}};
}

evolution::Archive archive_from_json(const json& j) {
  check_schema(j, "archive");
  evolution::Archive a;
  a.mode = text(field(j, "mode"), "mode");
  a.config = config_from_json(field(j, "config"));
  a.provider = text(field(j, "provider"), "provider");
  for (const auto& r : array(field(j, "instances"), "instances")) {
    a.instances.push_back({text(field(r, "name"), "name"), text(field(r, "hash"), "hash"),
                           finite(field(r, "z_ref"), "z_ref"), flag(field(r, "proven"), "proven")});
  }
  for (const auto& gj : array(field(j, "generations"), "generations")) {
    evolution::Generation g;
    g.index = count(field(gj, "index"), "index");
    for (const auto& h : array(field(gj, "population"), "population")) {
      evolution::Heuristic x;
      x.id = text(field(h, "id"), "id");
      x.program = dsl::parse(text(field(h, "program"), "program"));
      x.description = text(field(h, "description"), "description");
      x.origin = agents::parse_operation(text(field(h, "origin"), "origin"));
      x.parents = strings(field(h, "parents"), "parents");
      x.generation = count(field(h, "generation"), "generation");
      x.fallback = flag(field(h, "fallback"), "fallback");
      g.population.push_back(std::move(x));
    }
    for (const auto& e : array(field(gj, "episodes"), "episodes")) {
      g.episodes.push_back({text(field(e, "heuristic"), "heuristic"), count(field(e, "slot"), "slot"),
                            agents::parse_operation(text(field(e, "op"), "op")), strings(field(e, "parents"), "parents"),
                            transcript_from_json(field(e, "transcript")), text(field(e, "error"), "error")});
    }
    for (const auto& f : array(field(gj, "fitness"), "fitness")) {
      g.fitness.push_back({text(field(f, "heuristic"), "heuristic"), count(field(f, "instance"), "instance"),
                           finite(field(f, "fitness"), "fitness"), optional_from(field(f, "objective"), "objective")});
    }
    for (const auto& p : array(field(gj, "pairs"), "pairs")) {
      g.pairs.push_back({count(field(p, "instance"), "instance"), text(field(p, "heuristic"), "heuristic"),
                         finite(field(p, "fitness"), "fitness")});
    }
    for (const auto& s : array(field(gj, "selected"), "selected")) g.selected.push_back(count(s, "selected"));
    a.generations.push_back(std::move(g));
  }
  for (const auto& p : array(field(j, "portfolio"), "portfolio")) {
    evolution::PortfolioEntry e;
    e.heuristic_id = text(field(p, "heuristic"), "heuristic");
    e.f_avg = finite(field(p, "f_avg"), "f_avg");
    e.variance = finite(field(p, "variance"), "variance");
    e.generation = count(field(p, "generation"), "generation");
    for (const auto& i : array(field(p, "instances"), "instances")) e.instances.push_back(count(i, "instances"));
    for (const auto& f : array(field(p, "fitness"), "fitness")) e.fitness.push_back(finite(f, "fitness"));
    a.portfolio.push_back(std::move(e));
  }
  a.complete = flag(field(j, "complete"), "complete");
  return a;
}

std::string dump_archive(const evolution::Archive& a) { return archive_to_json(a).dump(2) + "\n"; }

void save_archive(const std::filesystem::path& path, const evolution::Archive& a) {
  write_text_atomic(path, dump_archive(a));
}

evolution::Archive load_archive(const std::filesystem::path& path) { return archive_from_json(read_json(path)); }

std::vector<PortfolioItem> load_portfolio(const std::filesystem::path& path) {
  const json j = read_json(path);
  std::vector<PortfolioItem> out;
  if (j.is_object() && j.value("kind", "") == "archive") {
    const evolution::Archive a = archive_from_json(j);
    for (const auto& p : a.portfolio) {
      const evolution::Heuristic* h = a.find(p.heuristic_id);
      if (!h) fail(ErrorCode::SchemaMismatch, "portfolio heuristic " + p.heuristic_id + " missing");
      out.push_back({p.heuristic_id, dsl::render(h->program)});
    }
  } else {
    check_schema(j, "portfolio");
    for (const auto& h : array(field(j, "heuristics"), "heuristics")) {
      out.push_back({text(field(h, "name"), "name"), text(field(h, "scorer"), "scorer")});
    }
  }
  if (out.empty()) fail(ErrorCode::SchemaMismatch, "portfolio is empty");
  return out;
}

json portfolio_to_json(const std::vector<PortfolioItem>& items) {
  json hs = json::array();
  for (const auto& i : items) hs.push_back({{"name", i.name}, {"scorer", i.scorer}});
  return {{"schema_version", kSchemaVersion}, {"kind", "portfolio"}, {"heuristics", hs}};
}

json manifest_to_json(const RunManifest& m) {
  json hashes = json::array();
  for (const auto& [name, hash] : m.instance_hashes) hashes.push_back({{"name", name}, {"hash", hash}});
  return {{"schema_version", kSchemaVersion},
          {"kind", "manifest"},
          {"command", m.command},
          {"config", m.config},
          {"seed", m.seed},
          {"tool_version", m.tool_version},
          {"instances", hashes},
          {"started_at", m.started_at},
          {"finished_at", m.finished_at},
          {"outputs", m.outputs}};
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace dhevo::io
