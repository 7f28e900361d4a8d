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

#include "dhevo/gen/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "dhevo/common/error.hpp"
#include "dhevo/common/rng.hpp"

namespace dhevo::gen {

using milp::Instance;
using milp::Sense;
using milp::Triplet;

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Setcover: return "setcover";
    case Family::Cauctions: return "cauctions";
    case Family::Indset: return "indset";
    case Family::Facilities: return "facilities";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "setcover") return Family::Setcover;
  if (name == "cauctions") return Family::Cauctions;
  if (name == "indset") return Family::Indset;
  if (name == "facilities") return Family::Facilities;
  return std::nullopt;
}

namespace {

void require_positive(std::size_t v, const char* what) {
  if (v == 0) fail(ErrorCode::InvalidArgument, std::string(what) + " must be >= 1");
}

Instance binary_shell(std::string name, std::size_t n) {
  Instance inst;
  inst.name = std::move(name);
  inst.obj.assign(n, 0.0);
  inst.lb.assign(n, 0.0);
  inst.ub.assign(n, 1.0);
  inst.is_int.assign(n, true);
  return inst;
}

// Draws k distinct values from [0, n) in increasing order.
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Instance gen_setcover(std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
  require_positive(rows, "rows");
  require_positive(cols, "cols");
  if (!(density > 0.0 && density <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "density must be in (0, 1]");
  }
  if (density * static_cast<double>(cols) < 2.0) {
    fail(ErrorCode::InfeasibleSpec, "density * cols < 2 leaves rows coverable by fewer than 2 columns");
  }
  Rng rng(derive_seed(seed, "setcover"));
  std::vector<std::vector<char>> cover(rows, std::vector<char>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) cover[i][j] = rng.bernoulli(density) ? 1 : 0;
  }
  // Repair: >= 2 columns per row, >= 1 row per column.
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t count = static_cast<std::size_t>(std::count(cover[i].begin(), cover[i].end(), 1));
    while (count < std::min<std::size_t>(2, cols)) {
      const std::size_t j = rng.below(cols);
      if (!cover[i][j]) {
        cover[i][j] = 1;
        ++count;
      }
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    bool used = false;
    for (std::size_t i = 0; i < rows && !used; ++i) used = cover[i][j];
    if (!used) cover[rng.below(rows)][j] = 1;
  }

  Instance inst = binary_shell("setcover_" + std::to_string(seed), cols);
  for (std::size_t j = 0; j < cols; ++j) inst.obj[j] = static_cast<double>(rng.range(1, 100));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (cover[i][j]) inst.cons.push_back({i, j, 1.0});
    }
    inst.rhs.push_back(1.0);
    inst.sense.push_back(Sense::GE);
  }
  return inst;
}

Instance gen_cauctions(std::size_t items, std::size_t bids, std::uint64_t seed) {
  require_positive(items, "items");
  require_positive(bids, "bids");
  Rng rng(derive_seed(seed, "cauctions"));
  const std::size_t hi_raw = std::max<std::size_t>(2, (items + 3) / 4);
  const std::size_t lo = std::min<std::size_t>(2, items);
  const std::size_t hi = std::min(hi_raw, items);

  Instance inst = binary_shell("cauctions_" + std::to_string(seed), bids);
  std::vector<std::vector<std::size_t>> bundles(bids);
  for (std::size_t b = 0; b < bids; ++b) {
    const auto size = static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
    bundles[b] = sample_distinct(rng, items, size);
    const double price = static_cast<double>(size) * rng.uniform(0.5, 1.5);
    inst.obj[b] = -price;
  }
  for (std::size_t i = 0; i < items; ++i) {
    for (std::size_t b = 0; b < bids; ++b) {
      if (std::binary_search(bundles[b].begin(), bundles[b].end(), i)) inst.cons.push_back({i, b, 1.0});
    }
    inst.rhs.push_back(1.0);
    inst.sense.push_back(Sense::LE);
  }
  return inst;
}

Instance gen_indset(std::size_t nodes, std::size_t affinity, std::uint64_t seed) {
  require_positive(affinity, "affinity");
  if (nodes <= affinity) fail(ErrorCode::InvalidArgument, "indset requires nodes > affinity");
  Rng rng(derive_seed(seed, "indset"));

  // Barabasi-Albert: `affinity` seed nodes without edges, then every new
  // node attaches to `affinity` distinct targets drawn proportionally to
  // degree (via the repeated-endpoint list).
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> repeated;
  std::vector<std::size_t> targets(affinity);
  std::iota(targets.begin(), targets.end(), 0);
  for (std::size_t source = affinity; source < nodes; ++source) {
    for (std::size_t t : targets) edges.emplace_back(std::min(t, source), std::max(t, source));
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), affinity, source);
    std::set<std::size_t> chosen;
    while (chosen.size() < affinity) chosen.insert(repeated[rng.below(repeated.size())]);
    targets.assign(chosen.begin(), chosen.end());
  }

  Instance inst = binary_shell("indset_" + std::to_string(seed), nodes);
  std::fill(inst.obj.begin(), inst.obj.end(), -1.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inst.cons.push_back({e, edges[e].first, 1.0});
    inst.cons.push_back({e, edges[e].second, 1.0});
    inst.rhs.push_back(1.0);
    inst.sense.push_back(Sense::LE);
  }
  return inst;
}

Instance gen_facilities(std::size_t n_fac, std::size_t n_cust, std::uint64_t seed) {
  require_positive(n_fac, "facilities");
  require_positive(n_cust, "customers");
  Rng rng(derive_seed(seed, "facilities"));

  std::vector<double> cx(n_cust), cy(n_cust), fx(n_fac), fy(n_fac);
  for (std::size_t c = 0; c < n_cust; ++c) {
    cx[c] = rng.uniform();
    cy[c] = rng.uniform();
  }
  for (std::size_t f = 0; f < n_fac; ++f) {
    fx[f] = rng.uniform();
    fy[f] = rng.uniform();
  }
  std::vector<double> demand(n_cust), capacity(n_fac), fixed(n_fac);
  for (auto& d : demand) d = static_cast<double>(rng.range(5, 35));
  for (auto& c : capacity) c = static_cast<double>(rng.range(10, 160));
  for (auto& f : fixed) f = static_cast<double>(rng.range(100, 110)) + static_cast<double>(rng.range(0, 90));

  const double total_demand = std::accumulate(demand.begin(), demand.end(), 0.0);
  const double total_cap = std::accumulate(capacity.begin(), capacity.end(), 0.0);
  const double needed = 1.5 * total_demand;
  if (total_cap < needed) {
    const double scale = needed / total_cap;
    for (auto& c : capacity) c = std::ceil(c * scale);
  }

  const std::size_t n = n_fac + n_fac * n_cust;
  Instance inst;
  inst.name = "facilities_" + std::to_string(seed);
  inst.obj.assign(n, 0.0);
  inst.lb.assign(n, 0.0);
  inst.ub.assign(n, 1.0);
  inst.is_int.assign(n, false);
  for (std::size_t f = 0; f < n_fac; ++f) {
    inst.obj[f] = fixed[f];
    inst.is_int[f] = true;
  }
  auto xidx = [&](std::size_t f, std::size_t c) { return n_fac + f * n_cust + c; };
  for (std::size_t f = 0; f < n_fac; ++f) {
    for (std::size_t c = 0; c < n_cust; ++c) {
      const double dist = std::hypot(fx[f] - cx[c], fy[f] - cy[c]);
      inst.obj[xidx(f, c)] = std::round(10.0 * dist * demand[c] * 1000.0) / 1000.0;
    }
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < n_cust; ++c, ++row) {
    for (std::size_t f = 0; f < n_fac; ++f) inst.cons.push_back({row, xidx(f, c), 1.0});
    inst.rhs.push_back(1.0);
    inst.sense.push_back(Sense::EQ);
  }
  for (std::size_t f = 0; f < n_fac; ++f, ++row) {
    for (std::size_t c = 0; c < n_cust; ++c) inst.cons.push_back({row, xidx(f, c), demand[c]});
    inst.cons.push_back({row, f, -capacity[f]});
    inst.rhs.push_back(0.0);
    inst.sense.push_back(Sense::LE);
  }
  return inst;
}

GenSpec preset(Family family, std::string_view name, std::uint64_t seed) {
  GenSpec spec{family, {}, seed};
  const bool tiny = name == "tiny";
  const bool easy = name == "easy";
  const bool hard = name == "hard";
  if (!tiny && !easy && !hard) fail(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  switch (family) {
    case Family::Setcover:
      spec.params = {{"rows", tiny ? 20 : easy ? 500 : 2000}, {"cols", tiny ? 40 : 1000}, {"density", 0.05}};
      // 0.05 * 40 = 2 is the smallest density the repair rule admits.
      break;
    case Family::Cauctions:
      spec.params = {{"items", tiny ? 10 : easy ? 100 : 300}, {"bids", tiny ? 30 : easy ? 500 : 1500}};
      break;
    case Family::Indset:
      spec.params = {{"nodes", tiny ? 30 : easy ? 500 : 1500}, {"affinity", tiny ? 2 : 4}};
      break;
    case Family::Facilities:
      spec.params = {{"facilities", tiny ? 5 : 100}, {"customers", tiny ? 8 : easy ? 100 : 400}};
      break;
  }
  return spec;
}

namespace {

double param(const GenSpec& spec, const char* key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) fail(ErrorCode::InvalidArgument, std::string("missing generator parameter '") + key + "'");
  return it->second;
}

std::size_t count_param(const GenSpec& spec, const char* key) {
  const double v = param(spec, key);
  if (!(v >= 1.0) || v != std::floor(v)) {
    fail(ErrorCode::InvalidArgument, std::string("parameter '") + key + "' must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

Instance generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::Setcover:
      return gen_setcover(count_param(spec, "rows"), count_param(spec, "cols"), param(spec, "density"), spec.seed);
    case Family::Cauctions:
      return gen_cauctions(count_param(spec, "items"), count_param(spec, "bids"), spec.seed);
    case Family::Indset:
      return gen_indset(count_param(spec, "nodes"), count_param(spec, "affinity"), spec.seed);
    case Family::Facilities:
      return gen_facilities(count_param(spec, "facilities"), count_param(spec, "customers"), spec.seed);
  }
  fail(ErrorCode::InvalidArgument, "unknown family");
}

}  // namespace dhevo::gen
