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

// Independent reference computations for the test suites. Nothing here calls
// into the solver or metric code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dhevo/diving/features.hpp"
#include "dhevo/milp/instance.hpp"

namespace dhevo::testing {

// One linear constraint a'x (sense) b in dense form.
struct DenseRow {
  std::vector<long double> a;
  long double b = 0;
  milp::Sense sense = milp::Sense::LE;
};

inline std::vector<DenseRow> dense_rows(const milp::Instance& inst) {
  std::vector<DenseRow> rows(inst.num_cons());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].a.assign(inst.num_vars(), 0.0L);
    rows[i].b = inst.rhs[i];
    rows[i].sense = inst.sense[i];
  }
  for (const auto& t : inst.cons) rows[t.row].a[t.col] += t.coef;
  return rows;
}

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<long double>> solve_square(std::vector<std::vector<long double>> m,
                                                            std::vector<long double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    }
    if (std::fabs(m[piv][c]) < 1e-12L) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = m[r][c] / m[c][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

inline bool satisfies(const DenseRow& row, const std::vector<long double>& x, long double tol) {
  long double act = 0;
  for (std::size_t j = 0; j < x.size(); ++j) act += row.a[j] * x[j];
  switch (row.sense) {
    case milp::Sense::LE: return act <= row.b + tol;
    case milp::Sense::GE: return act >= row.b - tol;
    case milp::Sense::EQ: return std::fabs(act - row.b) <= tol;
  }
  return false;
}

// Minimum of c'x over the basic feasible points of {rows, lb <= x <= ub}.
// Every variable must have a finite lower bound so the polyhedron is pointed.
inline std::optional<long double> min_over_vertices(const std::vector<long double>& c,
                                                    const std::vector<DenseRow>& rows,
                                                    const std::vector<long double>& lb,
                                                    const std::vector<long double>& ub) {
  const std::size_t n = c.size();
  std::vector<DenseRow> all(rows);
  for (std::size_t j = 0; j < n; ++j) {
    DenseRow lo{std::vector<long double>(n, 0.0L), lb[j], milp::Sense::GE};
    lo.a[j] = 1;
    all.push_back(lo);
    if (std::isfinite(ub[j])) {
      DenseRow hi{std::vector<long double>(n, 0.0L), ub[j], milp::Sense::LE};
      hi.a[j] = 1;
      all.push_back(hi);
    }
  }
  if (all.size() < n) return std::nullopt;
  std::optional<long double> best;
  // Iterate over all n-subsets of the constraint list.
  std::vector<bool> mask(all.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    std::vector<std::vector<long double>> m;
    std::vector<long double> rhs;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!mask[i]) continue;
      m.push_back(all[i].a);
      rhs.push_back(all[i].b);
    }
    const auto x = solve_square(m, rhs);
    if (!x) continue;
    bool ok = true;
    for (const auto& r : all) {
      if (!satisfies(r, *x, 1e-9L)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    long double z = 0;
    for (std::size_t j = 0; j < n; ++j) z += c[j] * (*x)[j];
    if (!best || z < *best) best = z;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

enum class EnumStatus { Optimal, Infeasible, Unbounded };

struct EnumResult {
  EnumStatus status = EnumStatus::Infeasible;
  long double objective = 0;
};

// LP oracle: vertex enumeration for the optimum, and vertex enumeration of the
// box-normalized recession cone {d : A d (sense) 0, d >= 0 where lb finite,
// d <= 0 where ub finite, -1 <= d <= 1} to detect an improving ray.
inline EnumResult enumerate_lp(const milp::Instance& inst) {
  const std::size_t n = inst.num_vars();
  std::vector<long double> c(inst.obj.begin(), inst.obj.end());
  std::vector<long double> lb(inst.lb.begin(), inst.lb.end());
  std::vector<long double> ub(inst.ub.begin(), inst.ub.end());
  const auto rows = dense_rows(inst);
  const auto opt = min_over_vertices(c, rows, lb, ub);
  if (!opt) return {EnumStatus::Infeasible, 0};

  std::vector<DenseRow> cone(rows);
  for (auto& r : cone) r.b = 0;
  std::vector<long double> dlb(n), dub(n);
  for (std::size_t j = 0; j < n; ++j) {
    dlb[j] = std::isfinite(lb[j]) ? 0.0L : -1.0L;
    dub[j] = std::isfinite(ub[j]) ? 0.0L : 1.0L;
  }
  const auto ray = min_over_vertices(c, cone, dlb, dub);
  if (ray && *ray < -1e-9L) return {EnumStatus::Unbounded, 0};
  return {EnumStatus::Optimal, *opt};
}

// Exhaustive search over 0/1 assignments of a pure-binary instance with its
// own dense feasibility check.
inline std::optional<long double> binary_enumeration(const milp::Instance& inst) {
  const std::size_t n = inst.num_vars();
  const auto rows = dense_rows(inst);
  std::optional<long double> best;
  std::vector<long double> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      x[j] = (mask >> j) & 1U;
      ok = x[j] >= inst.lb[j] && x[j] <= inst.ub[j];
    }
    for (std::size_t i = 0; i < rows.size() && ok; ++i) ok = satisfies(rows[i], x, 1e-9L);
    if (!ok) continue;
    long double z = 0;
    for (std::size_t j = 0; j < n; ++j) z += inst.obj[j] * x[j];
    if (!best || z < *best) best = z;
  }
  return best;
}

// Entropy-based diversity with counts gathered by explicit bin edges.
inline double entropy_oracle(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n <= 1) return 0.0;
  const double lo = *std::min_element(s.begin(), s.end());
  const double hi = *std::max_element(s.begin(), s.end());
  if (lo == hi) return 0.0;
  std::size_t bins = 1;
  while (bins * bins < n) ++bins;
  std::map<std::size_t, std::size_t> counts;
  for (double v : s) {
    std::size_t b = 0;
    // Bin b covers [lo + b w, lo + (b+1) w), the last one closed.
    while (b + 1 < bins && v >= lo + (hi - lo) * static_cast<double>(b + 1) / static_cast<double>(bins)) ++b;
    ++counts[b];
  }
  long double h = 0;
  for (const auto& [b, cnt] : counts) {
    const long double p = static_cast<long double>(cnt) / static_cast<long double>(n);
    h -= p * std::log2(p);
  }
  return static_cast<double>(h / std::log2(static_cast<long double>(n)));
}

struct Moments {
  long double mean = 0;
  long double variance = 0;
  long double std_error = 0;
};

// Two-pass mean and sample variance in extended precision.
inline Moments two_pass(const std::vector<double>& v) {
  Moments m;
  const auto n = static_cast<long double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  if (v.size() > 1) {
    for (double x : v) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= (n - 1);
  }
  m.std_error = std::sqrt(m.variance / n);
  return m;
}

// min -x1 - x2 s.t. 2x1 + 2x2 <= 3, x binary.
inline milp::Instance two_var_fixture() {
  milp::Instance inst;
  inst.name = "two_var";
  inst.obj = {-1.0, -1.0};
  inst.cons = {{0, 0, 2.0}, {0, 1, 2.0}};
  inst.rhs = {3.0};
  inst.sense = {milp::Sense::LE};
  inst.lb = {0.0, 0.0};
  inst.ub = {1.0, 1.0};
  inst.is_int = {true, true};
  return inst;
}

inline diving::FeatureVector random_features(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::uniform_int_distribution<int> cnt(0, 6);
  std::bernoulli_distribution coin(0.5);
  diving::FeatureVector fv;
  fv.candsol = u(g);
  fv.candsfrac = fv.candsol - std::floor(fv.candsol);
  fv.nlocksdown = static_cast<std::size_t>(cnt(g));
  fv.nlocksup = static_cast<std::size_t>(cnt(g));
  fv.mayrounddown = fv.nlocksdown == 0;
  fv.mayroundup = fv.nlocksup == 0;
  fv.obj = u(g);
  fv.objnorm = std::fabs(u(g)) * 10.0;
  fv.pscostdown = coin(g) ? 0.0 : std::fabs(u(g));
  fv.pscostup = coin(g) ? 0.0 : std::fabs(u(g));
  fv.rootsolval = frac(g);
  fv.nNonz = static_cast<std::size_t>(cnt(g));
  fv.isBinary = coin(g);
  // Occasional extreme or degenerate values.
  if (coin(g) && coin(g)) fv.obj = 0.0;
  if (coin(g) && coin(g)) fv.objnorm = 1e11;
  return fv;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("dhevo_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace dhevo::testing
