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

#include "dhevo/milp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dhevo/common/error.hpp"

namespace dhevo::milp {

std::string_view to_string(Sense s) {
  switch (s) {
    case Sense::LE: return "LE";
    case Sense::GE: return "GE";
    case Sense::EQ: return "EQ";
  }
  return "?";
}

void validate_instance(Instance& inst) {
  const std::size_t n = inst.num_vars();
  const std::size_t m = inst.num_cons();
  if (n == 0) fail(ErrorCode::DimensionMismatch, "instance has no variables");
  if (inst.lb.size() != n || inst.ub.size() != n || inst.is_int.size() != n) {
    fail(ErrorCode::DimensionMismatch, "bound/integrality vectors must have num_vars entries");
  }
  if (inst.sense.size() != m) {
    fail(ErrorCode::DimensionMismatch, "sense must have num_cons entries");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(inst.obj[j])) {
      fail(ErrorCode::InvalidArgument, "objective coefficient " + std::to_string(j) + " is not finite");
    }
    if (std::isnan(inst.lb[j]) || std::isnan(inst.ub[j]) || inst.lb[j] == kInf ||
        inst.ub[j] == -kInf) {
      fail(ErrorCode::InvalidArgument, "invalid bound on variable " + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(inst.rhs[i])) {
      fail(ErrorCode::InvalidArgument, "rhs " + std::to_string(i) + " is not finite");
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> keys;
  keys.reserve(inst.cons.size());
  for (const auto& t : inst.cons) {
    if (t.row >= m || t.col >= n) {
      fail(ErrorCode::IndexOutOfRange,
           "triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) + ") out of range");
    }
    if (!std::isfinite(t.coef)) {
      fail(ErrorCode::InvalidArgument, "non-finite coefficient in row " + std::to_string(t.row));
    }
    keys.emplace_back(t.row, t.col);
  }
  std::sort(keys.begin(), keys.end());
  if (auto it = std::adjacent_find(keys.begin(), keys.end()); it != keys.end()) {
    fail(ErrorCode::DuplicateEntry,
         "(" + std::to_string(it->first) + "," + std::to_string(it->second) + ")");
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (inst.is_int[j]) {
      if (std::isfinite(inst.lb[j])) inst.lb[j] = std::ceil(inst.lb[j] - kTolInt);
      if (std::isfinite(inst.ub[j])) inst.ub[j] = std::floor(inst.ub[j] + kTolInt);
    }
    if (inst.lb[j] > inst.ub[j]) {
      fail(ErrorCode::EmptyBoundBox, "variable " + std::to_string(j));
    }
  }
}

LockCounts compute_locks(const Instance& inst) {
  LockCounts locks{std::vector<std::size_t>(inst.num_vars(), 0),
                   std::vector<std::size_t>(inst.num_vars(), 0)};
  for (const auto& t : inst.cons) {
    if (t.coef == 0.0) continue;
    const Sense s = inst.sense[t.row];
    if (s == Sense::EQ) {
      ++locks.down[t.col];
      ++locks.up[t.col];
      continue;
    }
    const bool le_like = (s == Sense::LE) == (t.coef > 0.0);
    if (le_like) {
      ++locks.up[t.col];
    } else {
      ++locks.down[t.col];
    }
  }
  return locks;
}

std::vector<double> row_activity(const Instance& inst, std::span<const double> x) {
  std::vector<double> act(inst.num_cons(), 0.0);
  for (const auto& t : inst.cons) act[t.row] += t.coef * x[t.col];
  return act;
}

double objective_value(const Instance& inst, std::span<const double> x) {
  double z = 0.0;
  for (std::size_t j = 0; j < inst.num_vars(); ++j) z += inst.obj[j] * x[j];
  return z;
}

bool check_feasible(const Instance& inst, std::span<const double> x, double tol) {
  if (x.size() != inst.num_vars()) {
    fail(ErrorCode::DimensionMismatch, "point has " + std::to_string(x.size()) +
                                           " entries, instance has " +
                                           std::to_string(inst.num_vars()) + " variables");
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j])) return false;
    if (x[j] < inst.lb[j] - tol || x[j] > inst.ub[j] + tol) return false;
    if (inst.is_int[j] && std::abs(x[j] - std::round(x[j])) > tol) return false;
  }
  const auto act = row_activity(inst, x);
  for (std::size_t i = 0; i < act.size(); ++i) {
    switch (inst.sense[i]) {
      case Sense::LE:
        if (act[i] > inst.rhs[i] + tol) return false;
        break;
      case Sense::GE:
        if (act[i] < inst.rhs[i] - tol) return false;
        break;
      case Sense::EQ:
        if (std::abs(act[i] - inst.rhs[i]) > tol) return false;
        break;
    }
  }
  return true;
}

std::vector<std::size_t> column_nonzeros(const Instance& inst) {
  std::vector<std::size_t> nz(inst.num_vars(), 0);
  for (const auto& t : inst.cons) {
    if (t.coef != 0.0) ++nz[t.col];
  }
  return nz;
}

}  // namespace dhevo::milp
