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

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace dhevo::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kTolFeas = 1e-9;
inline constexpr double kTolInt = 1e-7;

enum class Sense { LE, GE, EQ };

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double coef = 0.0;

  bool operator==(const Triplet&) const = default;
};

/// A MILP in sparse form: min c'x s.t. A x (<=,>=,=) b, lb <= x <= ub,
/// x_j integral for every j with is_int[j].
struct Instance {
  std::string name;
  std::vector<double> obj;
  std::vector<Triplet> cons;
  std::vector<double> rhs;
  std::vector<Sense> sense;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<bool> is_int;

  std::size_t num_vars() const noexcept { return obj.size(); }
  std::size_t num_cons() const noexcept { return rhs.size(); }

  bool operator==(const Instance&) const = default;
};

struct LockCounts {
  std::vector<std::size_t> down;
  std::vector<std::size_t> up;
};

/// Checks every structural invariant and rounds the bounds of integer
/// variables inward (ceil(lb), floor(ub)). Throws dhevo::Error on the first
/// violation: DimensionMismatch, IndexOutOfRange, DuplicateEntry,
/// EmptyBoundBox or InvalidArgument (non-finite data).
void validate_instance(Instance& inst);

/// Down-lock: row that may be violated by decreasing x_j; up-lock likewise.
LockCounts compute_locks(const Instance& inst);

/// True iff every row and bound holds within tol and every integer variable
/// is within tol of an integer. Throws DimensionMismatch on a size mismatch.
bool check_feasible(const Instance& inst, std::span<const double> x, double tol);

double objective_value(const Instance& inst, std::span<const double> x);

/// Row activities A x.
std::vector<double> row_activity(const Instance& inst, std::span<const double> x);

/// Number of nonzero coefficients per column.
std::vector<std::size_t> column_nonzeros(const Instance& inst);

std::string_view to_string(Sense s);

}  // namespace dhevo::milp
