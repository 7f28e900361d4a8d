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

#include "dhevo/milp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dhevo::milp {

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterLimit: return "IterLimit";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

enum class PhaseResult { Optimal, Unbounded, IterLimit };

// Columns are laid out as [structurals | slacks | artificials]; each row i
// reads a_i x + s_i (+ sigma_i art_i) = b_i with slack bounds encoding the
// row sense.
class DenseSimplex {
 public:
  DenseSimplex(const Instance& inst, std::vector<double> lb, std::vector<double> ub,
               const LpOptions& options)
      : n_(inst.num_vars()), m_(inst.num_cons()), options_(options) {
    max_iters_ = options.max_iterations ? options.max_iterations : 50 * (n_ + m_);
    if (max_iters_ == 0) max_iters_ = 1;

    lb_ = std::move(lb);
    ub_ = std::move(ub);
    lb_.resize(n_ + m_);
    ub_.resize(n_ + m_);
    for (std::size_t i = 0; i < m_; ++i) {
      switch (inst.sense[i]) {
        case Sense::LE: lb_[n_ + i] = 0.0; ub_[n_ + i] = kInf; break;
        case Sense::GE: lb_[n_ + i] = -kInf; ub_[n_ + i] = 0.0; break;
        case Sense::EQ: lb_[n_ + i] = 0.0; ub_[n_ + i] = 0.0; break;
      }
    }

    x_.assign(n_ + m_, 0.0);
    state_.assign(n_ + m_, VarState::AtLower);
    for (std::size_t j = 0; j < n_; ++j) place_at_bound(j);

    std::vector<double> dense(m_ * n_, 0.0);
    for (const auto& t : inst.cons) dense[t.row * n_ + t.col] += t.coef;

    std::vector<double> residual(inst.rhs);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) residual[i] -= dense[i * n_ + j] * x_[j];
    }

    // Rows whose slack cannot absorb the residual get an artificial.
    std::vector<double> art_sign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t s = n_ + i;
      if (residual[i] >= lb_[s] - kTolFeas && residual[i] <= ub_[s] + kTolFeas) continue;
      art_sign[i] = residual[i] > 0.0 ? 1.0 : -1.0;
      ++num_art_;
    }
    cols_ = n_ + m_ + num_art_;
    stride_ = cols_ + 1;
    lb_.resize(cols_, 0.0);
    ub_.resize(cols_, kInf);
    x_.resize(cols_, 0.0);
    state_.resize(cols_, VarState::AtLower);
    basis_.assign(m_, 0);
    tab_.assign(m_ * stride_, 0.0);

    std::size_t next_art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sigma = art_sign[i] == 0.0 ? 1.0 : art_sign[i];
      double* row = &tab_[i * stride_];
      for (std::size_t j = 0; j < n_; ++j) row[j] = sigma * dense[i * n_ + j];
      row[n_ + i] = sigma;
      row[cols_] = sigma * inst.rhs[i];
      if (art_sign[i] == 0.0) {
        basis_[i] = n_ + i;
        state_[n_ + i] = VarState::Basic;
        x_[n_ + i] = residual[i];
      } else {
        const std::size_t a = next_art++;
        row[a] = 1.0;
        basis_[i] = a;
        state_[a] = VarState::Basic;
        x_[a] = std::abs(residual[i]);
        state_[n_ + i] = VarState::AtLower;
        x_[n_ + i] = 0.0;
        if (lb_[n_ + i] == -kInf) state_[n_ + i] = VarState::AtUpper;
      }
    }
    cost_.assign(cols_, 0.0);
    structural_cost_ = inst.obj;
  }

  LpSolution run() {
    LpSolution out;
    if (num_art_ > 0) {
      std::fill(cost_.begin(), cost_.end(), 0.0);
      for (std::size_t a = n_ + m_; a < cols_; ++a) cost_[a] = 1.0;
      const auto r = iterate();
      out.iterations = iterations_;
      if (r == PhaseResult::IterLimit) {
        out.status = LpStatus::IterLimit;
        return out;
      }
      double infeas = 0.0;
      for (std::size_t a = n_ + m_; a < cols_; ++a) infeas += x_[a];
      if (infeas > kPhase1Tol) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      for (std::size_t a = n_ + m_; a < cols_; ++a) {
        ub_[a] = 0.0;
        if (state_[a] != VarState::Basic) {
          state_[a] = VarState::AtLower;
          x_[a] = 0.0;
        }
      }
      drive_out_artificials();
    }

    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::copy(structural_cost_.begin(), structural_cost_.end(), cost_.begin());
    const auto r = iterate();
    out.iterations = iterations_;
    if (r == PhaseResult::IterLimit) {
      out.status = LpStatus::IterLimit;
      return out;
    }
    if (r == PhaseResult::Unbounded) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t j = 0; j < n_; ++j) {
      // Basic values may drift a hair past a bound; snap them back.
      out.x[j] = std::clamp(out.x[j], lb_[j], ub_[j]);
      if (out.x[j] == 0.0) out.x[j] = 0.0;  // normalize -0.0
    }
    out.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) out.objective += structural_cost_[j] * out.x[j];
    return out;
  }

 private:
  void place_at_bound(std::size_t j) {
    if (std::isfinite(lb_[j])) {
      state_[j] = VarState::AtLower;
      x_[j] = lb_[j];
    } else if (std::isfinite(ub_[j])) {
      state_[j] = VarState::AtUpper;
      x_[j] = ub_[j];
    } else {
      state_[j] = VarState::FreeZero;
      x_[j] = 0.0;
    }
  }

  void compute_reduced_costs() {
    reduced_.assign(cost_.begin(), cost_.end());
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[i * stride_];
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * row[j];
    }
    for (std::size_t i = 0; i < m_; ++i) reduced_[basis_[i]] = 0.0;
  }

  // Recomputes basic values from the tableau's rhs column to curb drift.
  void refresh_basic_values() {
    for (std::size_t i = 0; i < m_; ++i) {
      const double* row = &tab_[i * stride_];
      double v = row[cols_];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (state_[j] != VarState::Basic && x_[j] != 0.0) v -= row[j] * x_[j];
      }
      x_[basis_[i]] = v;
    }
  }

  int direction_for(std::size_t j) const {
    if (state_[j] == VarState::Basic) return 0;
    const double d = reduced_[j];
    if (d < -kCostTol && x_[j] < ub_[j]) return 1;
    if (d > kCostTol && x_[j] > lb_[j]) return -1;
    return 0;
  }

  PhaseResult iterate() {
    compute_reduced_costs();
    std::size_t degenerate_run = 0;
    for (;;) {
      if (iterations_ >= max_iters_) return PhaseResult::IterLimit;

      std::size_t entering = cols_;
      int dir = 0;
      if (bland_) {
        for (std::size_t j = 0; j < cols_; ++j) {
          if (const int d = direction_for(j); d != 0) {
            entering = j;
            dir = d;
            break;
          }
        }
      } else {
        double best = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) {
          const int d = direction_for(j);
          if (d == 0) continue;
          if (std::abs(reduced_[j]) > best) {
            best = std::abs(reduced_[j]);
            entering = j;
            dir = d;
          }
        }
      }
      if (entering == cols_) {
        refresh_basic_values();
        return PhaseResult::Optimal;
      }
      ++iterations_;

      // Ratio test; the entering variable's own range allows a bound flip.
      const double own_range = dir > 0 ? ub_[entering] - x_[entering] : x_[entering] - lb_[entering];
      double step = kInf;
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = tab_[i * stride_ + entering];
        if (std::abs(alpha) <= kPivotTol) continue;
        const double delta = -dir * alpha;
        const std::size_t b = basis_[i];
        double ratio;
        bool to_upper;
        if (delta < 0.0) {
          if (!std::isfinite(lb_[b])) continue;
          ratio = std::max(0.0, (x_[b] - lb_[b]) / -delta);
          to_upper = false;
        } else {
          if (!std::isfinite(ub_[b])) continue;
          ratio = std::max(0.0, (ub_[b] - x_[b]) / delta);
          to_upper = true;
        }
        if (leave_row == m_) {
          step = ratio;
          leave_row = i;
          leave_to_upper = to_upper;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, std::abs(step));
        if (ratio < step - tie || (ratio <= step + tie && b < basis_[leave_row])) {
          step = ratio;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }

      if (own_range <= step) {
        if (!std::isfinite(own_range)) return PhaseResult::Unbounded;
        apply_step(entering, dir, own_range);
        x_[entering] = dir > 0 ? ub_[entering] : lb_[entering];
        state_[entering] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
        degenerate_run = own_range <= 1e-12 ? degenerate_run + 1 : 0;
      } else {
        if (leave_row == m_) return PhaseResult::Unbounded;
        apply_step(entering, dir, step);
        const std::size_t leaving = basis_[leave_row];
        x_[leaving] = leave_to_upper ? ub_[leaving] : lb_[leaving];
        state_[leaving] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
        pivot(leave_row, entering);
        degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
      }
      if (!bland_ && degenerate_run >= options_.degenerate_switch) bland_ = true;
    }
  }

  void apply_step(std::size_t entering, int dir, double step) {
    if (step == 0.0) return;
    x_[entering] += dir * step;
    for (std::size_t i = 0; i < m_; ++i) {
      const double alpha = tab_[i * stride_ + entering];
      if (alpha != 0.0) x_[basis_[i]] -= dir * alpha * step;
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    double* prow = &tab_[r * stride_];
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < stride_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * stride_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < stride_; ++j) {
        if (prow[j] != 0.0) row[j] -= f * prow[j];
      }
      row[q] = 0.0;
    }
    const double fd = reduced_[q];
    if (fd != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (prow[j] != 0.0) reduced_[j] -= fd * prow[j];
      }
      reduced_[q] = 0.0;
    }
    basis_[r] = q;
    state_[q] = VarState::Basic;
  }

  // Degenerate pivots that swap zero-valued basic artificials for real
  // columns; a row with no eligible column is redundant and keeps its
  // artificial fixed at zero.
  void drive_out_artificials() {
    reduced_.assign(cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      const double* row = &tab_[i * stride_];
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (state_[j] != VarState::Basic && std::abs(row[j]) > 1e-7) {
          const std::size_t art = basis_[i];
          pivot(i, j);
          state_[art] = VarState::AtLower;
          x_[art] = 0.0;
          break;
        }
      }
    }
    refresh_basic_values();
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t num_art_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  LpOptions options_;
  std::size_t max_iters_ = 0;
  std::size_t iterations_ = 0;
  bool bland_ = false;

  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<std::size_t> basis_;
  std::vector<double> tab_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  std::vector<double> structural_cost_;
};

}  // namespace

LpSolution solve_lp(const Instance& inst, const BoundOverrides& overrides,
                    const LpOptions& options) {
  std::vector<double> lb(inst.lb);
  std::vector<double> ub(inst.ub);
  for (const auto& [j, ov] : overrides) {
    if (j >= lb.size()) continue;
    lb[j] = std::max(lb[j], ov.lb);
    ub[j] = std::min(ub[j], ov.ub);
  }
  for (std::size_t j = 0; j < lb.size(); ++j) {
    if (lb[j] > ub[j] + kTolFeas) return LpSolution{LpStatus::Infeasible, {}, 0.0, 0};
    if (lb[j] > ub[j]) ub[j] = lb[j];
  }
  DenseSimplex simplex(inst, std::move(lb), std::move(ub), options);
  return simplex.run();
}

}  // namespace dhevo::milp
