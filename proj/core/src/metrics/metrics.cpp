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

#include "dhevo/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dhevo/common/error.hpp"

namespace dhevo::metrics {

double primal_gap(double z, double z_ref) {
  const double diff = std::abs(z - z_ref);
  if (z_ref == 0.0) return diff;
  return diff / std::abs(z_ref);
}

double primal_dual_gap(double z, double z_star) {
  if (!std::isfinite(z) || !std::isfinite(z_star)) return 1.0;
  if (z == z_star) return 0.0;
  if (z == 0.0 || z_star == 0.0 || (z > 0.0) != (z_star > 0.0)) return 1.0;
  return std::abs(z - z_star) / std::max(std::abs(z), std::abs(z_star));
}

double primal_dual_integral(std::span<const BoundEvent> trace, double t_end) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& e = trace[i];
    if (std::isnan(e.time) || std::isnan(e.primal) || std::isnan(e.dual) || e.time < 0.0) {
      fail(ErrorCode::NonMonotoneTrace, "invalid event " + std::to_string(i));
    }
    if (i == 0) continue;
    const auto& p = trace[i - 1];
    if (!(e.time > p.time)) fail(ErrorCode::NonMonotoneTrace, "event times must increase strictly");
    if (e.primal > p.primal) fail(ErrorCode::NonMonotoneTrace, "primal bound increased at event " + std::to_string(i));
    if (e.dual < p.dual) fail(ErrorCode::NonMonotoneTrace, "dual bound decreased at event " + std::to_string(i));
  }
  if (!trace.empty() && t_end < trace.back().time) {
    fail(ErrorCode::InvalidArgument, "t_end precedes the last event");
  }
  if (trace.empty()) return std::max(t_end, 0.0);

  double total = std::min(trace.front().time, t_end);  // gap 1 before the first event
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double end = i + 1 < trace.size() ? trace[i + 1].time : t_end;
    total += primal_dual_gap(trace[i].primal, trace[i].dual) * (end - trace[i].time);
  }
  return total;
}

double diversity_index(std::span<const double> scores) {
  const std::size_t n = scores.size();
  if (n <= 1) return 0.0;
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return 0.0;
  const auto bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double s : scores) {
    auto b = static_cast<std::size_t>(std::floor((s - lo) / width));
    counts[std::min(b, bins - 1)]++;
  }
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return std::clamp(h / std::log2(static_cast<double>(n)), 0.0, 1.0);
}

Summary summarize(std::span<const double> samples) {
  if (samples.empty()) fail(ErrorCode::TooFew, "summarize needs at least one sample");
  // Summing in sorted order makes the result independent of input order.
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  Summary s;
  s.mean = sum / n;
  if (sorted.size() > 1) {
    double sq = 0.0;
    for (double v : sorted) sq += (v - s.mean) * (v - s.mean);
    s.variance = sq / (n - 1.0);
  }
  s.std_error = std::sqrt(s.variance / n);
  return s;
}

}  // namespace dhevo::metrics
