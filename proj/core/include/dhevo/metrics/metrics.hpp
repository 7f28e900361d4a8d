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

#include <span>
#include <vector>

namespace dhevo::metrics {

/// |z - z_ref| / |z_ref|, or |z - z_ref| when z_ref is 0.
double primal_gap(double z, double z_ref);

/// |z - z_star| / max(|z|, |z_star|) when both are finite, nonzero and of
/// the same sign; 1 otherwise. Symmetric in its arguments.
double primal_dual_gap(double z, double z_star);

struct BoundEvent {
  double time = 0.0;
  double primal = 0.0;  // +inf before an incumbent exists
  double dual = 0.0;    // -inf before a bound exists
};

/// Integral of the primal-dual gap over [0, t_end], piecewise constant from
/// each event onward, with gap 1 before the first event. Throws
/// NonMonotoneTrace when times do not increase strictly, the primal bound
/// increases or the dual bound decreases.
double primal_dual_integral(std::span<const BoundEvent> trace, double t_end);

/// Shannon entropy (bits) of a histogram with ceil(sqrt(N)) equal-width bins
/// over [min, max], divided by log2 N. 0 for N <= 1 or constant scores.
double diversity_index(std::span<const double> scores);

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
  double variance = 0.0;  // N - 1 denominator, 0 for a single sample
};

/// Throws TooFew on an empty sample.
Summary summarize(std::span<const double> samples);

}  // namespace dhevo::metrics
