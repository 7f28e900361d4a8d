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

#include "dhevo/diving/features.hpp"
#include "dhevo/dsl/ast.hpp"

namespace dhevo::dsl {

inline constexpr double kValueClamp = 1e12;
inline constexpr double kDivisionEpsilon = 1e-9;

struct EvalOutput {
  double score = 0.0;
  bool roundup = false;
};

/// Total evaluation: x / y is 0 when |y| < 1e-9, every intermediate value is
/// clamped to [-1e12, 1e12] and NaN collapses to 0, so the result is always
/// finite. Count features are read as reals.
EvalOutput eval(const Program& p, const diving::FeatureVector& fv);

double eval_number(const Node& n, const diving::FeatureVector& fv);
bool eval_bool(const Node& n, const diving::FeatureVector& fv);

}  // namespace dhevo::dsl
