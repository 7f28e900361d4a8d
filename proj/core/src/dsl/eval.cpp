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

#include "dhevo/dsl/eval.hpp"

#include <algorithm>
#include <cmath>

namespace dhevo::dsl {
namespace {

double clamp_value(double v) {
  if (std::isnan(v)) return 0.0;
  return std::clamp(v, -kValueClamp, kValueClamp);
}

double read_number(Feature f, const diving::FeatureVector& fv) {
  switch (f) {
    case Feature::candsfrac: return fv.candsfrac;
    case Feature::candsol: return fv.candsol;
    case Feature::nlocksdown: return static_cast<double>(fv.nlocksdown);
    case Feature::nlocksup: return static_cast<double>(fv.nlocksup);
    case Feature::obj: return fv.obj;
    case Feature::objnorm: return fv.objnorm;
    case Feature::pscostdown: return fv.pscostdown;
    case Feature::pscostup: return fv.pscostup;
    case Feature::rootsolval: return fv.rootsolval;
    case Feature::nNonz: return static_cast<double>(fv.nNonz);
    default: return 0.0;
  }
}

bool read_bool(Feature f, const diving::FeatureVector& fv) {
  switch (f) {
    case Feature::mayrounddown: return fv.mayrounddown;
    case Feature::mayroundup: return fv.mayroundup;
    case Feature::isBinary: return fv.isBinary;
    default: return false;
  }
}

}  // namespace

double eval_number(const Node& n, const diving::FeatureVector& fv) {
  const auto arg = [&](std::size_t i) { return eval_number(n.kids[i], fv); };
  double v = 0.0;
  switch (n.op) {
    case Op::Const: v = n.value; break;
    case Op::Feat: v = read_number(n.feature, fv); break;
    case Op::Neg: v = -arg(0); break;
    case Op::Add: v = arg(0) + arg(1); break;
    case Op::Sub: v = arg(0) - arg(1); break;
    case Op::Mul: v = arg(0) * arg(1); break;
    case Op::Div: {
      const double num = arg(0);
      const double den = arg(1);
      v = std::abs(den) < kDivisionEpsilon ? 0.0 : num / den;
      break;
    }
    case Op::Min: v = std::min(arg(0), arg(1)); break;
    case Op::Max: v = std::max(arg(0), arg(1)); break;
    case Op::Abs: v = std::abs(arg(0)); break;
    case Op::If: v = eval_bool(n.kids[0], fv) ? arg(1) : arg(2); break;
    default: v = 0.0; break;
  }
  return clamp_value(v);
}

bool eval_bool(const Node& n, const diving::FeatureVector& fv) {
  const auto num = [&](std::size_t i) { return eval_number(n.kids[i], fv); };
  switch (n.op) {
    case Op::BoolConst: return n.value != 0.0;
    case Op::BoolFeat: return read_bool(n.feature, fv);
    case Op::Not: return !eval_bool(n.kids[0], fv);
    case Op::And: {
      const bool a = eval_bool(n.kids[0], fv);
      const bool b = eval_bool(n.kids[1], fv);
      return a && b;
    }
    case Op::Or: {
      const bool a = eval_bool(n.kids[0], fv);
      const bool b = eval_bool(n.kids[1], fv);
      return a || b;
    }
    case Op::Lt: return num(0) < num(1);
    case Op::Le: return num(0) <= num(1);
    case Op::Gt: return num(0) > num(1);
    case Op::Ge: return num(0) >= num(1);
    case Op::Eq: return num(0) == num(1);
    default: return false;
  }
}

EvalOutput eval(const Program& p, const diving::FeatureVector& fv) {
  return EvalOutput{eval_number(p.score, fv), eval_bool(p.roundup, fv)};
}

}  // namespace dhevo::dsl
