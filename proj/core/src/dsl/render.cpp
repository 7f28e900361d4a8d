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

#include "dhevo/dsl/render.hpp"

#include <charconv>
#include <string_view>

namespace dhevo::dsl {
namespace {

// Binding strength; atoms (leaves, calls) bind tightest.
int precedence(Op op) {
  switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Not: return 3;
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
    case Op::Eq:
      return 4;
    case Op::Add:
    case Op::Sub:
      return 5;
    case Op::Mul:
    case Op::Div:
      return 6;
    case Op::Neg:
      return 7;
    default:
      return 8;
  }
}

std::string_view infix(Op op) {
  switch (op) {
    case Op::Add: return " + ";
    case Op::Sub: return " - ";
    case Op::Mul: return " * ";
    case Op::Div: return " / ";
    case Op::And: return " and ";
    case Op::Or: return " or ";
    case Op::Lt: return " < ";
    case Op::Le: return " <= ";
    case Op::Gt: return " > ";
    case Op::Ge: return " >= ";
    case Op::Eq: return " == ";
    default: return " ? ";
  }
}

void emit(const Node& n, int min_prec, std::string& out) {
  const int prec = precedence(n.op);
  const bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (n.op) {
    case Op::Const:
      out += format_number(n.value);
      break;
    case Op::BoolConst:
      out += n.value != 0.0 ? "true" : "false";
      break;
    case Op::Feat:
    case Op::BoolFeat:
      out += feature_name(n.feature);
      break;
    case Op::Neg:
      out += '-';
      // A literal right after '-' would fold into a negative constant.
      if (n.kids[0].op == Op::Const) {
        out += '(';
        emit(n.kids[0], 0, out);
        out += ')';
      } else {
        emit(n.kids[0], 7, out);
      }
      break;
    case Op::Not:
      out += "not ";
      emit(n.kids[0], 3, out);
      break;
    case Op::Abs:
      out += "abs(";
      emit(n.kids[0], 0, out);
      out += ')';
      break;
    case Op::Min:
    case Op::Max:
      out += n.op == Op::Min ? "min(" : "max(";
      emit(n.kids[0], 0, out);
      out += ", ";
      emit(n.kids[1], 0, out);
      out += ')';
      break;
    case Op::If:
      out += "if(";
      emit(n.kids[0], 0, out);
      out += ", ";
      emit(n.kids[1], 0, out);
      out += ", ";
      emit(n.kids[2], 0, out);
      out += ')';
      break;
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
    case Op::Eq:
      emit(n.kids[0], 5, out);
      out += infix(n.op);
      emit(n.kids[1], 5, out);
      break;
    default:  // left-associative binary operators
      emit(n.kids[0], prec, out);
      out += infix(n.op);
      emit(n.kids[1], prec + 1, out);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ec == std::errc() ? ptr : buf);
  if (s == "-0") s = "0";
  return s;
}

std::string render(const Node& n) {
  std::string out;
  emit(n, 0, out);
  return out;
}

std::string render(const Program& p) { return "score: " + render(p.score) + " roundup: " + render(p.roundup); }

}  // namespace dhevo::dsl
