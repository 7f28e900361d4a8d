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
#include <string>
#include <string_view>

#include "dhevo/common/error.hpp"
#include "dhevo/dsl/ast.hpp"

namespace dhevo::dsl {

/// Error raised by parse(), carrying a 1-based source position.
class SourceError : public Error {
 public:
  SourceError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammar:
///   heuristic := "score:" expr "roundup:" expr
///   expr  := and ("or" and)*
///   and   := not ("and" not)*
///   not   := "not" not | cmp
///   cmp   := sum (("<"|"<="|">"|">="|"==") sum)?
///   sum   := term (("+"|"-") term)*
///   term  := unary (("*"|"/") unary)*
///   unary := "-" unary | atom
///   atom  := number | "true" | "false" | feature | "(" expr ")"
///          | ("min"|"max") "(" expr "," expr ")" | "abs" "(" expr ")"
///          | "if" "(" expr "," expr "," expr ")"
/// A minus directly before a numeric literal folds into a negative constant.
/// Throws SourceError with ParseError, UnknownIdentifier, TypeError or
/// LimitExceeded.
Program parse(std::string_view text);

}  // namespace dhevo::dsl
