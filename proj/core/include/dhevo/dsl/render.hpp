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

#include <string>

#include "dhevo/dsl/ast.hpp"

namespace dhevo::dsl {

/// Canonical text with minimal parentheses; parse(render(p)) == p.
std::string render(const Program& p);
std::string render(const Node& n);

/// Shortest decimal text that reads back to exactly `v`.
std::string format_number(double v);

}  // namespace dhevo::dsl
