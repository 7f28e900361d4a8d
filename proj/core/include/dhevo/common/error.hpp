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

#include <stdexcept>
#include <string>
#include <string_view>

namespace dhevo {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  DuplicateEntry,
  IndexOutOfRange,
  EmptyBoundBox,
  Unbounded,
  TooLarge,
  Unsolved,
  InfeasibleSpec,
  NotFractional,
  UnknownScorer,
  ParseError,
  UnknownIdentifier,
  TypeError,
  LimitExceeded,
  MissingTemplate,
  MissingPlaceholder,
  MarkerMissing,
  EpisodeFailed,
  HttpError,
  Timeout,
  QuotaExceeded,
  ProviderError,
  TooFew,
  NonMonotoneTrace,
  IoError,
  SchemaMismatch,
  ConfigError,
  Interrupted,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace dhevo
