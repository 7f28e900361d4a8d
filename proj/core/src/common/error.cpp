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

#include "dhevo/common/error.hpp"

namespace dhevo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyBoundBox: return "EmptyBoundBox";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unsolved: return "Unsolved";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::NotFractional: return "NotFractional";
    case ErrorCode::UnknownScorer: return "UnknownScorer";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::MissingTemplate: return "MissingTemplate";
    case ErrorCode::MissingPlaceholder: return "MissingPlaceholder";
    case ErrorCode::MarkerMissing: return "MarkerMissing";
    case ErrorCode::EpisodeFailed: return "EpisodeFailed";
    case ErrorCode::HttpError: return "HttpError";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::QuotaExceeded: return "QuotaExceeded";
    case ErrorCode::ProviderError: return "ProviderError";
    case ErrorCode::TooFew: return "TooFew";
    case ErrorCode::NonMonotoneTrace: return "NonMonotoneTrace";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Interrupted: return "Interrupted";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace dhevo
