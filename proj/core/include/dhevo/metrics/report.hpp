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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dhevo::metrics {

/// One (method, instance) evaluation.
struct InstanceRow {
  std::string method;
  std::string instance;
  double z_ref = 0.0;
  std::optional<double> objective;  // none when the dive found nothing
  double gap = 0.0;
};

struct SummaryRow {
  std::string method;
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double variance = 0.0;
  double diversity = 0.0;  // diversity index of the per-instance gaps
};

/// Groups rows by method in order of first appearance.
std::vector<SummaryRow> summarize_rows(const std::vector<InstanceRow>& rows);

/// Columns: method,instance,z_ref,objective,gap. Values use round-trip
/// precision; a missing objective is written as an empty field.
std::string instance_csv(const std::vector<InstanceRow>& rows);
std::vector<InstanceRow> parse_instance_csv(std::string_view text);

/// Columns: method,count,mean,std_error,variance,diversity.
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_summary_csv(std::string_view text);

/// Aligned table with a "mean (SE)" column.
std::string summary_markdown(const std::vector<SummaryRow>& rows, int digits = 4);

}  // namespace dhevo::metrics
