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

#include "dhevo/metrics/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "dhevo/common/error.hpp"
#include "dhevo/metrics/metrics.hpp"

namespace dhevo::metrics {
namespace {

std::string exact(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Method and instance names are quoted when they contain separators.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cur;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cur));
      cur.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cur.empty()) {
        row.push_back(std::move(cur));
        rows.push_back(std::move(row));
      }
      row.clear();
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (any || !cur.empty()) {
    row.push_back(std::move(cur));
    rows.push_back(std::move(row));
  }
  return rows;
}

double number(const std::string& s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(ErrorCode::ParseError, "bad number '" + s + "' in CSV");
  }
  return v;
}

void expect_header(const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& header) {
  if (rows.empty() || rows.front() != header) fail(ErrorCode::SchemaMismatch, "unexpected CSV header");
}

}  // namespace

std::vector<SummaryRow> summarize_rows(const std::vector<InstanceRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> gaps;
  for (const auto& r : rows) {
    auto& g = gaps[r.method];
    if (g.empty()) order.push_back(r.method);
    g.push_back(r.gap);
  }
  std::vector<SummaryRow> out;
  for (const auto& m : order) {
    const auto& g = gaps[m];
    const Summary s = summarize(g);
    out.push_back({m, g.size(), s.mean, s.std_error, s.variance, diversity_index(g)});
  }
  return out;
}

std::string instance_csv(const std::vector<InstanceRow>& rows) {
  std::string out = "method,instance,z_ref,objective,gap\n";
  for (const auto& r : rows) {
    out += field(r.method) + "," + field(r.instance) + "," + exact(r.z_ref) + "," +
           (r.objective ? exact(*r.objective) : std::string()) + "," + exact(r.gap) + "\n";
  }
  return out;
}

std::vector<InstanceRow> parse_instance_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(rows, {"method", "instance", "z_ref", "objective", "gap"});
  std::vector<InstanceRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 5) fail(ErrorCode::ParseError, "CSV row " + std::to_string(i) + " has wrong width");
    InstanceRow row{r[0], r[1], number(r[2]), std::nullopt, number(r[4])};
    if (!r[3].empty()) row.objective = number(r[3]);
    out.push_back(std::move(row));
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "method,count,mean,std_error,variance,diversity\n";
  for (const auto& r : rows) {
    out += field(r.method) + "," + std::to_string(r.count) + "," + exact(r.mean) + "," + exact(r.std_error) + "," +
           exact(r.variance) + "," + exact(r.diversity) + "\n";
  }
  return out;
}

std::vector<SummaryRow> parse_summary_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(rows, {"method", "count", "mean", "std_error", "variance", "diversity"});
  std::vector<SummaryRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 6) fail(ErrorCode::ParseError, "CSV row " + std::to_string(i) + " has wrong width");
    out.push_back({r[0], static_cast<std::size_t>(number(r[1])), number(r[2]), number(r[3]), number(r[4]),
                   number(r[5])});
  }
  return out;
}

std::string summary_markdown(const std::vector<SummaryRow>& rows, int digits) {
  std::vector<std::array<std::string, 4>> cells = {{"Method", "N", "Primal gap mean (SE)", "DI"}};
  for (const auto& r : rows) {
    cells.push_back({r.method, std::to_string(r.count),
                     fixed(r.mean, digits) + " (" + fixed(r.std_error, digits) + ")", fixed(r.diversity, digits)});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  auto line = [&](const std::array<std::string, 4>& row) {
    std::string out = "|";
    for (std::size_t c = 0; c < 4; ++c) out += " " + row[c] + std::string(width[c] - row[c].size(), ' ') + " |";
    return out + "\n";
  };
  std::string out = line(cells[0]);
  out += "|";
  for (std::size_t c = 0; c < 4; ++c) out += std::string(width[c] + 2, '-') + "|";
  out += "\n";
  for (std::size_t i = 1; i < cells.size(); ++i) out += line(cells[i]);
  return out;
}

}  // namespace dhevo::metrics
