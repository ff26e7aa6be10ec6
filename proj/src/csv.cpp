// Copyright 2026 The qsw Authors
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

#include "qsw/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "qsw/error.hpp"

namespace qsw {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && s[start] == ' ') ++start;
  return s.substr(start);
}

double parse_double(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("line {}: '{}' is not a number", line_no, field));
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  return fmt::format("{:.17g}", x);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.entropy) << ',' << format_double(r.return_prob) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
  auto out = open_for_write(path);
  write_trace_csv(out, rows);
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kTraceHeader) {
    throw ConfigError(std::string("trace CSV must start with header '") + kTraceHeader + "'");
  }
  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (fields.size() != 3) throw ConfigError(fmt::format("line {}: expected 3 fields", line_no));
    rows.push_back({parse_double(fields[0], line_no), parse_double(fields[1], line_no),
                    parse_double(fields[2], line_no)});
  }
  return rows;
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  return read_trace_csv(in);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << format_double(r.alpha) << ',';
    if (r.fit) {
      const FitResult& f = *r.fit;
      out << format_double(f.d_info) << ',' << format_double(f.intercept) << ',' << format_double(f.r_squared)
          << ',' << format_double(f.window.t_lo()) << ',' << format_double(f.window.t_hi()) << ',' << f.n_points;
    } else {
      out << ",,,,,";
    }
    out << ',' << r.status << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  auto out = open_for_write(path);
  write_summary_csv(out, rows);
}

EntropyTrace entropy_trace_from_rows(const std::vector<TraceRow>& rows, std::size_t dim, double alpha,
                                     std::string network_tag) {
  EntropyTrace trace;
  trace.kind = EntropyKind::von_neumann;
  trace.alpha = alpha;
  trace.network_tag = std::move(network_tag);
  trace.dim = dim;
  for (const TraceRow& r : rows) {
    if (r.t <= 0.0) continue;
    trace.times.push_back(r.t);
    trace.values.push_back(r.entropy);
  }
  trace.validate();
  return trace;
}

}  // namespace qsw
