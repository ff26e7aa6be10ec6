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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsw/observables.hpp"
#include "qsw/scaling.hpp"

namespace qsw {

inline constexpr const char* kTraceHeader = "t,entropy,return_prob";
inline constexpr const char* kSummaryHeader = "alpha,d_info,intercept,r_squared,window_lo,window_hi,n_points,status";

/// Fixed 17-significant-digit formatting (round-trips every double).
std::string format_double(double x);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);

/// Parses a trace CSV. Throws ConfigError on a wrong header or malformed row.
std::vector<TraceRow> read_trace_csv(std::istream& in);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

/// One summary line per alpha. Failed fits leave the numeric fields empty.
struct SummaryRow {
  double alpha = 0.0;
  std::optional<FitResult> fit;
  /// "ok" or a short failure token such as "no_scaling_regime".
  std::string status = "ok";
};

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);

/// Entropy trace (t > 0 rows) rebuilt from exported rows.
EntropyTrace entropy_trace_from_rows(const std::vector<TraceRow>& rows, std::size_t dim, double alpha = 0.0,
                                     std::string network_tag = {});

}  // namespace qsw
