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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsw/config.hpp"
#include "qsw/csv.hpp"

namespace qsw {

/// Everything computed for one alpha of a scan.
struct AlphaResult {
  double alpha = 0.0;
  /// Propagation status: "ok", "invariant_violation", "step_underflow",
  /// "numerical_error" or "error".
  /// Fit statuses: "ok", "fit_error", "no_scaling_regime", "no_window" or
  /// "not_fitted".
  std::string status = "ok";
  std::string message;
  std::vector<TraceRow> rows;
  IntegrationStats stats;
  /// Worst snapshot diagnostics over the trajectory.
  SnapshotCheck worst;

  std::optional<FitResult> fixed_fit;
  std::string fixed_status = "ok";
  std::optional<FitResult> auto_fit;
  std::string auto_status = "ok";
  /// Return-probability log-log slope over the fixed window.
  std::optional<LineFit> return_exponent;

  bool ok() const { return status == "ok"; }
  /// Fit in `mode`; always empty for FitMode::none.
  const std::optional<FitResult>& fit(FitMode mode) const;
  /// Summary status for `mode`: the propagation failure if any, else the fit status.
  const std::string& fit_status(FitMode mode) const;
};

struct ScanReport {
  ExperimentConfig config;
  std::string network_tag;
  std::size_t n_nodes = 0;
  std::size_t initial_node = 0;
  std::vector<AlphaResult> results;  // in config.alphas order
  double wall_seconds = 0.0;

  /// True if every alpha propagated and fitted in the configured mode.
  bool all_ok() const;
  std::vector<SummaryRow> summary(FitMode mode) const;
};

/// Propagates and fits every alpha on a worker pool. Per-alpha failures are
/// recorded in the report; only configuration errors throw.
ScanReport compute_scan(const ExperimentConfig& cfg);

/// "trace_alpha_<a>.csv" with a printed via {:g}.
std::string trace_file_name(double alpha);

/// Writes per-alpha trace CSVs, summary.csv (configured fit mode),
/// summary_<other mode>.csv when that mode produced any fit, and run.json.
void write_scan(const ScanReport& report, const std::filesystem::path& dir);

/// compute_scan followed by write_scan into cfg.output_dir.
ScanReport run_scan(const ExperimentConfig& cfg);

enum class FigureKind { fig1a, fig1b, fig2 };

std::string_view to_string(FigureKind f);
FigureKind parse_figure(std::string_view s);

/// Figure defaults: fig1a chain(100), fig1b gasket g=5, both on
/// figure_alpha_grid(); fig2 uses the same grid.
ExperimentConfig figure_config(FigureKind which);

/// Writes <output_dir>/<which>.csv plus the underlying scan outputs in
/// subdirectories; returns the figure CSV path.
///
/// fig1a/fig1b: columns t, S_alpha_<a>... (one per alpha, t = 0 included).
/// fig2: columns network,initial_node,node_index,alpha,fit_mode,d_info,
/// r_squared,window_lo,window_hi,status; chain(100) and gasket g=5, each from
/// its center and its corner node, with fixed and auto fits. The network
/// and initial node of `cfg` are ignored for fig2.
std::filesystem::path figure_data(FigureKind which, const ExperimentConfig& cfg, bool* all_ok = nullptr);

}  // namespace qsw
