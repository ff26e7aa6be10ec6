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
#include <span>
#include <vector>

#include "qsw/observables.hpp"

namespace qsw {

/// Time interval [t_lo, t_hi] spanning at least a factor of 3.
class FitWindow {
 public:
  static constexpr double kMinRatio = 3.0;

  FitWindow(double t_lo, double t_hi);

  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  /// Inclusive, with a relative slack of 1e-9 so grid points that land on
  /// the boundary up to rounding are kept.
  bool contains(double t) const;
  double decades() const;

 private:
  double t_lo_;
  double t_hi_;
};

/// Ordinary least squares y = slope x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// 1 - SS_res / SS_tot, clamped to [0, 1]; 0 when y has no variance.
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct FitResult {
  double d_info = 0.0;
  double intercept = 0.0;
  FitWindow window{1.0, 10.0};
  double r_squared = 0.0;
  std::size_t n_points = 0;
  double alpha = 0.0;
};

inline constexpr std::size_t kMinFitPoints = 5;

/// Slope of entropy against ln t over the samples inside `window`.
/// Throws FitError with fewer than 5 points or no spread in ln t.
FitResult fit_information_dimension(const EntropyTrace& trace, const FitWindow& window);

/// Log-log slope of the return probability inside `window`; for a classical
/// walk it approaches -d_s / 2.
LineFit fit_return_exponent(const std::vector<TimeValue>& return_prob, const FitWindow& window);

struct AutoWindowOptions {
  double min_decades = 0.6;
  double saturation_margin = 0.9;
  /// Samples before this time are transient and never used.
  double transient_time = 1.0;

  void validate() const;
};

/// Searches for the logarithmic-growth regime.
///
/// Candidate windows start at every admissible sample (t >= transient_time
/// and S < saturation_margin ln N) and extend to the first sample at least
/// `min_decades` later; every sample inside must be admissible. The window
/// with the largest R^2 of the local linear fit wins, ties going to the
/// later window. Throws FitError if the trace has fewer than 20 samples or
/// no candidate exists.
FitWindow auto_window(const EntropyTrace& trace, const AutoWindowOptions& options = {});

/// Small-time dimer entropy, alpha t (1 - ln(alpha t)). Valid for
/// 0 < alpha <= 1, t > 0 and alpha t < 0.1; throws ConfigError otherwise.
double dimer_short_time(double alpha, double t);

struct DimensionPoint {
  double alpha;
  double d_info;
  double r_squared;
};

/// (alpha, d_info, R^2) sorted by alpha. Throws ConfigError on duplicate alphas.
std::vector<DimensionPoint> dimension_curve(std::vector<FitResult> results);

}  // namespace qsw
