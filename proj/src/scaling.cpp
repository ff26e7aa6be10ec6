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

#include "qsw/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsw/error.hpp"

namespace qsw {

namespace {

constexpr double kWindowSlack = 1e-9;
constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kMinAutoWindowSamples = 20;
constexpr double kDimerValidityLimit = 0.1;

}  // namespace

FitWindow::FitWindow(double t_lo, double t_hi) : t_lo_(t_lo), t_hi_(t_hi) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw ConfigError("fit window needs 0 < t_lo < t_hi");
  if (t_hi / t_lo < kMinRatio * (1.0 - kWindowSlack)) {
    throw ConfigError("fit window [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                      "] spans less than a factor of 3");
  }
}

bool FitWindow::contains(double t) const {
  return t >= t_lo_ * (1.0 - kWindowSlack) && t <= t_hi_ * (1.0 + kWindowSlack);
}

double FitWindow::decades() const { return std::log10(t_hi_ / t_lo_); }

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("fit_line: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw FitError("fit_line needs at least two points");

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw FitError("fit_line: abscissa has zero variance");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = n;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (fit.slope * x[i] + fit.intercept);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

FitResult fit_information_dimension(const EntropyTrace& trace, const FitWindow& window) {
  if (trace.times.size() != trace.values.size()) throw DimensionError("entropy trace has mismatched columns");
  std::vector<double> log_t;
  std::vector<double> s;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    if (!(trace.times[i] > 0.0)) throw FitError("entropy trace contains a non-positive time");
    if (window.contains(trace.times[i])) {
      log_t.push_back(std::log(trace.times[i]));
      s.push_back(trace.values[i]);
    }
  }
  if (log_t.size() < kMinFitPoints) {
    throw FitError("only " + std::to_string(log_t.size()) + " samples inside fit window [" +
                   std::to_string(window.t_lo()) + ", " + std::to_string(window.t_hi()) + "], need 5");
  }
  const LineFit line = fit_line(log_t, s);
  return FitResult{line.slope, line.intercept, window, line.r_squared, line.n_points, trace.alpha};
}

LineFit fit_return_exponent(const std::vector<TimeValue>& return_prob, const FitWindow& window) {
  std::vector<double> log_t;
  std::vector<double> log_p;
  for (const TimeValue& tv : return_prob) {
    if (tv.t <= 0.0 || !window.contains(tv.t)) continue;
    if (!(tv.value > 0.0)) throw FitError("return probability must be positive for a log-log fit");
    log_t.push_back(std::log(tv.t));
    log_p.push_back(std::log(tv.value));
  }
  if (log_t.size() < kMinFitPoints) throw FitError("too few return-probability samples inside fit window");
  return fit_line(log_t, log_p);
}

void AutoWindowOptions::validate() const {
  if (!(min_decades >= std::log10(FitWindow::kMinRatio) - kWindowSlack)) {
    throw ConfigError("min_decades must be at least log10(3)");
  }
  if (!(saturation_margin > 0.0 && saturation_margin <= 1.0)) {
    throw ConfigError("saturation_margin must lie in (0, 1]");
  }
  if (!(transient_time >= 0.0)) throw ConfigError("transient_time must be nonnegative");
}

FitWindow auto_window(const EntropyTrace& trace, const AutoWindowOptions& options) {
  options.validate();
  const std::size_t n = trace.times.size();
  if (n != trace.values.size()) throw DimensionError("entropy trace has mismatched columns");
  if (n < kMinAutoWindowSamples) {
    throw FitError("auto window needs at least 20 samples, trace has " + std::to_string(n));
  }
  if (trace.dim < 2) throw FitError("auto window needs the network size to locate saturation");

  const double ceiling = options.saturation_margin * std::log(static_cast<double>(trace.dim));
  std::vector<bool> admissible(n);
  for (std::size_t i = 0; i < n; ++i) {
    admissible[i] = trace.times[i] > 0.0 && trace.times[i] >= options.transient_time * (1.0 - kWindowSlack) &&
                    trace.values[i] < ceiling;
  }

  bool found = false;
  double best_r2 = -1.0;
  std::size_t best_lo = 0;
  std::size_t best_hi = 0;
  std::vector<double> log_t;
  std::vector<double> s;
  for (std::size_t i = 0; i < n; ++i) {
    if (!admissible[i]) continue;
    std::size_t k = i;
    while (k + 1 < n && admissible[k + 1] &&
           std::log10(trace.times[k] / trace.times[i]) < options.min_decades - kWindowSlack) {
      ++k;
    }
    if (std::log10(trace.times[k] / trace.times[i]) < options.min_decades - kWindowSlack) continue;
    if (k - i + 1 < kMinFitPoints) continue;

    log_t.clear();
    s.clear();
    for (std::size_t m = i; m <= k; ++m) {
      log_t.push_back(std::log(trace.times[m]));
      s.push_back(trace.values[m]);
    }
    const double r2 = fit_line(log_t, s).r_squared;
    // Ascending scan: ">=" hands ties to the later window.
    if (!found || r2 >= best_r2 - kTieTolerance) {
      best_r2 = r2;
      best_lo = i;
      best_hi = k;
      found = true;
    }
  }
  if (!found) {
    throw FitError("no scaling regime: no window of " + std::to_string(options.min_decades) +
                   " decades between the transient and saturation");
  }
  return FitWindow(trace.times[best_lo], trace.times[best_hi]);
}

double dimer_short_time(double alpha, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("dimer short-time law needs 0 < alpha <= 1");
  if (!(t > 0.0)) throw ConfigError("dimer short-time law needs t > 0");
  const double x = alpha * t;
  if (!(x < kDimerValidityLimit)) {
    throw ConfigError("dimer short-time law is only valid for alpha t < 0.1, got " + std::to_string(x));
  }
  return x * (1.0 - std::log(x));
}

std::vector<DimensionPoint> dimension_curve(std::vector<FitResult> results) {
  std::sort(results.begin(), results.end(), [](const FitResult& a, const FitResult& b) { return a.alpha < b.alpha; });
  std::vector<DimensionPoint> curve;
  curve.reserve(results.size());
  for (const FitResult& r : results) {
    if (!curve.empty() && curve.back().alpha == r.alpha) {
      throw ConfigError("duplicate alpha " + std::to_string(r.alpha) + " in dimension curve");
    }
    curve.push_back({r.alpha, r.d_info, r.r_squared});
  }
  return curve;
}

}  // namespace qsw
