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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>

#include "qsw/error.hpp"

namespace qsw {

struct StepControl {
  double rtol = 1e-8;
  double atol = 1e-10;
  /// Abort once the step falls below this fraction of max(1, |t|).
  double min_relative_step = 1e-13;
  std::size_t max_steps = 50'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL and a standard I-controller.
///
/// `State` is any Eigen dense type (real or complex). `Rhs` is a callable
/// `void(const State& y, State& dydt)`; the system is autonomous.
///
/// advance_to() lands exactly on the requested time by clipping the last
/// step; the unclipped step proposal is kept for the next call, so frequent
/// output times do not throttle the step size.
template <class State, class Rhs>
class DormandPrince54 {
 public:
  DormandPrince54(Rhs rhs, State y0, double t0, StepControl control = {})
      : rhs_(std::move(rhs)), y_(std::move(y0)), t_(t0), control_(control) {
    if (!(control_.rtol > 0.0) || !(control_.atol > 0.0)) throw ConfigError("tolerances must be positive");
    k1_.resizeLike(y_);
    rhs_(y_, k1_);
    ++stats_.rhs_evaluations;
  }

  double time() const { return t_; }
  const State& state() const { return y_; }
  const IntegrationStats& stats() const { return stats_; }

  /// Replaces the current state (e.g. after a projection). Recomputes the
  /// cached derivative so FSAL stays consistent.
  void reset_state(State y) {
    y_ = std::move(y);
    rhs_(y_, k1_);
    ++stats_.rhs_evaluations;
  }

  void advance_to(double t_end) {
    if (t_end < t_) throw ConfigError("integrator cannot step backwards");
    if (t_end == t_) return;
    if (h_ <= 0.0) h_ = initial_step(t_end - t_);

    while (t_ < t_end) {
      if (stats_.accepted + stats_.rejected >= control_.max_steps) {
        throw StepSizeUnderflow(diagnostic("step budget exhausted"));
      }
      const double remaining = t_end - t_;
      const bool clipped = h_ >= remaining;
      const double h = clipped ? remaining : h_;

      const double err = attempt(h);
      const double factor = std::clamp(kSafety * std::pow(std::max(err, 1e-10), -0.2), kMinShrink, kMaxGrow);

      if (err <= 1.0) {
        t_ = clipped ? t_end : t_ + h;
        y_.swap(y_new_);
        k1_.swap(k7_);
        ++stats_.accepted;
        // A clipped step that passed easily says nothing new about the
        // natural step size.
        h_ = (clipped && factor >= 1.0) ? std::max(h_, h * factor) : h * factor;
      } else {
        ++stats_.rejected;
        h_ = h * std::max(factor, kMinShrink);
      }
      if (h_ < control_.min_relative_step * std::max(1.0, std::abs(t_))) {
        throw StepSizeUnderflow(diagnostic("step size underflow"));
      }
    }
  }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kMinShrink = 0.2;
  static constexpr double kMaxGrow = 5.0;

  // Butcher tableau.
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                          b6 = 11.0 / 84.0;
  // b - b_hat (5th minus embedded 4th order weights).
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  // Takes a trial step of size h from (t_, y_); fills y_new_ and k7_ and
  // returns the scaled RMS error.
  double attempt(double h) {
    tmp_ = y_ + h * a21 * k1_;
    rhs_(tmp_, k2_);
    tmp_ = y_ + h * (a31 * k1_ + a32 * k2_);
    rhs_(tmp_, k3_);
    tmp_ = y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs_(tmp_, k4_);
    tmp_ = y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs_(tmp_, k5_);
    tmp_ = y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs_(tmp_, k6_);
    y_new_ = y_ + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs_(y_new_, k7_);
    stats_.rhs_evaluations += 6;

    tmp_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const double sq =
        (tmp_.cwiseAbs().array() / (control_.atol + control_.rtol * y_.cwiseAbs().cwiseMax(y_new_.cwiseAbs()).array()))
            .square()
            .sum();
    return std::sqrt(sq / static_cast<double>(y_.size()));
  }

  // Hairer's starting step heuristic.
  double initial_step(double span) {
    auto norm = [&](const State& v) {
      const double sq = (v.cwiseAbs().array() / (control_.atol + control_.rtol * y_.cwiseAbs().array())).square().sum();
      return std::sqrt(sq / static_cast<double>(v.size()));
    };
    const double d0 = norm(y_);
    const double d1 = norm(k1_);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    tmp_ = y_ + h0 * k1_;
    rhs_(tmp_, k2_);
    ++stats_.rhs_evaluations;
    k3_ = k2_ - k1_;
    const double d2 = norm(k3_) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, span});
  }

  std::string diagnostic(const char* what) const {
    std::ostringstream os;
    os << what << " at t=" << t_ << " (h=" << h_ << ", accepted=" << stats_.accepted
       << ", rejected=" << stats_.rejected << ")";
    return os.str();
  }

  Rhs rhs_;
  State y_;
  double t_;
  StepControl control_;
  double h_ = 0.0;
  IntegrationStats stats_;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, y_new_, tmp_;
};

}  // namespace qsw
