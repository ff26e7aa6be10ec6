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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsw/error.hpp"
#include "qsw/scaling.hpp"

using namespace qsw;

TEST_SUITE("scaling") {

TEST_CASE("fit windows") {
  const FitWindow w(10.0, 100.0);
  CHECK(w.decades() == doctest::Approx(1.0));
  CHECK(w.contains(10.0));
  CHECK(w.contains(100.0 * (1.0 + 1e-12)));
  CHECK_FALSE(w.contains(9.9));
  CHECK_THROWS_AS(FitWindow(1.0, 2.9), ConfigError);
  CHECK_THROWS_AS(FitWindow(0.0, 10.0), ConfigError);
  CHECK_NOTHROW(FitWindow(1.0, 3.0));
}

TEST_CASE("line fit") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  const std::vector<double> flat{2, 2, 2, 2};
  CHECK(fit_line(x, flat).r_squared == 0.0);
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1}, std::vector<double>{0, 1}), FitError);
  CHECK_THROWS_AS(fit_line(x, std::vector<double>{1, 2}), DimensionError);
}

namespace {

EntropyTrace synthetic(const std::vector<double>& times, double (*s)(double), std::size_t dim) {
  EntropyTrace trace;
  trace.dim = dim;
  for (double t : times) {
    trace.times.push_back(t);
    trace.values.push_back(s(t));
  }
  return trace;
}

std::vector<double> positive_samples(double t_min = 1e-2, double t_max = 1e3, int ppd = 20) {
  auto s = TimeGrid::log_spaced(t_min, t_max, ppd).samples();
  s.erase(s.begin());
  return s;
}

}  // namespace

TEST_CASE("information dimension from an exact logarithm") {
  const EntropyTrace trace = synthetic(positive_samples(), [](double t) { return 0.5 * std::log(t) + 0.1; }, 1000000);
  const FitResult fit = fit_information_dimension(trace, FitWindow(10.0, 100.0));
  CHECK(fit.d_info == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.n_points == 21);
}

TEST_CASE("slope is invariant under rescaling time") {
  // S(t) = 0.7 ln(c t) has the same slope in ln t for any c; only the intercept moves.
  std::vector<double> times = positive_samples();
  EntropyTrace a = synthetic(times, [](double t) { return 0.7 * std::log(t) + 0.3 * std::sin(t / 50.0); }, 1000000);
  EntropyTrace b = a;
  for (double& t : b.times) t *= 3.0;
  const FitResult fa = fit_information_dimension(a, FitWindow(10.0, 100.0));
  const FitResult fb = fit_information_dimension(b, FitWindow(30.0, 300.0));
  CHECK(fa.d_info == doctest::Approx(fb.d_info).epsilon(1e-12));
  CHECK(fb.intercept == doctest::Approx(fa.intercept - fa.d_info * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("fit needs enough points") {
  const EntropyTrace trace = synthetic(positive_samples(1e-2, 1e3, 2), [](double t) { return std::log1p(t); }, 1000);
  CHECK_THROWS_AS(fit_information_dimension(trace, FitWindow(10.0, 100.0)), FitError);
}

TEST_CASE("auto window on a spliced synthetic trace") {
  // alpha t (1 - ln alpha t) below t = 1, 0.5 ln t above, clipped at ln 12.
  auto s = [](double t) {
    const double alpha = 0.05;
    if (t < 1.0) return alpha * t * (1.0 - std::log(alpha * t));
    return std::min(0.5 * std::log(t), std::log(12.0));
  };
  const EntropyTrace trace = synthetic(positive_samples(), s, 12);
  for (double transient : {0.0, 1.0}) {
    AutoWindowOptions opts;
    opts.transient_time = transient;
    const FitWindow w = auto_window(trace, opts);
    CHECK(w.t_lo() >= 1.0);
    CHECK(w.t_hi() <= 200.0);
    CHECK(w.decades() >= opts.min_decades - 1e-9);
    CHECK(fit_information_dimension(trace, w).d_info == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("auto window recovers a one-decade logarithmic regime") {
  // Linear growth, then 0.8 ln t on [20, 200], then a plateau.
  auto s = [](double t) {
    if (t < 20.0) return 0.8 * std::log(20.0) * t / 20.0;
    return 0.8 * std::log(std::min(t, 200.0));
  };
  const EntropyTrace trace = synthetic(positive_samples(), s, 1000);
  AutoWindowOptions opts;
  opts.min_decades = 0.9;
  opts.transient_time = 0.1;
  const FitWindow w = auto_window(trace, opts);
  CHECK(w.t_lo() >= 20.0 * (1.0 - 1e-9));
  CHECK(w.t_hi() <= 200.0 * (1.0 + 1e-9));
  CHECK(fit_information_dimension(trace, w).d_info == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("auto window failures") {
  SUBCASE("saturated from the start") {
    const EntropyTrace trace = synthetic(positive_samples(), [](double) { return std::log(4.0); }, 4);
    CHECK_THROWS_AS(auto_window(trace), FitError);
  }
  SUBCASE("too few samples") {
    const EntropyTrace trace = synthetic(positive_samples(1.0, 10.0, 10), [](double t) { return std::log(t); }, 1000);
    CHECK_THROWS_AS(auto_window(trace), FitError);
  }
  SUBCASE("bad options") {
    AutoWindowOptions opts;
    opts.min_decades = 0.3;
    CHECK_THROWS_AS(opts.validate(), ConfigError);
    opts = {};
    opts.saturation_margin = 1.5;
    CHECK_THROWS_AS(opts.validate(), ConfigError);
  }
}

TEST_CASE("dimer short-time law") {
  CHECK(dimer_short_time(0.5, 0.01) == doctest::Approx(0.005 * (1.0 - std::log(0.005))).epsilon(1e-15));
  CHECK(dimer_short_time(0.5, 0.01) == doctest::Approx(0.031491586).epsilon(1e-8));
  CHECK(dimer_short_time(1e-9, 0.01) < 1e-9);
  CHECK(dimer_short_time(0.2, 0.05) == doctest::Approx(dimer_short_time(1.0, 0.01)).epsilon(1e-15));
  CHECK_THROWS_AS(dimer_short_time(0.0, 0.01), ConfigError);
  CHECK_THROWS_AS(dimer_short_time(1.0, 0.2), ConfigError);
  CHECK_THROWS_AS(dimer_short_time(0.5, -1.0), ConfigError);
}

TEST_CASE("dimension curve") {
  FitResult a;
  a.alpha = 0.5;
  a.d_info = 0.6;
  FitResult b;
  b.alpha = 0.1;
  b.d_info = 1.0;
  const auto curve = dimension_curve({a, b});
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].alpha == 0.1);
  CHECK(curve[1].d_info == 0.6);
  CHECK_THROWS_AS(dimension_curve({a, a}), ConfigError);
}

}  // TEST_SUITE
