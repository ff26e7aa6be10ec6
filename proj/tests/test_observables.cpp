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
#include <random>
#include <vector>

#include <Eigen/QR>

#include "qsw/error.hpp"
#include "qsw/observables.hpp"
#include "qsw/scaling.hpp"

using namespace qsw;

namespace {

ComplexMatrix random_unitary(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return Eigen::HouseholderQR<ComplexMatrix>(a).householderQ();
}

// -0.9 ln 0.9 - 0.1 ln 0.1.
const double kBinaryEntropy = -0.9 * std::log(0.9) - 0.1 * std::log(0.1);

}  // namespace

TEST_SUITE("observables") {

TEST_CASE("von Neumann entropy") {
  SUBCASE("pure state") { CHECK(von_neumann_entropy(DensityMatrix::pure(5, 2).matrix()) == 0.0); }
  SUBCASE("maximally mixed") {
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(100).matrix()) ==
          doctest::Approx(std::log(100.0)).epsilon(1e-13));
  }
  SUBCASE("diag(0.9, 0.1)") {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho.diagonal() << 0.9, 0.1;
    CHECK(von_neumann_entropy(rho) == doctest::Approx(0.32508297339144826).epsilon(1e-14));
    CHECK(kBinaryEntropy == doctest::Approx(0.32508297339144826).epsilon(1e-15));
  }
  SUBCASE("unitary invariance") {
    std::mt19937 rng(29);
    ComplexMatrix rho = ComplexMatrix::Zero(6, 6);
    rho.diagonal() << 0.4, 0.25, 0.15, 0.1, 0.1, 0.0;
    const double s = von_neumann_entropy(rho);
    for (int k = 0; k < 5; ++k) {
      const ComplexMatrix u = random_unitary(6, rng);
      CHECK(von_neumann_entropy(u * rho * u.adjoint()) == doctest::Approx(s).epsilon(1e-12));
    }
  }
  SUBCASE("tiny negative eigenvalues clamp, large ones throw") {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho.diagonal() << 1.0 + 1e-12, -1e-12;
    CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0));
    rho.diagonal() << 1.0 + 1e-6, -1e-6;
    CHECK_THROWS_AS(von_neumann_entropy(rho), InvariantViolation);
  }
  SUBCASE("non-square input") { CHECK_THROWS_AS(von_neumann_entropy(ComplexMatrix(2, 3)), DimensionError); }
}

TEST_CASE("Shannon entropy") {
  const std::vector<double> localized{0.0, 1.0, 0.0};
  CHECK(shannon_entropy(localized) == 0.0);
  const std::vector<double> uniform(100, 0.01);
  CHECK(shannon_entropy(uniform) == doctest::Approx(std::log(100.0)).epsilon(1e-13));
  const std::vector<double> binary{0.9, 0.1};
  CHECK(shannon_entropy(binary) == doctest::Approx(kBinaryEntropy).epsilon(1e-15));
  const std::vector<double> not_normalized{0.5, 0.4};
  CHECK_THROWS_AS(shannon_entropy(not_normalized), InvariantViolation);
  const std::vector<double> negative{1.1, -0.1};
  CHECK_THROWS_AS(shannon_entropy(negative), InvariantViolation);
  CHECK_THROWS_AS(shannon_entropy(std::vector<double>{}), ConfigError);
}

TEST_CASE("entropy traces") {
  SUBCASE("alpha = 0 stays at zero") {
    const Trajectory traj = propagate(make_params(make_chain(30), 0.0, 15), TimeGrid::log_spaced(1e-2, 1e2, 10));
    const EntropyTrace trace = entropy_trace(traj, "chain30");
    CHECK(trace.times.size() == traj.grid.size() - 1);
    CHECK(trace.times.front() == 1e-2);
    for (double s : trace.values) CHECK(std::abs(s) < 1e-6);
  }
  SUBCASE("alpha = 1 equals the Shannon entropy of the populations") {
    const Trajectory traj = propagate(make_params(make_sierpinski(3), 1.0, 0), TimeGrid::log_spaced(1e-2, 1e2, 10));
    const EntropyTrace trace = entropy_trace(traj);
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
      const RealVector p = traj.states[k].matrix().diagonal().real();
      CHECK(std::abs(trace.values[k - 1] - shannon_entropy(std::span<const double>(p.data(), p.size()))) < 1e-9);
    }
  }
  SUBCASE("saturation at ln N") {
    for (double alpha : {0.1, 0.5, 1.0}) {
      const Trajectory traj = propagate(make_params(make_chain(8), alpha, 4), TimeGrid::log_spaced(1e-2, 1e3, 5));
      CHECK(entropy_trace(traj).values.back() == doctest::Approx(std::log(8.0)).epsilon(1e-6));
    }
  }
  SUBCASE("Shannon trace of a classical walk") {
    const TimeGrid grid = TimeGrid::log_spaced(1e-2, 1e2, 5);
    const RealMatrix t = classical_generator(golden_rule_rates(hamiltonian(make_dimer())));
    const EntropyTrace trace = shannon_trace(propagate_classical(t, 0, grid), grid, "dimer");
    CHECK(trace.kind == EntropyKind::shannon);
    CHECK(trace.values.back() == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("validation") {
    EntropyTrace trace;
    trace.dim = 2;
    trace.times = {1.0, 0.5};
    trace.values = {0.1, 0.2};
    CHECK_THROWS_AS(trace.validate(), InvariantViolation);
    trace.times = {0.5, 1.0};
    trace.values = {0.1, 1.0};
    CHECK_THROWS_AS(trace.validate(), InvariantViolation);
  }
}

TEST_CASE("return probability and exported rows") {
  const Trajectory traj = propagate(make_params(make_chain(10), 0.5, 5), TimeGrid::log_spaced(1e-2, 10.0, 5));
  const auto ret = return_probability(traj);
  REQUIRE(ret.size() == traj.grid.size());
  CHECK(ret.front().t == 0.0);
  CHECK(ret.front().value == 1.0);
  const auto rows = trace_rows(traj);
  REQUIRE(rows.size() == traj.grid.size());
  CHECK(rows.front().entropy == 0.0);
  CHECK(rows.front().return_prob == 1.0);
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(rows[k].return_prob == ret[k].value);
}

TEST_CASE("classical return probability exponent on the chain") {
  // p_jj(t) ~ t^{-d_s/2} with d_s = 1.
  const TimeGrid grid = TimeGrid::log_spaced(1e-2, 1e3, 20);
  const RealMatrix t = classical_generator(golden_rule_rates(hamiltonian(make_chain(100))));
  const auto probs = propagate_classical(t, 50, grid);
  std::vector<TimeValue> ret;
  for (std::size_t k = 0; k < grid.size(); ++k) ret.push_back({grid.samples()[k], probs[k](50)});
  const LineFit fit = fit_return_exponent(ret, FitWindow(10.0, 100.0));
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.03));
}

}  // TEST_SUITE
