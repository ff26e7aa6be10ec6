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

#include "qsw/propagator.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <fmt/format.h>

#include "qsw/error.hpp"

namespace qsw {

namespace {

constexpr double kTraceRenormThreshold = 1e-12;
constexpr double kGeneratorTolerance = 1e-12;
constexpr double kProbabilityFloor = -1e-12;
constexpr double kProbabilitySumTolerance = 1e-10;

void project_to_density_matrix(ComplexMatrix& rho) {
  rho = (0.5 * (rho + rho.adjoint())).eval();
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceRenormThreshold) rho /= tr;
}

}  // namespace

TimeGrid TimeGrid::log_spaced(double t_min, double t_max, int points_per_decade) {
  if (!(t_min > 0.0)) throw ConfigError("t_min must be positive");
  if (!(t_max > t_min)) throw ConfigError("t_max must exceed t_min");
  if (points_per_decade < 1) throw ConfigError("points_per_decade must be >= 1");

  const double decades = std::log10(t_max / t_min);
  const auto intervals = static_cast<long>(std::ceil(decades * points_per_decade - 1e-9));
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(intervals) + 2);
  samples.push_back(0.0);
  for (long k = 0; k < intervals; ++k) {
    samples.push_back(t_min * std::pow(10.0, static_cast<double>(k) / points_per_decade));
  }
  samples.push_back(t_max);
  return TimeGrid(t_min, t_max, points_per_decade, std::move(samples));
}

namespace {

SnapshotCheck check_snapshot(const DensityMatrix& snapshot, double t) {
  SnapshotCheck check{snapshot.trace_deviation(), snapshot.hermiticity_deviation(), snapshot.min_eigenvalue()};
  if (check.trace_deviation > DensityMatrix::kTraceTolerance ||
      check.hermiticity_deviation > DensityMatrix::kHermiticityTolerance ||
      check.min_eigenvalue < DensityMatrix::kEigenvalueFloor) {
    throw InvariantViolation(fmt::format(
        "density matrix invariant violated at t={:g}: trace deviation {:.3e}, Hermiticity deviation {:.3e}, "
        "min eigenvalue {:.3e}",
        t, check.trace_deviation, check.hermiticity_deviation, check.min_eigenvalue));
  }
  return check;
}

void record(Trajectory& traj, DensityMatrix snapshot, double t) {
  traj.checks.push_back(check_snapshot(snapshot, t));
  traj.states.push_back(std::move(snapshot));
}

void propagate_density_matrix(Trajectory& traj, const StepControl& control) {
  const QswGenerator generator(traj.params);
  auto rhs = [&generator](const ComplexMatrix& rho, ComplexMatrix& out) { generator.apply(rho, out); };
  DormandPrince54<ComplexMatrix, decltype(rhs)> stepper(
      rhs, DensityMatrix::pure(traj.params.dim(), traj.params.initial_node).matrix(), 0.0, control);

  for (double t : traj.grid.samples()) {
    if (t > stepper.time()) {
      stepper.advance_to(t);
      ComplexMatrix rho = stepper.state();
      project_to_density_matrix(rho);
      stepper.reset_state(std::move(rho));
    }
    record(traj, DensityMatrix(stepper.state()), t);
  }
  traj.stats = stepper.stats();
}

// alpha = 0: d|psi>/dt = -i H |psi>.
void propagate_state_vector(Trajectory& traj, const StepControl& control) {
  Eigen::SparseMatrix<Complex> h = traj.params.hamiltonian.matrix().sparseView(Complex(1.0, 0.0), 0.0);
  h.makeCompressed();
  auto rhs = [&h](const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) {
    out.noalias() = h * psi;
    out *= Complex(0.0, -1.0);
  };
  const auto n = static_cast<Eigen::Index>(traj.params.dim());
  const auto j = static_cast<Eigen::Index>(traj.params.initial_node);
  DormandPrince54<Eigen::VectorXcd, decltype(rhs)> stepper(rhs, Eigen::VectorXcd::Unit(n, j), 0.0, control);

  for (double t : traj.grid.samples()) {
    if (t > stepper.time()) stepper.advance_to(t);
    const Eigen::VectorXcd& psi = stepper.state();
    ComplexMatrix rho = psi * psi.adjoint();
    project_to_density_matrix(rho);
    record(traj, DensityMatrix(std::move(rho)), t);
  }
  traj.stats = stepper.stats();
}

}  // namespace

Trajectory propagate(const QswParams& params, const TimeGrid& grid, const StepControl& control,
                     PropagationPath path) {
  params.validate();
  Trajectory traj{grid, {}, params, {}, {}};
  traj.states.reserve(grid.size());
  traj.checks.reserve(grid.size());
  if (path == PropagationPath::automatic && params.alpha == 0.0) {
    propagate_state_vector(traj, control);
  } else {
    propagate_density_matrix(traj, control);
  }
  return traj;
}

std::vector<RealVector> propagate_classical(const RealMatrix& generator, std::size_t initial_node,
                                            const TimeGrid& grid) {
  const Eigen::Index n = generator.rows();
  if (n == 0 || generator.cols() != n) throw DimensionError("generator must be square");
  if (initial_node >= static_cast<std::size_t>(n)) throw ConfigError("initial node out of range");
  if ((generator - generator.transpose()).cwiseAbs().maxCoeff() > kGeneratorTolerance) {
    throw ConfigError("classical propagation requires a symmetric generator");
  }
  if (generator.colwise().sum().cwiseAbs().maxCoeff() > kGeneratorTolerance * static_cast<double>(n)) {
    throw ConfigError("generator columns must sum to zero");
  }

  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(generator);
  const RealMatrix& v = eig.eigenvectors();
  const RealVector& lambda = eig.eigenvalues();
  const auto j = static_cast<Eigen::Index>(initial_node);
  const RealVector overlap = v.row(j).transpose();  // V^T e_j

  std::vector<RealVector> out;
  out.reserve(grid.size());
  for (double t : grid.samples()) {
    if (t == 0.0) {
      out.push_back(RealVector::Unit(n, j));
      continue;
    }
    const RealVector decay = (lambda * t).array().exp().matrix();
    RealVector p = v * decay.cwiseProduct(overlap);
    if (p.minCoeff() < kProbabilityFloor || std::abs(p.sum() - 1.0) > kProbabilitySumTolerance) {
      throw InvariantViolation("classical propagation left the probability simplex at t=" + std::to_string(t));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qsw
