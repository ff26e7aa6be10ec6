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
#include <vector>

#include "qsw/dopri.hpp"
#include "qsw/dynamics.hpp"

namespace qsw {

/// Log-uniform sample times on [t_min, t_max] with t = 0 prepended.
class TimeGrid {
 public:
  static constexpr double kDefaultMin = 1e-2;
  static constexpr double kDefaultMax = 1e3;
  static constexpr int kDefaultPointsPerDecade = 20;

  /// t_k = t_min 10^(k / points_per_decade), the last sample clipped to t_max.
  static TimeGrid log_spaced(double t_min = kDefaultMin, double t_max = kDefaultMax,
                             int points_per_decade = kDefaultPointsPerDecade);

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  int points_per_decade() const { return points_per_decade_; }
  /// All sample times, samples().front() == 0.
  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  TimeGrid(double t_min, double t_max, int ppd, std::vector<double> samples)
      : t_min_(t_min), t_max_(t_max), points_per_decade_(ppd), samples_(std::move(samples)) {}

  double t_min_;
  double t_max_;
  int points_per_decade_;
  std::vector<double> samples_;
};

struct SnapshotCheck {
  double trace_deviation = 0.0;
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
};

struct Trajectory {
  TimeGrid grid;
  std::vector<DensityMatrix> states;  // aligned with grid.samples()
  QswParams params;
  IntegrationStats stats;
  /// Invariant diagnostics measured on every snapshot after projection.
  std::vector<SnapshotCheck> checks;
};

enum class PropagationPath {
  /// Density-matrix integration, except alpha = 0 which integrates the
  /// Schroedinger equation for |psi> and snapshots |psi><psi|.
  automatic,
  /// Always integrate the density matrix.
  density_matrix,
};

/// Integrates the QSW master equation from |j><j| and captures a snapshot at
/// every grid sample.
///
/// After each snapshot the state is re-symmetrized, (rho + rho^dag)/2, and
/// its trace renormalized if it drifted by more than 1e-12. Every snapshot
/// is then checked against the DensityMatrix invariants; a violation throws
/// InvariantViolation, an integrator stall throws StepSizeUnderflow.
///
/// At alpha = 0 the dynamics is unitary and the state stays pure. Explicit
/// Runge-Kutta steps on rho are not positivity preserving, so the zero
/// eigenvalues of a pure rho drift below -1e-8 within t ~ 1 at rtol = 1e-8;
/// the automatic path therefore integrates the state vector instead, with
/// the same stepper.
Trajectory propagate(const QswParams& params, const TimeGrid& grid, const StepControl& control = {},
                     PropagationPath path = PropagationPath::automatic);

/// p(t) = exp(t T) e_j for a symmetric generator, by eigendecomposition.
/// The t = 0 sample is exactly e_j.
std::vector<RealVector> propagate_classical(const RealMatrix& generator, std::size_t initial_node,
                                            const TimeGrid& grid);

}  // namespace qsw
