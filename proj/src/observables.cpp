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

#include "qsw/observables.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qsw/error.hpp"

namespace qsw {

namespace {

constexpr double kNegativeEigenvalueLimit = -1e-8;
constexpr double kProbabilityFloor = -1e-12;
constexpr double kProbabilitySumTolerance = 1e-9;
constexpr double kImaginaryTolerance = 1e-12;

double entropy_of_spectrum(const RealVector& lambda) {
  double s = 0.0;
  for (double l : lambda) {
    if (l < kNegativeEigenvalueLimit) {
      throw InvariantViolation("density matrix has eigenvalue " + std::to_string(l) + " below -1e-8");
    }
    if (l > kEigenvalueClamp) s -= l * std::log(l);
  }
  return s;
}

}  // namespace

std::string_view to_string(EntropyKind k) { return k == EntropyKind::von_neumann ? "von_neumann" : "shannon"; }

void EntropyTrace::validate() const {
  if (times.size() != values.size()) throw InvariantViolation("entropy trace has mismatched columns");
  const double upper = dim > 0 ? std::log(static_cast<double>(dim)) + 1e-9 : INFINITY;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw InvariantViolation("entropy trace times must be positive and strictly increasing");
    }
    if (values[i] < -1e-12 || values[i] > upper) {
      throw InvariantViolation("entropy " + std::to_string(values[i]) + " outside [0, ln N]");
    }
  }
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) throw DimensionError("density matrix must be square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(eig.eigenvalues());
}

double shannon_entropy(std::span<const double> p) {
  if (p.empty()) throw ConfigError("probability vector is empty");
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    throw InvariantViolation("probabilities sum to " + std::to_string(total));
  }
  double h = 0.0;
  for (double pk : p) {
    if (pk < kProbabilityFloor) throw InvariantViolation("negative probability " + std::to_string(pk));
    if (pk > 0.0) h -= pk * std::log(pk);
  }
  return h;
}

EntropyTrace entropy_trace(const Trajectory& traj, std::string network_tag) {
  EntropyTrace trace;
  trace.kind = EntropyKind::von_neumann;
  trace.alpha = traj.params.alpha;
  trace.network_tag = std::move(network_tag);
  trace.dim = traj.params.dim();
  const auto& samples = traj.grid.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] <= 0.0) continue;
    trace.times.push_back(samples[i]);
    trace.values.push_back(von_neumann_entropy(traj.states[i].matrix()));
  }
  return trace;
}

EntropyTrace shannon_trace(const std::vector<RealVector>& probabilities, const TimeGrid& grid,
                           std::string network_tag) {
  if (probabilities.size() != grid.size()) throw DimensionError("probabilities and grid differ in length");
  EntropyTrace trace;
  trace.kind = EntropyKind::shannon;
  trace.alpha = 1.0;
  trace.network_tag = std::move(network_tag);
  trace.dim = probabilities.empty() ? 0 : static_cast<std::size_t>(probabilities.front().size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.samples()[i] <= 0.0) continue;
    trace.times.push_back(grid.samples()[i]);
    const RealVector& p = probabilities[i];
    trace.values.push_back(shannon_entropy({p.data(), static_cast<std::size_t>(p.size())}));
  }
  return trace;
}

std::vector<TimeValue> return_probability(const Trajectory& traj) {
  const std::size_t j = traj.params.initial_node;
  std::vector<TimeValue> out;
  out.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const Complex pjj = traj.states[i](j, j);
    if (std::abs(pjj.imag()) > kImaginaryTolerance) {
      throw InvariantViolation("return probability has imaginary part " + std::to_string(pjj.imag()));
    }
    out.push_back({traj.grid.samples()[i], pjj.real()});
  }
  return out;
}

std::vector<TraceRow> trace_rows(const Trajectory& traj) {
  const auto ret = return_probability(traj);
  std::vector<TraceRow> rows;
  rows.reserve(ret.size());
  for (std::size_t i = 0; i < ret.size(); ++i) {
    rows.push_back({ret[i].t, von_neumann_entropy(traj.states[i].matrix()), ret[i].value});
  }
  return rows;
}

}  // namespace qsw
