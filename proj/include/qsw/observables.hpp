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
#include <string>
#include <string_view>
#include <vector>

#include "qsw/propagator.hpp"

namespace qsw {

enum class EntropyKind { von_neumann, shannon };

std::string_view to_string(EntropyKind k);

/// Entropy samples at strictly positive times (natural log).
struct EntropyTrace {
  std::vector<double> times;
  std::vector<double> values;
  EntropyKind kind = EntropyKind::von_neumann;
  double alpha = 0.0;
  std::string network_tag;
  /// Hilbert-space dimension; fixes the ln(N) saturation bound.
  std::size_t dim = 0;

  /// Throws InvariantViolation if a value lies outside [-1e-12, ln N + 1e-9]
  /// or the times are not strictly increasing and positive.
  void validate() const;
};

/// Eigenvalues below this are treated as exact zeros.
inline constexpr double kEigenvalueClamp = 1e-14;

/// S = -sum lambda ln lambda over the spectrum of rho. Eigenvalues in
/// [-1e-8, 1e-14] count as zero; anything more negative throws.
double von_neumann_entropy(const ComplexMatrix& rho);

/// H = -sum p ln p with 0 ln 0 = 0. Requires sum(p) = 1 to 1e-9 and
/// entries >= -1e-12.
double shannon_entropy(std::span<const double> p);

/// von Neumann entropy of every snapshot with t > 0 (the t = 0 sample has
/// no logarithm and is dropped).
EntropyTrace entropy_trace(const Trajectory& traj, std::string network_tag = {});

/// Shannon entropy of classical probability vectors aligned with `grid`.
EntropyTrace shannon_trace(const std::vector<RealVector>& probabilities, const TimeGrid& grid, std::string network_tag = {});

struct TimeValue {
  double t;
  double value;
};

/// (t, <j|rho(t)|j>) for the trajectory's initial node, t = 0 included.
std::vector<TimeValue> return_probability(const Trajectory& traj);

/// One exported row per sample, t = 0 included.
struct TraceRow {
  double t;
  double entropy;
  double return_prob;
};

std::vector<TraceRow> trace_rows(const Trajectory& traj);

}  // namespace qsw
