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

#include <Eigen/Sparse>

#include "qsw/network.hpp"

namespace qsw {

/// Parameters of the quantum stochastic walk
///
///   drho/dt = (1 - alpha) L_coh[rho] + alpha (L_hop[rho] + L_deph[rho])
///
/// with L_coh = -i[H, rho], L_hop the incoherent hopping dissipator built
/// from |m><n| jump operators and L_deph the on-site dephasing built from
/// |m><m| projectors.
struct QswParams {
  double alpha = 1.0;
  double dephasing_rate = 1.0;
  HermitianMatrix hamiltonian;
  RateMatrix rates;
  std::size_t initial_node = 0;

  /// Throws ConfigError unless 0 <= alpha <= 1, dephasing_rate >= 0, the
  /// matrix dimensions agree and initial_node is in range.
  void validate() const;
  std::size_t dim() const { return hamiltonian.dim(); }
};

/// Convenience: Hamiltonian and golden-rule rates of `net`, validated.
QswParams make_params(const Network& net, double alpha, std::size_t initial_node,
                      HamiltonianConvention convention = HamiltonianConvention::laplacian,
                      double dephasing_rate = 1.0);

/// Density-matrix snapshot. Construction does not check invariants; call
/// check_invariants() where a physical state is required.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-9;
  static constexpr double kEigenvalueFloor = -1e-8;

  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix entries);

  /// |j><j| in dimension `dim`.
  static DensityMatrix pure(std::size_t dim, std::size_t node);
  /// I / dim.
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  double hermiticity_deviation() const;
  double trace_deviation() const;
  double min_eigenvalue() const;
  /// tr(rho^2).
  double purity() const;

  /// Throws InvariantViolation if Hermiticity, unit trace or positivity fail.
  void check_invariants() const;

 private:
  ComplexMatrix entries_;
};

/// -i (H rho - rho H).
ComplexMatrix ctqw_term(const ComplexMatrix& rho, const HermitianMatrix& h);

/// Sum over m != n of rates(m, n) D[|m><n|, rho], evaluated in closed form:
/// population gain sum_n rates(m, n) rho_nn on the diagonal, and loss
/// -(Gamma rho + rho Gamma)/2 with Gamma_n = sum_m rates(m, n).
ComplexMatrix ctrw_dissipator(const ComplexMatrix& rho, const RateMatrix& rates);

/// lam * sum_m D[|m><m|, rho] = lam (diag(rho) - rho).
ComplexMatrix dephasing_dissipator(const ComplexMatrix& rho, double lam);

/// Full right-hand side; builds a QswGenerator on every call.
ComplexMatrix qsw_rhs(const ComplexMatrix& rho, const QswParams& p);

/// Classical CTRW generator: T(m, n) = rates(m, n), T(n, n) = -sum_m rates(m, n).
RealMatrix classical_generator(const RateMatrix& rates);

/// Precomputed QSW right-hand side used by the propagator.
///
/// Keeps H in sparse form so each evaluation costs O(nnz(H) N + N^2).
class QswGenerator {
 public:
  explicit QswGenerator(const QswParams& p);

  std::size_t dim() const { return dim_; }

  /// out = drho/dt. `out` is resized as needed and must not alias `rho`.
  void apply(const ComplexMatrix& rho, ComplexMatrix& out) const;

 private:
  std::size_t dim_;
  double coherent_weight_;
  double incoherent_weight_;
  double dephasing_rate_;
  Eigen::SparseMatrix<Complex> h_;
  RealMatrix rates_;
  RealVector escape_;  // Gamma_n = sum_m rates(m, n)
  mutable ComplexMatrix scratch_;
};

}  // namespace qsw
