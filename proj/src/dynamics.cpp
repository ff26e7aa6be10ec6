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

#include "qsw/dynamics.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qsw/error.hpp"

namespace qsw {

namespace {

void require_same_dim(const ComplexMatrix& rho, std::size_t dim, const char* what) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != dim) {
    throw DimensionError(std::string(what) + ": state is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", operator has dimension " + std::to_string(dim));
  }
}

// out_mm += weight * sum_n rates(m, n) rho_nn
void add_population_gain(const RealMatrix& rates, const ComplexMatrix& rho, double weight, ComplexMatrix& out) {
  const RealVector gain_re = rates * rho.diagonal().real();
  const RealVector gain_im = rates * rho.diagonal().imag();
  for (Eigen::Index m = 0; m < rho.rows(); ++m) out(m, m) += weight * Complex(gain_re(m), gain_im(m));
}

}  // namespace

void QswParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  if (!(dephasing_rate >= 0.0)) throw ConfigError("dephasing rate must be nonnegative");
  if (hamiltonian.dim() != rates.dim()) throw DimensionError("Hamiltonian and rate matrix dimensions differ");
  if (initial_node >= hamiltonian.dim()) {
    throw ConfigError("initial node " + std::to_string(initial_node) + " out of range for " +
                      std::to_string(hamiltonian.dim()) + " nodes");
  }
}

QswParams make_params(const Network& net, double alpha, std::size_t initial_node, HamiltonianConvention convention,
                      double dephasing_rate) {
  HermitianMatrix h = hamiltonian(net, convention);
  RateMatrix rates = golden_rule_rates(h);
  QswParams p{alpha, dephasing_rate, std::move(h), std::move(rates), initial_node};
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw DimensionError("density matrix must be square and non-empty");
  }
}

DensityMatrix DensityMatrix::pure(std::size_t dim, std::size_t node) {
  if (node >= dim) throw ConfigError("node index out of range");
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  rho(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(node)) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim));
}

double DensityMatrix::hermiticity_deviation() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_deviation() const { return std::abs(entries_.trace() - Complex(1.0, 0.0)); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(entries_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

void DensityMatrix::check_invariants() const {
  if (const double h = hermiticity_deviation(); h > kHermiticityTolerance) {
    throw InvariantViolation("density matrix not Hermitian (deviation " + std::to_string(h) + ")");
  }
  if (const double t = trace_deviation(); t > kTraceTolerance) {
    throw InvariantViolation("density matrix trace drifted by " + std::to_string(t));
  }
  if (const double e = min_eigenvalue(); e < kEigenvalueFloor) {
    throw InvariantViolation("density matrix has negative eigenvalue " + std::to_string(e));
  }
}

// ---------------------------------------------------------------------------

ComplexMatrix ctqw_term(const ComplexMatrix& rho, const HermitianMatrix& h) {
  require_same_dim(rho, h.dim(), "ctqw_term");
  const ComplexMatrix& hm = h.matrix();
  return Complex(0.0, -1.0) * (hm * rho - rho * hm);
}

ComplexMatrix ctrw_dissipator(const ComplexMatrix& rho, const RateMatrix& rates) {
  require_same_dim(rho, rates.dim(), "ctrw_dissipator");
  const RealMatrix& r = rates.matrix();
  const RealVector escape = r.colwise().sum().transpose();
  const Eigen::Index n = rho.rows();

  ComplexMatrix out(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) out(a, b) = -0.5 * (escape(a) + escape(b)) * rho(a, b);
  }
  add_population_gain(r, rho, 1.0, out);
  return out;
}

ComplexMatrix dephasing_dissipator(const ComplexMatrix& rho, double lam) {
  if (!(lam >= 0.0)) throw ConfigError("dephasing rate must be nonnegative");
  ComplexMatrix out = -lam * rho;
  out.diagonal().setZero();
  return out;
}

ComplexMatrix qsw_rhs(const ComplexMatrix& rho, const QswParams& p) {
  p.validate();
  require_same_dim(rho, p.dim(), "qsw_rhs");
  ComplexMatrix out;
  QswGenerator(p).apply(rho, out);
  return out;
}

RealMatrix classical_generator(const RateMatrix& rates) {
  RealMatrix t = rates.matrix();
  t.diagonal() = -rates.matrix().colwise().sum().transpose();
  return t;
}

// ---------------------------------------------------------------------------

QswGenerator::QswGenerator(const QswParams& p)
    : dim_(p.dim()),
      coherent_weight_(1.0 - p.alpha),
      incoherent_weight_(p.alpha),
      dephasing_rate_(p.dephasing_rate),
      rates_(p.rates.matrix()) {
  p.validate();
  h_ = p.hamiltonian.matrix().sparseView(Complex(1.0, 0.0), 0.0);
  h_.makeCompressed();
  escape_ = rates_.colwise().sum().transpose();
}

void QswGenerator::apply(const ComplexMatrix& rho, ComplexMatrix& out) const {
  require_same_dim(rho, dim_, "QswGenerator::apply");
  const auto n = static_cast<Eigen::Index>(dim_);

  // Coherent part: -i(1-alpha)(H rho - rho H).
  out.noalias() = h_ * rho;
  scratch_.noalias() = rho * h_;
  out -= scratch_;
  out *= Complex(0.0, -coherent_weight_);

  if (incoherent_weight_ == 0.0) return;

  // Hopping loss and dephasing act entrywise on coherences.
  const double w = incoherent_weight_;
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      const double damping = 0.5 * (escape_(a) + escape_(b)) + (a == b ? 0.0 : dephasing_rate_);
      out(a, b) -= w * damping * rho(a, b);
    }
  }
  // Hopping gain feeds populations only.
  add_population_gain(rates_, rho, w, out);
}

}  // namespace qsw
