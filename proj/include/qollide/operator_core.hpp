// Copyright 2026 The Qollide Authors
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

// Dense complex linear algebra shared by every other module: density-matrix
// validation, Kronecker products, partial trace, matrix exponential and
// expectation values. Storage is Eigen's column-major MatrixXcd.

#include <complex>

#include <Eigen/Dense>

#include "qollide/error.hpp"

namespace qollide {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Tolerances {
  double herm = 1e-10;
  double trace = 1e-10;
  double psd = 1e-8;
};

/// Throws Error naming the failed check ("square", "hermitian", "trace",
/// "positivity") when `m` is not a valid density matrix.
void validate_density(const ComplexMatrix& m, const Tolerances& tol = {});

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const ComplexMatrix& m);

/// Square, Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const Tolerances& tol = {});

  /// Skips validation; for inner loops where the invariants are already known.
  static DensityMatrix unchecked(ComplexMatrix m);

  Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  double purity() const;

 private:
  struct NoCheck {};
  DensityMatrix(ComplexMatrix m, NoCheck) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced state of the first factor for a matrix ordered system ⊗ bath.
ComplexMatrix partial_trace_bath(const ComplexMatrix& rho, Index dim_sys, Index dim_bath);
DensityMatrix partial_trace_bath(const DensityMatrix& rho, Index dim_sys, Index dim_bath);

/// exp(a) by scaling and squaring of a truncated Taylor series. The series is
/// cut when the next term is below `tol` relative to the partial sum; if that
/// does not happen within `max_order` terms an ErrorKind::Numeric is thrown.
ComplexMatrix matrix_exp(const ComplexMatrix& a, double tol = 1e-15, int max_order = 40);

/// Tr(op * rho).
Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho);
Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

double max_abs(const ComplexMatrix& m);

// Single-qubit operators for the target qubit, basis order (|e>, |g>).
namespace qubit {
ComplexMatrix identity();
ComplexMatrix sigma_plus();   // |e><g|
ComplexMatrix sigma_minus();  // |g><e|
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
}  // namespace qubit

}  // namespace qollide
