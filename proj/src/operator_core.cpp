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

#include "qollide/operator_core.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qollide {

void validate_density(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorKind::Dimension, "square",
                "density matrix must be square and non-empty, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
  const double herm_dev = max_abs(m - m.adjoint());
  if (herm_dev > tol.herm) {
    throw Error(ErrorKind::Numeric, "hermitian", "max |rho - rho^dag| = " + std::to_string(herm_dev));
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw Error(ErrorKind::Numeric, "trace",
                "trace must be 1, got " + std::to_string(tr.real()) + "+" + std::to_string(tr.imag()) + "i");
  }
  const double lo = min_eigenvalue(m);
  if (lo < -tol.psd) {
    throw Error(ErrorKind::Numeric, "positivity", "smallest eigenvalue " + std::to_string(lo));
  }
}

double min_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  validate_density(m_, tol);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m), NoCheck{}); }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_bath(const ComplexMatrix& rho, Index dim_sys, Index dim_bath) {
  if (dim_sys <= 0 || dim_bath <= 0 || rho.rows() != dim_sys * dim_bath || rho.cols() != rho.rows()) {
    throw Error(ErrorKind::Dimension, "partial_trace_bath",
                "matrix of size " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                    " does not factor as " + std::to_string(dim_sys) + "*" + std::to_string(dim_bath));
  }
  ComplexMatrix out(dim_sys, dim_sys);
  for (Index a = 0; a < dim_sys; ++a) {
    for (Index b = 0; b < dim_sys; ++b) {
      out(a, b) = rho.block(a * dim_bath, b * dim_bath, dim_bath, dim_bath).trace();
    }
  }
  return out;
}

DensityMatrix partial_trace_bath(const DensityMatrix& rho, Index dim_sys, Index dim_bath) {
  return DensityMatrix::unchecked(partial_trace_bath(rho.matrix(), dim_sys, dim_bath));
}

ComplexMatrix matrix_exp(const ComplexMatrix& a, double tol, int max_order) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::Dimension, "matrix_exp", "input must be square");
  }
  const Index n = a.rows();
  // Induced 1-norm; scale so that it is at most 1/2.
  const double norm = n == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);

  ComplexMatrix sum = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  bool converged = false;
  for (int k = 1; k <= max_order; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) <= tol * std::max(1.0, max_abs(sum))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorKind::Numeric, "matrix_exp",
                "Taylor series did not converge within order " + std::to_string(max_order));
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (op.rows() != rho.cols() || op.cols() != rho.rows()) {
    throw Error(ErrorKind::Dimension, "expectation",
                "operator " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) + " vs state " +
                    std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
  // Tr(op rho) = sum_ij op_ij rho_ji
  return (op.array() * rho.transpose().array()).sum();
}

Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho) { return expectation(op, rho.matrix()); }

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

namespace qubit {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix sigma_plus() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(1, 0) = 1.0;
  return s;
}

ComplexMatrix sigma_x() { return sigma_plus() + sigma_minus(); }

ComplexMatrix sigma_y() { return Complex(0, -1) * (sigma_plus() - sigma_minus()); }

ComplexMatrix sigma_z() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

}  // namespace qubit
}  // namespace qollide
