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

#include "qollide/collective_spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace qollide {

namespace {

void check_qubits(int n, int max_qubits, const char* what) {
  if (n < 1 || n > max_qubits) {
    throw Error(ErrorKind::Range, what,
                "qubit count " + std::to_string(n) + " outside [1, " + std::to_string(max_qubits) + "]");
  }
}

SparseMatrix from_triplets(Index dim, const std::vector<Eigen::Triplet<Complex>>& t) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

std::vector<std::uint64_t> block_sizes(int n) {
  if (n < 0 || n > 64) throw Error(ErrorKind::Range, "block_sizes", "N must be in [0, 64]");
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(row.size() + 1, 1);
    for (std::size_t j = 1; j < row.size(); ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row;
}

BasisOrdering::BasisOrdering(int n_qubits) : n_(n_qubits) {
  check_qubits(n_qubits, kMaxBasisQubits, "basis");
  const std::uint32_t dim = 1u << n_qubits;
  to_binary_.resize(dim);
  std::iota(to_binary_.begin(), to_binary_.end(), 0u);
  std::stable_sort(to_binary_.begin(), to_binary_.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  to_storage_.resize(dim);
  excitation_.resize(dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    to_storage_[to_binary_[s]] = s;
    excitation_[s] = std::popcount(to_binary_[s]);
  }
  offsets_.assign(static_cast<std::size_t>(n_qubits) + 2, 0);
  for (int e : excitation_) ++offsets_[static_cast<std::size_t>(e) + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

std::string BasisOrdering::label(Index storage) const {
  const std::uint32_t b = to_binary(storage);
  std::string out(static_cast<std::size_t>(n_), 'g');
  for (int q = 0; q < n_; ++q) {
    if (b & (1u << (n_ - 1 - q))) out[static_cast<std::size_t>(q)] = 'e';
  }
  return out;
}

ComplexMatrix BasisOrdering::from_binary_order(const ComplexMatrix& m) const {
  if (m.rows() != dim() || m.cols() != dim()) {
    throw Error(ErrorKind::Dimension, "basis", "matrix does not match 2^N");
  }
  ComplexMatrix out(dim(), dim());
  for (Index i = 0; i < dim(); ++i) {
    for (Index j = 0; j < dim(); ++j) out(i, j) = m(to_binary(i), to_binary(j));
  }
  return out;
}

ComplexMatrix BasisOrdering::to_binary_order(const ComplexMatrix& m) const {
  if (m.rows() != dim() || m.cols() != dim()) {
    throw Error(ErrorKind::Dimension, "basis", "matrix does not match 2^N");
  }
  ComplexMatrix out(dim(), dim());
  for (Index i = 0; i < dim(); ++i) {
    for (Index j = 0; j < dim(); ++j) out(to_binary(i), to_binary(j)) = m(i, j);
  }
  return out;
}

Eigen::VectorXd CollectiveOps::j_z_diagonal() const {
  Eigen::VectorXd d(dim());
  for (Index s = 0; s < dim(); ++s) d(s) = basis.excitation(s) - 0.5 * n;
  return d;
}

CollectiveOps build_collective_ops(int n, int max_qubits) {
  check_qubits(n, std::min(max_qubits, kMaxBasisQubits), "build_collective_ops");
  CollectiveOps ops;
  ops.n = n;
  ops.basis = BasisOrdering(n);
  const Index dim = ops.basis.dim();

  std::vector<Eigen::Triplet<Complex>> lower;
  lower.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(n) / 2);
  for (Index s = 0; s < dim; ++s) {
    const std::uint32_t b = ops.basis.to_binary(s);
    for (int q = 0; q < n; ++q) {
      const std::uint32_t bit = 1u << q;
      if (b & bit) lower.emplace_back(ops.basis.to_storage(b ^ bit), s, Complex(1.0));
    }
  }
  ops.j_minus = from_triplets(dim, lower);
  ops.j_plus = SparseMatrix(ops.j_minus.adjoint());
  ops.j_plus_j_minus = SparseMatrix(ops.j_plus * ops.j_minus);
  ops.j_minus_j_plus = SparseMatrix(ops.j_minus * ops.j_plus);
  ops.j_minus_sq = SparseMatrix(ops.j_minus * ops.j_minus);
  for (SparseMatrix* m : {&ops.j_plus_j_minus, &ops.j_minus_j_plus, &ops.j_minus_sq}) {
    m->prune(Complex(0.0));
    m->makeCompressed();
  }
  return ops;
}

ComplexVector symmetric_dicke_vector(int n, int k) {
  check_qubits(n, kMaxBasisQubits, "symmetric_dicke_vector");
  if (k < 0 || k > n) {
    throw Error(ErrorKind::Range, "symmetric_dicke_vector",
                "excitation count " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  }
  const BasisOrdering basis(n);
  ComplexVector v = ComplexVector::Zero(basis.dim());
  const Index size = basis.block_size(k);
  v.segment(basis.block_offset(k), size).setConstant(1.0 / std::sqrt(static_cast<double>(size)));
  return v;
}

ComplexMatrix dicke_ladder_transform(int n) {
  check_qubits(n, kMaxBasisQubits, "dicke_ladder_transform");
  ComplexMatrix v(Index{1} << n, n + 1);
  for (int k = 0; k <= n; ++k) v.col(k) = symmetric_dicke_vector(n, k);
  return v;
}

}  // namespace qollide
