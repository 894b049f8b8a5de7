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

// Collective spin operators J± = Σ σ_i± of an N-qubit bath and the
// excitation-sorted basis they are stored in.
//
// Storage basis: product states sorted by excitation number k ascending, and
// within a block by the bit pattern read as a binary number (qubit 1 is the
// most significant bit, 1 = excited). Block k is the contiguous range
// [block_offset(k), block_offset(k) + C(N,k)).

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qollide/operator_core.hpp"

namespace qollide {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr int kMaxCollectiveQubits = 12;
inline constexpr int kMaxBasisQubits = 20;

/// Binomial coefficients C(N,0..N), built row by row from Pascal's triangle.
std::vector<std::uint64_t> block_sizes(int n);

class BasisOrdering {
 public:
  explicit BasisOrdering(int n_qubits);

  int qubits() const noexcept { return n_; }
  Index dim() const noexcept { return static_cast<Index>(to_binary_.size()); }

  std::uint32_t to_binary(Index storage) const { return to_binary_[static_cast<std::size_t>(storage)]; }
  Index to_storage(std::uint32_t binary) const { return to_storage_[binary]; }
  int excitation(Index storage) const { return excitation_[static_cast<std::size_t>(storage)]; }

  Index block_offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  Index block_size(int k) const { return offsets_[static_cast<std::size_t>(k) + 1] - offsets_[static_cast<std::size_t>(k)]; }

  /// Product-state label, qubit 1 first, e.g. "eggg".
  std::string label(Index storage) const;

  /// Reorder a matrix given in raw binary order into storage order, and back.
  ComplexMatrix from_binary_order(const ComplexMatrix& m) const;
  ComplexMatrix to_binary_order(const ComplexMatrix& m) const;

 private:
  int n_;
  std::vector<std::uint32_t> to_binary_;
  std::vector<Index> to_storage_;
  std::vector<int> excitation_;
  std::vector<Index> offsets_;
};

struct CollectiveOps {
  int n = 0;
  BasisOrdering basis{1};
  SparseMatrix j_plus;
  SparseMatrix j_minus;
  SparseMatrix j_plus_j_minus;
  SparseMatrix j_minus_j_plus;
  SparseMatrix j_minus_sq;

  Index dim() const noexcept { return basis.dim(); }
  /// Diagonal of J_z = ½ Σ σ_i^z in storage order.
  Eigen::VectorXd j_z_diagonal() const;
};

/// Throws ErrorKind::Range when n is outside [1, max_qubits].
CollectiveOps build_collective_ops(int n, int max_qubits = kMaxCollectiveQubits);

/// |j=N/2, m=k-N/2> in storage order: amplitude C(N,k)^{-1/2} on block k.
ComplexVector symmetric_dicke_vector(int n, int k);

/// 2^N x (N+1) isometry whose columns are the symmetric Dicke vectors.
ComplexMatrix dicke_ladder_transform(int n);

}  // namespace qollide
